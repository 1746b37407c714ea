#include <iostream>
#include <string>
#include <vector>

#include "datcloud/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return datcloud::cli::run(args, std::cout, std::cerr);
}
