#pragma once

#include <string>

namespace datcloud {

// Half-open in spirit but stored as inclusive 1-based positions; start <= end.
struct SourceSpan {
    std::string file;
    int start_line = 1;
    int start_col = 1;
    int end_line = 1;
    int end_col = 1;

    bool operator==(const SourceSpan&) const = default;
};

}  // namespace datcloud
