#pragma once

#include <string>
#include <string_view>

#include "datcloud/ast.hpp"

namespace datcloud {

// Recovering recursive-descent parser. Always returns a document; syntax
// errors become diagnostics and recovery skips to the next `node`,
// `connection` or `}` synchronization point.
ParsedDocument parse(std::string_view source, std::string file = "");

}  // namespace datcloud
