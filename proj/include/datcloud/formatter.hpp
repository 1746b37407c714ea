#pragma once

#include <string>

#include "datcloud/ast.hpp"

namespace datcloud {

// Canonical form: 2-space indentation, one attribute per line, fixed
// attribute order (description, type, layer, processing, formats, storage,
// ports, behavior), declaration order preserved within each list. Idempotent.
std::string format_document(const AstDocument& document);

// Same canonical form from a built model; omitted optionals (empty
// description, absent storage/behavior, empty formats) are not emitted.
std::string format_model(const ArchitectureModel& model);

}  // namespace datcloud
