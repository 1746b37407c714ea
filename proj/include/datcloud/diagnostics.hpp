#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "datcloud/span.hpp"

namespace datcloud {

enum class Severity { Error, Warning, Info };

// "error" / "warning" / "info"
std::string_view severity_name(Severity severity);

struct RelatedNote {
    SourceSpan span;
    std::string note;
};

// Coded finding produced by lexing, parsing, model construction or validation.
// Codes are stable: E001..E012 and W001..W007 (rule catalog), P0xx/P1xx
// (frontend), J0xx (interchange decoding).
struct Diagnostic {
    std::string code;
    Severity severity = Severity::Error;
    std::string message;
    std::optional<SourceSpan> span;
    std::vector<RelatedNote> related;
};

bool has_errors(const std::vector<Diagnostic>& diagnostics);

// `FILE:LINE:COL: SEVERITY[CODE]: MESSAGE`; the location prefix is dropped
// for diagnostics without a span.
std::string render(const Diagnostic& diagnostic);

// Stable (file, start position, code) order used for every reported batch.
void sort_diagnostics(std::vector<Diagnostic>& diagnostics);

}  // namespace datcloud
