#include "datcloud/diagnostics.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

namespace datcloud {

std::string_view severity_name(Severity severity) {
    switch (severity) {
        case Severity::Error: return "error";
        case Severity::Warning: return "warning";
        case Severity::Info: return "info";
    }
    return "error";
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
    return std::any_of(diagnostics.begin(), diagnostics.end(),
                       [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

std::string render(const Diagnostic& diagnostic) {
    std::ostringstream out;
    if (diagnostic.span) {
        out << diagnostic.span->file << ':' << diagnostic.span->start_line << ':'
            << diagnostic.span->start_col << ": ";
    }
    out << severity_name(diagnostic.severity) << '[' << diagnostic.code
        << "]: " << diagnostic.message;
    return out.str();
}

void sort_diagnostics(std::vector<Diagnostic>& diagnostics) {
    auto key = [](const Diagnostic& d) {
        if (d.span) {
            return std::make_tuple(d.span->file, d.span->start_line, d.span->start_col, d.code);
        }
        return std::make_tuple(std::string(), 0, 0, d.code);
    };
    std::stable_sort(diagnostics.begin(), diagnostics.end(),
                     [&](const Diagnostic& a, const Diagnostic& b) { return key(a) < key(b); });
}

}  // namespace datcloud
