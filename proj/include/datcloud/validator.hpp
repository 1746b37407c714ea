#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "datcloud/model.hpp"

namespace datcloud {

struct RuleInfo {
    std::string code;
    Severity severity = Severity::Error;
    std::string title;
    std::string description;
};

// The complete catalog, code order: E001..E012 then W001..W007.
const std::vector<RuleInfo>& rule_catalog();
const RuleInfo* find_rule(std::string_view code);

enum class LayerSkipPolicy { Warn, Off, Error };

struct RuleConfig {
    std::set<std::string> disabled;                  // warning rules only
    std::map<std::string, Severity> overrides;       // warning <-> info only
    LayerSkipPolicy layer_skip = LayerSkipPolicy::Warn;
};

// Config file format, one directive per line:
//   CODE = off | warning | info      (warning rules)
//   W004 = off | warning | info | error
// '#' starts a comment. Error rules cannot be disabled or downgraded.
struct RuleConfigResult {
    std::optional<RuleConfig> config;
    std::string error;
};
RuleConfigResult parse_rule_config(std::string_view text);

// All findings from the rule catalog, sorted by (file, start position, code).
// Pure function of (model, config); the model must have passed build_model.
std::vector<Diagnostic> validate(const ArchitectureModel& model, const RuleConfig& config = {});

// Exactly the cross-view subset {E009, E010, E012, W001, W002, W003};
// validate() includes these findings verbatim under the default config.
std::vector<Diagnostic> check_cross_view(const ArchitectureModel& model);

}  // namespace datcloud
