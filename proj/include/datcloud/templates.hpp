#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace datcloud {

struct TemplateParam {
    std::string name;
    std::optional<std::string> default_value;
    std::string doc;
};

struct Template {
    std::string name;
    std::string description;
    std::vector<TemplateParam> parameters;
    std::string body;  // DSL text with ${param} placeholders
};

// Built-in catalog, alphabetical. Default instantiation of every entry
// parses and validates without errors.
const std::vector<Template>& builtin_templates();

// Built-ins plus user templates (*.datct) from the given directories,
// alphabetical by name. User templates shadow built-ins of the same name.
std::vector<Template> list_templates(const std::vector<std::string>& user_dirs = {});

const Template* find_template(const std::vector<Template>& catalog, std::string_view name);

// User template file: `param NAME [= default] -- doc` header lines, a `---`
// separator, then the body.
struct TemplateParseResult {
    std::optional<Template> tmpl;
    std::string error;
};
TemplateParseResult parse_template_file(std::string_view text, std::string name);

// Pure textual substitution of ${name}. The result is not validated here.
struct InstantiateResult {
    std::optional<std::string> text;
    std::string error;
};
InstantiateResult instantiate(const Template& tmpl, const std::map<std::string, std::string>& params);

}  // namespace datcloud
