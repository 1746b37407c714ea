#include "datcloud/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "datcloud/behavior.hpp"
#include "datcloud/export.hpp"
#include "datcloud/formatter.hpp"
#include "datcloud/parser.hpp"
#include "datcloud/templates.hpp"
#include "datcloud/validator.hpp"

namespace datcloud::cli {

namespace {

bool read_file(const std::string& path, std::string& contents) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::ostringstream buffer;
    buffer << in.rdbuf();
    contents = buffer.str();
    return true;
}

bool write_file(const std::string& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) return false;
    out << contents;
    return out.good();
}

std::vector<std::string> template_dirs() {
    std::vector<std::string> dirs;
    if (const char* env = std::getenv("DATCLOUD_TEMPLATE_PATH")) {
        std::string value = env;
        std::size_t begin = 0;
        while (begin <= value.size()) {
            auto end = value.find(':', begin);
            if (end == std::string::npos) end = value.size();
            if (end > begin) dirs.push_back(value.substr(begin, end - begin));
            begin = end + 1;
        }
    }
    return dirs;
}

void print_diagnostics(const std::vector<Diagnostic>& diagnostics, std::ostream& out) {
    for (const Diagnostic& d : diagnostics) out << render(d) << "\n";
}

nlohmann::ordered_json diagnostics_json(const std::vector<Diagnostic>& diagnostics,
                                        const std::string& fallback_file) {
    nlohmann::ordered_json array = nlohmann::ordered_json::array();
    for (const Diagnostic& d : diagnostics) {
        nlohmann::ordered_json entry;
        entry["file"] = d.span ? d.span->file : fallback_file;
        entry["line"] = d.span ? d.span->start_line : 0;
        entry["col"] = d.span ? d.span->start_col : 0;
        entry["severity"] = severity_name(d.severity);
        entry["code"] = d.code;
        entry["message"] = d.message;
        array.push_back(std::move(entry));
    }
    return array;
}

struct LoadedModel {
    ParsedDocument document;
    std::optional<ArchitectureModel> model;
    std::vector<Diagnostic> build_diagnostics;
};

// parse + build; status 0 when a model came out, otherwise the exit status
int load_model(const std::string& path, std::ostream& out, std::ostream& err,
               LoadedModel& loaded) {
    std::string source;
    if (!read_file(path, source)) {
        err << "cannot read '" << path << "'\n";
        return kExitUsage;
    }
    loaded.document = parse(source, path);
    if (!loaded.document.ok()) {
        print_diagnostics(loaded.document.diagnostics, out);
        return kExitParse;
    }
    BuildResult built = build_model(loaded.document);
    loaded.build_diagnostics = built.diagnostics;
    loaded.model = std::move(built.model);
    if (!loaded.model) {
        print_diagnostics(loaded.build_diagnostics, out);
        return kExitValidation;
    }
    return kExitOk;
}

struct CheckArgs {
    std::vector<std::string> files;
    std::string rules_path;
    std::string format = "text";
};

int run_check(const CheckArgs& args, std::ostream& out, std::ostream& err) {
    RuleConfig config;
    if (!args.rules_path.empty()) {
        std::string text;
        if (!read_file(args.rules_path, text)) {
            err << "cannot read '" << args.rules_path << "'\n";
            return kExitUsage;
        }
        RuleConfigResult parsed = parse_rule_config(text);
        if (!parsed.config) {
            err << args.rules_path << ": " << parsed.error << "\n";
            return kExitUsage;
        }
        config = std::move(*parsed.config);
    }

    int worst = kExitOk;
    nlohmann::ordered_json json_output = nlohmann::ordered_json::array();
    for (const std::string& path : args.files) {
        std::string source;
        if (!read_file(path, source)) {
            err << "cannot read '" << path << "'\n";
            worst = std::max(worst, kExitUsage);
            continue;
        }
        ParsedDocument document = parse(source, path);
        std::vector<Diagnostic> diagnostics = document.diagnostics;
        int status = kExitOk;
        if (!document.ok()) {
            status = kExitParse;
        } else {
            BuildResult built = build_model(document);
            diagnostics.insert(diagnostics.end(), built.diagnostics.begin(),
                               built.diagnostics.end());
            if (built.model) {
                std::vector<Diagnostic> findings = validate(*built.model, config);
                diagnostics.insert(diagnostics.end(), findings.begin(), findings.end());
            }
            if (has_errors(diagnostics)) status = kExitValidation;
        }
        sort_diagnostics(diagnostics);
        if (args.format == "json") {
            for (auto& entry : diagnostics_json(diagnostics, path)) {
                json_output.push_back(std::move(entry));
            }
        } else {
            print_diagnostics(diagnostics, out);
        }
        worst = std::max(worst, status);
    }
    if (args.format == "json") out << json_output.dump() << "\n";
    return worst;
}

struct FmtArgs {
    std::string file;
    bool write = false;
    bool check = false;
};

int run_fmt(const FmtArgs& args, std::ostream& out, std::ostream& err) {
    std::string source;
    if (!read_file(args.file, source)) {
        err << "cannot read '" << args.file << "'\n";
        return kExitUsage;
    }
    ParsedDocument document = parse(source, args.file);
    if (!document.ok()) {
        print_diagnostics(document.diagnostics, out);
        return kExitParse;
    }
    std::string formatted = format_document(*document.architecture);
    if (args.check) {
        if (formatted != source) {
            out << "would reformat '" << args.file << "'\n";
            return kExitValidation;
        }
        return kExitOk;
    }
    if (args.write) {
        if (!write_file(args.file, formatted)) {
            err << "cannot write '" << args.file << "'\n";
            return kExitUsage;
        }
        return kExitOk;
    }
    out << formatted;
    return kExitOk;
}

struct ExportArgs {
    std::string file;
    std::string to;
    std::string out_path;
    bool no_clusters = false;
};

int run_export(const ExportArgs& args, std::ostream& out, std::ostream& err) {
    LoadedModel loaded;
    if (int status = load_model(args.file, out, err, loaded); status != kExitOk) return status;
    std::string text;
    if (args.to == "json") {
        text = to_json(*loaded.model) + "\n";
    } else {
        DotOptions options;
        options.cluster_by_layer = !args.no_clusters;
        text = to_dot(*loaded.model, options);
    }
    if (!args.out_path.empty()) {
        if (!write_file(args.out_path, text)) {
            err << "cannot write '" << args.out_path << "'\n";
            return kExitUsage;
        }
        return kExitOk;
    }
    out << text;
    return kExitOk;
}

int run_stats(const std::string& file, std::ostream& out, std::ostream& err) {
    LoadedModel loaded;
    if (int status = load_model(file, out, err, loaded); status != kExitOk) return status;
    std::vector<Diagnostic> findings = validate(*loaded.model);
    if (has_errors(findings)) {
        print_diagnostics(findings, out);
        return kExitValidation;
    }
    out << render(metrics(*loaded.model));
    return kExitOk;
}

struct TraceArgs {
    std::string file;
    std::string node;
    std::string event;
};

int run_trace(const TraceArgs& args, std::ostream& out, std::ostream& err) {
    LoadedModel loaded;
    if (int status = load_model(args.file, out, err, loaded); status != kExitOk) return status;
    const DataNode* node = loaded.model->find_node(args.node);
    if (node == nullptr) {
        err << "unknown node '" << args.node << "'\n";
        return kExitUsage;
    }
    if (!node->behavior) {
        err << "node '" << args.node << "' has no behavior\n";
        return kExitUsage;
    }
    GraphBuildResult built = build_graph(*node->behavior, node->ports, node->name);
    if (!built.graph) {
        sort_diagnostics(built.diagnostics);
        print_diagnostics(built.diagnostics, out);
        return kExitValidation;
    }
    auto cycles = detect_cycles(*built.graph);
    if (!cycles.empty()) {
        for (const auto& cycle : cycles) {
            std::string path;
            for (const std::string& vertex : cycle) path += vertex + " -> ";
            path += cycle.front();
            Diagnostic d;
            d.code = "E007";
            d.severity = Severity::Error;
            d.message = "behavior of node '" + node->name + "' contains a cycle: " + path;
            d.span = node->span;
            out << render(d) << "\n";
        }
        return kExitValidation;
    }
    if (built.graph->find_vertex(args.event, BehaviorVertex::Kind::Event) < 0) {
        err << "unknown event '" << args.event << "' in node '" << args.node << "'\n";
        return kExitUsage;
    }
    std::optional<Trace> result = trace(*built.graph, args.event);
    out << render(*result);
    return kExitOk;
}

struct NewArgs {
    std::string tmpl;
    std::vector<std::string> params;
    std::string out_path;
};

int run_new(const NewArgs& args, std::ostream& out, std::ostream& err) {
    std::vector<Template> catalog = list_templates(template_dirs());
    const Template* tmpl = find_template(catalog, args.tmpl);
    if (tmpl == nullptr) {
        err << "unknown template '" << args.tmpl << "'\n";
        return kExitUsage;
    }
    std::map<std::string, std::string> params;
    for (const std::string& entry : args.params) {
        auto eq = entry.find('=');
        if (eq == std::string::npos || eq == 0) {
            err << "invalid --param '" << entry << "', expected NAME=VALUE\n";
            return kExitUsage;
        }
        params[entry.substr(0, eq)] = entry.substr(eq + 1);
    }
    InstantiateResult result = instantiate(*tmpl, params);
    if (!result.text) {
        err << result.error << "\n";
        return kExitUsage;
    }
    if (!args.out_path.empty()) {
        if (!write_file(args.out_path, *result.text)) {
            err << "cannot write '" << args.out_path << "'\n";
            return kExitUsage;
        }
        return kExitOk;
    }
    out << *result.text;
    return kExitOk;
}

int run_report(const std::string& file, std::ostream& out, std::ostream& err) {
    std::string text;
    if (!read_file(file, text)) {
        err << "cannot read '" << file << "'\n";
        return kExitUsage;
    }
    std::istringstream stream(text);
    std::string line;
    int line_no = 0;
    std::vector<EffortRecord> records;
    while (std::getline(stream, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::size_t begin = 0;
        while (true) {
            auto comma = line.find(',', begin);
            if (comma == std::string::npos) {
                fields.push_back(line.substr(begin));
                break;
            }
            fields.push_back(line.substr(begin, comma - begin));
            begin = comma + 1;
        }
        if (line_no == 1) {
            if (fields != std::vector<std::string>{"task", "base", "measured"}) {
                err << file << ":1: expected header 'task,base,measured'\n";
                return kExitUsage;
            }
            continue;
        }
        if (fields.size() != 3) {
            err << file << ":" << line_no << ": expected 3 fields\n";
            return kExitUsage;
        }
        EffortRecord record;
        record.task = fields[0];
        auto parse_number = [&](const std::string& field, double& value) {
            std::size_t used = 0;
            try {
                value = std::stod(field, &used);
            } catch (const std::exception&) {
                return false;
            }
            return used == field.size();
        };
        if (!fields[1].empty()) {
            double base = 0;
            if (!parse_number(fields[1], base)) {
                err << file << ":" << line_no << ": invalid base '" << fields[1] << "'\n";
                return kExitUsage;
            }
            record.baseline_hours = base;
        }
        double measured = 0;
        if (!parse_number(fields[2], measured)) {
            err << file << ":" << line_no << ": invalid measured '" << fields[2] << "'\n";
            return kExitUsage;
        }
        record.measured_hours = measured;
        records.push_back(std::move(record));
    }
    SavingsResult result = savings_report(records);
    if (!result.report) {
        err << result.error << "\n";
        return kExitUsage;
    }
    out << render(*result.report);
    return kExitOk;
}

int run_templates(std::ostream& out) {
    for (const Template& tmpl : list_templates(template_dirs())) {
        out << tmpl.name << "\n";
        if (!tmpl.description.empty()) out << "  " << tmpl.description << "\n";
        for (const TemplateParam& param : tmpl.parameters) {
            out << "  param " << param.name;
            if (param.default_value) out << " = " << *param.default_value;
            if (!param.doc.empty()) out << " -- " << param.doc;
            out << "\n";
        }
    }
    return kExitOk;
}

int run_explain(const std::string& code, std::ostream& out, std::ostream& err) {
    const RuleInfo* rule = find_rule(code);
    if (rule == nullptr) {
        err << "unknown rule code '" << code << "'\n";
        return kExitUsage;
    }
    out << rule->code << " (" << severity_name(rule->severity) << "): " << rule->title << "\n";
    out << rule->description << "\n";
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Toolchain for multi-layered data architecture models", "datcloud"};
    app.require_subcommand(1);

    CheckArgs check_args;
    CLI::App* check = app.add_subcommand("check", "Parse and validate model files");
    check->add_option("files", check_args.files, "model files (.datc)")->required();
    check->add_option("--rules", check_args.rules_path, "rule configuration file");
    check->add_option("--format", check_args.format, "output format")
        ->check(CLI::IsMember({"text", "json"}));

    FmtArgs fmt_args;
    CLI::App* fmt = app.add_subcommand("fmt", "Reformat a model file canonically");
    fmt->add_option("file", fmt_args.file, "model file")->required();
    CLI::Option* fmt_write = fmt->add_flag("--write", fmt_args.write, "rewrite the file in place");
    fmt->add_flag("--check", fmt_args.check, "exit 1 when the file is not canonical")
        ->excludes(fmt_write);

    ExportArgs export_args;
    CLI::App* exporter = app.add_subcommand("export", "Export a model to JSON or DOT");
    exporter->add_option("file", export_args.file, "model file")->required();
    exporter->add_option("--to", export_args.to, "output format")
        ->required()
        ->check(CLI::IsMember({"json", "dot"}));
    exporter->add_option("--out", export_args.out_path, "output file (default: stdout)");
    exporter->add_flag("--no-clusters", export_args.no_clusters,
                       "do not cluster DOT output by layer");

    std::string stats_file;
    CLI::App* stats = app.add_subcommand("stats", "Print model metrics");
    stats->add_option("file", stats_file, "model file")->required();

    TraceArgs trace_args;
    CLI::App* tracer = app.add_subcommand("trace", "Print the behavior trace of an event");
    tracer->add_option("file", trace_args.file, "model file")->required();
    tracer->add_option("node", trace_args.node, "node name")->required();
    tracer->add_option("event", trace_args.event, "event name")->required();

    NewArgs new_args;
    CLI::App* newer = app.add_subcommand("new", "Instantiate a template");
    newer->add_option("template", new_args.tmpl, "template name")->required();
    newer->add_option("--param", new_args.params, "parameter as NAME=VALUE");
    newer->add_option("--out", new_args.out_path, "output file (default: stdout)");

    std::string report_file;
    CLI::App* report = app.add_subcommand("report", "Print a savings table from CSV records");
    report->add_option("csvfile", report_file, "CSV file with task,base,measured rows")
        ->required();

    app.add_subcommand("templates", "List the template catalog");

    std::string explain_code;
    CLI::App* explain = app.add_subcommand("explain", "Describe a validation rule");
    explain->add_option("code", explain_code, "rule code, e.g. E007")->required();

    std::vector<const char*> argv;
    argv.push_back("datcloud");
    for (const std::string& arg : args) argv.push_back(arg.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (check->parsed()) return run_check(check_args, out, err);
    if (fmt->parsed()) return run_fmt(fmt_args, out, err);
    if (exporter->parsed()) return run_export(export_args, out, err);
    if (stats->parsed()) return run_stats(stats_file, out, err);
    if (tracer->parsed()) return run_trace(trace_args, out, err);
    if (newer->parsed()) return run_new(new_args, out, err);
    if (report->parsed()) return run_report(report_file, out, err);
    if (explain->parsed()) return run_explain(explain_code, out, err);
    return run_templates(out);
}

}  // namespace datcloud::cli
