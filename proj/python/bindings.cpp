#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "datcloud/behavior.hpp"
#include "datcloud/export.hpp"
#include "datcloud/formatter.hpp"
#include "datcloud/parser.hpp"
#include "datcloud/templates.hpp"
#include "datcloud/validator.hpp"

namespace py = pybind11;
using namespace datcloud;

namespace {

std::pair<std::optional<ArchitectureModel>, std::vector<Diagnostic>> load(
    const std::string& text, const std::string& filename) {
    ParsedDocument document = parse(text, filename);
    if (!document.ok()) return {std::nullopt, document.diagnostics};
    BuildResult built = build_model(document);
    std::vector<Diagnostic> diagnostics = document.diagnostics;
    diagnostics.insert(diagnostics.end(), built.diagnostics.begin(), built.diagnostics.end());
    return {std::move(built.model), std::move(diagnostics)};
}

std::vector<Diagnostic> validate_model(const ArchitectureModel& model,
                                       const std::optional<std::string>& rules) {
    RuleConfig config;
    if (rules) {
        RuleConfigResult parsed = parse_rule_config(*rules);
        if (!parsed.config) throw py::value_error(parsed.error);
        config = std::move(*parsed.config);
    }
    return validate(model, config);
}

std::string format_text(const std::string& text, const std::string& filename) {
    ParsedDocument document = parse(text, filename);
    if (!document.ok()) {
        std::string message = "document does not parse cleanly";
        for (const Diagnostic& d : document.diagnostics) message += "\n" + render(d);
        throw py::value_error(message);
    }
    return format_document(*document.architecture);
}

std::vector<std::string> trace_steps(const ArchitectureModel& model, const std::string& node_name,
                                     const std::string& event_name) {
    const DataNode* node = model.find_node(node_name);
    if (node == nullptr) throw py::value_error("unknown node '" + node_name + "'");
    if (!node->behavior) throw py::value_error("node '" + node_name + "' has no behavior");
    GraphBuildResult built = build_graph(*node->behavior, node->ports, node->name);
    if (!built.graph) {
        std::string message = "behavior of node '" + node_name + "' does not resolve";
        for (const Diagnostic& d : built.diagnostics) message += "\n" + render(d);
        throw py::value_error(message);
    }
    if (!detect_cycles(*built.graph).empty()) {
        throw py::value_error("behavior of node '" + node_name + "' contains a cycle");
    }
    std::optional<Trace> result = trace(*built.graph, event_name);
    if (!result) {
        throw py::value_error("unknown event '" + event_name + "' in node '" + node_name + "'");
    }
    std::vector<std::string> lines;
    for (const TraceStep& step : result->steps) {
        if (step.kind == TraceStep::Kind::Action) {
            lines.push_back("ACTION " + step.name + " (" + std::string(name_of(step.action_kind)) +
                            ")");
        } else {
            lines.push_back("EMIT " + step.name);
        }
    }
    return lines;
}

py::dict metrics_dict(const ArchitectureModel& model) {
    MetricsReport report = metrics(model);
    py::dict out;
    py::dict per_layer;
    for (const auto& [layer, count] : report.nodes_per_layer) {
        per_layer[py::str(std::string(name_of(layer)))] = count;
    }
    out["nodes_per_layer"] = per_layer;
    py::dict per_protocol;
    for (const auto& [protocol, count] : report.connections_per_protocol) {
        per_protocol[py::str(protocol)] = count;
    }
    out["connections_per_protocol"] = per_protocol;
    py::dict degrees;
    for (const auto& degree : report.degrees) {
        degrees[py::str(degree.node)] = py::make_tuple(degree.fan_in, degree.fan_out);
    }
    out["fan_in_out"] = degrees;
    out["realtime_node_count"] = report.realtime_node_count;
    out["batch_node_count"] = report.batch_node_count;
    if (report.max_edge_to_cloud_path) {
        out["max_edge_to_cloud_path"] = *report.max_edge_to_cloud_path;
    } else {
        out["max_edge_to_cloud_path"] = py::none();
    }
    return out;
}

std::string savings_table(
    const std::vector<std::tuple<std::string, std::optional<double>, double>>& rows) {
    std::vector<EffortRecord> records;
    for (const auto& [task, base, measured] : rows) {
        records.push_back({task, base, measured});
    }
    SavingsResult result = savings_report(records);
    if (!result.report) throw py::value_error(result.error);
    return render(*result.report);
}

std::string instantiate_template(const std::string& name,
                                 const std::map<std::string, std::string>& params) {
    const Template* tmpl = find_template(builtin_templates(), name);
    if (tmpl == nullptr) throw py::value_error("unknown template '" + name + "'");
    InstantiateResult result = instantiate(*tmpl, params);
    if (!result.text) throw py::value_error(result.error);
    return *result.text;
}

}  // namespace

PYBIND11_MODULE(_datcloud, m) {
    m.doc() = "Multi-layered data architecture modeling toolchain";

    py::class_<Diagnostic>(m, "Diagnostic")
        .def_readonly("code", &Diagnostic::code)
        .def_property_readonly(
            "severity",
            [](const Diagnostic& d) { return std::string(severity_name(d.severity)); })
        .def_readonly("message", &Diagnostic::message)
        .def_property_readonly("file",
                               [](const Diagnostic& d) {
                                   return d.span ? d.span->file : std::string();
                               })
        .def_property_readonly("line",
                               [](const Diagnostic& d) { return d.span ? d.span->start_line : 0; })
        .def_property_readonly("col",
                               [](const Diagnostic& d) { return d.span ? d.span->start_col : 0; })
        .def("__str__", [](const Diagnostic& d) { return render(d); })
        .def("__repr__", [](const Diagnostic& d) { return "<Diagnostic " + render(d) + ">"; });

    py::class_<ArchitectureModel>(m, "Model")
        .def_property_readonly("name",
                               [](const ArchitectureModel& m_) { return m_.name; })
        .def_property_readonly("node_names",
                               [](const ArchitectureModel& m_) {
                                   std::vector<std::string> names;
                                   for (const DataNode& node : m_.nodes) names.push_back(node.name);
                                   return names;
                               })
        .def_property_readonly("connection_names",
                               [](const ArchitectureModel& m_) {
                                   std::vector<std::string> names;
                                   for (const Connection& c : m_.connections) {
                                       names.push_back(c.name);
                                   }
                                   return names;
                               })
        .def("__eq__",
             [](const ArchitectureModel& a, const ArchitectureModel& b) { return a == b; })
        .def("__repr__", [](const ArchitectureModel& m_) {
            return "<Model " + m_.name + ": " + std::to_string(m_.nodes.size()) + " nodes, " +
                   std::to_string(m_.connections.size()) + " connections>";
        });

    m.def("load", &load, py::arg("text"), py::arg("filename") = "<string>",
          "Parse and build a model; returns (model or None, diagnostics).");
    m.def("validate", &validate_model, py::arg("model"), py::arg("rules") = py::none(),
          "Validate a built model; returns diagnostics.");
    m.def("format_text", &format_text, py::arg("text"), py::arg("filename") = "<string>",
          "Canonically format model text.");
    m.def("to_json", &to_json, py::arg("model"), "Serialize a model to interchange JSON.");
    m.def(
        "from_json",
        [](const std::string& text) {
            FromJsonResult result = from_json(text);
            return std::make_pair(std::move(result.model), std::move(result.diagnostics));
        },
        py::arg("text"), "Decode interchange JSON; returns (model or None, diagnostics).");
    m.def(
        "to_dot",
        [](const ArchitectureModel& model, bool cluster_by_layer, bool show_ports) {
            return to_dot(model, {cluster_by_layer, show_ports});
        },
        py::arg("model"), py::arg("cluster_by_layer") = true, py::arg("show_ports") = false,
        "Render a model as a DOT digraph.");
    m.def("metrics", &metrics_dict, py::arg("model"), "Model metrics as a dict.");
    m.def(
        "metrics_text",
        [](const ArchitectureModel& model) { return render(metrics(model)); },
        py::arg("model"), "Model metrics as the CLI text report.");
    m.def("trace", &trace_steps, py::arg("model"), py::arg("node"), py::arg("event"),
          "Behavior trace steps for an event, one line per step.");
    m.def("savings_report", &savings_table, py::arg("rows"),
          "Render the savings table from (task, base or None, measured) rows.");
    m.def(
        "list_templates",
        []() {
            std::vector<std::pair<std::string, std::string>> entries;
            for (const Template& t : builtin_templates()) {
                entries.emplace_back(t.name, t.description);
            }
            return entries;
        },
        "Built-in template catalog as (name, description) pairs.");
    m.def("instantiate", &instantiate_template, py::arg("name"), py::arg("params"),
          "Instantiate a built-in template with the given parameters.");
    m.def(
        "rule_catalog",
        []() {
            std::vector<std::tuple<std::string, std::string, std::string, std::string>> entries;
            for (const RuleInfo& rule : rule_catalog()) {
                entries.emplace_back(rule.code, std::string(severity_name(rule.severity)),
                                     rule.title, rule.description);
            }
            return entries;
        },
        "Validation rule catalog as (code, severity, title, description) tuples.");
}
