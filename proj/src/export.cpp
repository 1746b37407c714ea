#include "datcloud/export.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <sstream>

#include <json.hpp>

#include "datcloud/ast.hpp"

namespace datcloud {

namespace {

using Json = nlohmann::ordered_json;

Json storage_json(const StorageSpec& storage) {
    Json out;
    if (const auto* nosql = std::get_if<NoSqlStorage>(&storage)) {
        out["kind"] = "NoSql";
        out["family"] = name_of(nosql->family);
    } else if (const auto* newsql = std::get_if<NewSqlStorage>(&storage)) {
        out["kind"] = "NewSql";
        out["mode"] = name_of(newsql->mode);
    } else {
        out["kind"] = "FileSystem";
        out["fs"] = name_of(std::get<FileSystemStorage>(storage).fs);
    }
    return out;
}

std::string endpoint_string(const LinkEndpoint& endpoint) {
    if (endpoint.kind == LinkEndpoint::Kind::Port) return "port " + endpoint.name;
    return endpoint.name;
}

std::string event_kind_string(const Event& event) {
    if (event.kind == EventKind::ReceiveData) return "ReceiveData";
    return "Custom(" + event.custom_name + ")";
}

}  // namespace

std::string to_json(const ArchitectureModel& model) {
    Json doc;
    doc["datcloud"] = 1;
    doc["name"] = model.name;
    doc["nodes"] = Json::array();
    for (const DataNode& node : model.nodes) {
        Json n;
        n["name"] = node.name;
        if (!node.description.empty()) n["description"] = node.description;
        n["type"] = name_of(node.node_type);
        n["layer"] = name_of(node.layer);
        n["processing"] = name_of(node.processing);
        n["formats"] = Json::array();
        for (DataFormat format : node.formats) n["formats"].push_back(name_of(format));
        if (node.storage) n["storage"] = storage_json(*node.storage);
        n["ports"] = Json::array();
        for (const DataPort& port : node.ports) {
            Json p;
            p["name"] = port.name;
            p["direction"] = name_of(port.direction);
            p["format"] = name_of(port.format);
            n["ports"].push_back(std::move(p));
        }
        if (node.behavior) {
            Json b;
            b["actions"] = Json::array();
            for (const Action& action : node.behavior->actions) {
                Json a;
                a["name"] = action.name;
                a["kind"] = name_of(action.kind);
                b["actions"].push_back(std::move(a));
            }
            b["events"] = Json::array();
            for (const Event& event : node.behavior->events) {
                Json e;
                e["name"] = event.name;
                e["kind"] = event_kind_string(event);
                if (event.kind == EventKind::ReceiveData && event.trigger_port) {
                    e["via"] = *event.trigger_port;
                }
                b["events"].push_back(std::move(e));
            }
            b["links"] = Json::array();
            for (const BehaviorLink& link : node.behavior->links) {
                Json l;
                l["from"] = endpoint_string(link.from);
                l["to"] = endpoint_string(link.to);
                b["links"].push_back(std::move(l));
            }
            n["behavior"] = std::move(b);
        }
        doc["nodes"].push_back(std::move(n));
    }
    doc["connections"] = Json::array();
    for (const Connection& connection : model.connections) {
        Json c;
        c["name"] = connection.name;
        c["from"] = connection.source.node + "." + connection.source.port;
        c["to"] = connection.target.node + "." + connection.target.port;
        c["protocol"] = protocol_name(connection.protocol);
        doc["connections"].push_back(std::move(c));
    }
    return doc.dump();
}

namespace {

// Strict decoder: unknown fields, missing fields and unknown literals are
// diagnosed with their path; decode continues where safe to report more.
class JsonReader {
public:
    FromJsonResult read(std::string_view text) {
        FromJsonResult result;
        Json doc = Json::parse(text, nullptr, false);
        if (doc.is_discarded()) {
            fail("", "malformed JSON document", "J001");
            result.diagnostics = std::move(diagnostics_);
            return result;
        }
        if (!doc.is_object()) {
            fail("", "top-level value must be an object", "J001");
            result.diagnostics = std::move(diagnostics_);
            return result;
        }
        if (!doc.contains("datcloud") || !doc["datcloud"].is_number_integer()) {
            fail("", "missing schema field 'datcloud'", "J002");
        } else if (doc["datcloud"].get<int>() != 1) {
            fail("", "unsupported schema version " + doc["datcloud"].dump(), "J002");
        }
        if (!diagnostics_.empty()) {
            result.diagnostics = std::move(diagnostics_);
            return result;
        }

        AstDocument ast;
        check_fields(doc, "", {"datcloud", "name", "nodes", "connections"});
        ast.name = require_string(doc, "", "name");
        if (const Json* nodes = require_array(doc, "", "nodes")) {
            int i = 0;
            for (const Json& node : *nodes) {
                ast.nodes.push_back(read_node(node, "nodes[" + std::to_string(i) + "]"));
                ++i;
            }
        }
        if (const Json* connections = require_array(doc, "", "connections")) {
            int i = 0;
            for (const Json& connection : *connections) {
                read_connection(connection, "connections[" + std::to_string(i) + "]", ast);
                ++i;
            }
        }
        if (!diagnostics_.empty()) {
            result.diagnostics = std::move(diagnostics_);
            return result;
        }

        ParsedDocument document;
        document.architecture = std::move(ast);
        BuildResult built = build_model(document);
        for (Diagnostic& d : built.diagnostics) {
            d.span.reset();
            d.related.clear();
            result.diagnostics.push_back(std::move(d));
        }
        result.model = std::move(built.model);
        return result;
    }

private:
    std::vector<Diagnostic> diagnostics_;

    void fail(const std::string& path, const std::string& message, std::string code = "J004") {
        Diagnostic d;
        d.code = std::move(code);
        d.severity = Severity::Error;
        d.message = path.empty() ? message : path + ": " + message;
        diagnostics_.push_back(std::move(d));
    }

    void check_fields(const Json& object, const std::string& path,
                      std::initializer_list<std::string_view> allowed) {
        for (const auto& [key, value] : object.items()) {
            if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
                fail(path, "unknown field '" + key + "'", "J003");
            }
        }
    }

    std::string require_string(const Json& object, const std::string& path,
                               const std::string& key) {
        std::string field = path.empty() ? key : path + "." + key;
        if (!object.contains(key)) {
            fail(field, "missing required field");
            return "";
        }
        if (!object[key].is_string()) {
            fail(field, "expected a string");
            return "";
        }
        return object[key].get<std::string>();
    }

    const Json* require_array(const Json& object, const std::string& path,
                              const std::string& key) {
        std::string field = path.empty() ? key : path + "." + key;
        if (!object.contains(key)) {
            fail(field, "missing required field");
            return nullptr;
        }
        if (!object[key].is_array()) {
            fail(field, "expected an array");
            return nullptr;
        }
        return &object[key];
    }

    template <typename Enum, typename FromName>
    std::optional<Enum> read_enum(const Json& object, const std::string& path,
                                  const std::string& key, std::string_view enum_name,
                                  FromName from_name) {
        std::string field = path.empty() ? key : path + "." + key;
        if (!object.contains(key)) {
            fail(field, "missing required field");
            return std::nullopt;
        }
        if (!object[key].is_string()) {
            fail(field, "expected a string");
            return std::nullopt;
        }
        std::string text = object[key].get<std::string>();
        if (auto value = from_name(text)) return value;
        fail(field, "unknown " + std::string(enum_name) + " '" + text + "'");
        return std::nullopt;
    }

    AstNode read_node(const Json& json, const std::string& path) {
        AstNode node;
        if (!json.is_object()) {
            fail(path, "expected an object");
            return node;
        }
        check_fields(json, path,
                     {"name", "description", "type", "layer", "processing", "formats", "storage",
                      "ports", "behavior"});
        node.name = require_string(json, path, "name");
        if (json.contains("description")) {
            if (!json["description"].is_string()) {
                fail(path + ".description", "expected a string");
            } else {
                node.description = json["description"].get<std::string>();
            }
        }
        node.node_type = read_enum<NodeType>(json, path, "type", "NodeType", node_type_from);
        node.layer = read_enum<Layer>(json, path, "layer", "Layer", layer_from);
        node.processing =
            read_enum<ProcessingType>(json, path, "processing", "ProcessingType", processing_from);
        if (const Json* formats = require_array(json, path, "formats")) {
            std::vector<DataFormat> list;
            int i = 0;
            for (const Json& entry : *formats) {
                std::string field = path + ".formats[" + std::to_string(i) + "]";
                if (!entry.is_string()) {
                    fail(field, "expected a string");
                } else if (auto format = data_format_from(entry.get<std::string>())) {
                    list.push_back(*format);
                } else {
                    fail(field, "unknown DataFormat '" + entry.get<std::string>() + "'");
                }
                ++i;
            }
            node.formats = std::move(list);
        }
        if (json.contains("storage")) node.storage = read_storage(json["storage"], path + ".storage");
        if (const Json* ports = require_array(json, path, "ports")) {
            int i = 0;
            for (const Json& port : *ports) {
                node.ports.push_back(read_port(port, path + ".ports[" + std::to_string(i) + "]"));
                ++i;
            }
        }
        if (json.contains("behavior")) {
            node.behavior = read_behavior(json["behavior"], path + ".behavior");
        }
        return node;
    }

    std::optional<StorageSpec> read_storage(const Json& json, const std::string& path) {
        if (!json.is_object()) {
            fail(path, "expected an object");
            return std::nullopt;
        }
        std::string kind = require_string(json, path, "kind");
        if (kind == "NoSql") {
            check_fields(json, path, {"kind", "family"});
            if (auto family = read_enum<NoSqlFamily>(json, path, "family", "NoSqlFamily",
                                                     nosql_family_from)) {
                return NoSqlStorage{*family};
            }
        } else if (kind == "NewSql") {
            check_fields(json, path, {"kind", "mode"});
            if (auto mode =
                    read_enum<NewSqlMode>(json, path, "mode", "NewSqlMode", newsql_mode_from)) {
                return NewSqlStorage{*mode};
            }
        } else if (kind == "FileSystem") {
            check_fields(json, path, {"kind", "fs"});
            if (auto fs = read_enum<FileSystemKind>(json, path, "fs", "FileSystemKind",
                                                    filesystem_kind_from)) {
                return FileSystemStorage{*fs};
            }
        } else {
            fail(path + ".kind", "unknown storage kind '" + kind + "'");
        }
        return std::nullopt;
    }

    AstPort read_port(const Json& json, const std::string& path) {
        AstPort port;
        if (!json.is_object()) {
            fail(path, "expected an object");
            return port;
        }
        check_fields(json, path, {"name", "direction", "format"});
        port.name = require_string(json, path, "name");
        std::string direction = require_string(json, path, "direction");
        if (direction == "In") {
            port.direction = PortDirection::In;
        } else if (direction == "Out") {
            port.direction = PortDirection::Out;
        } else if (!direction.empty()) {
            fail(path + ".direction", "unknown PortDirection '" + direction + "'");
        }
        if (auto format =
                read_enum<DataFormat>(json, path, "format", "DataFormat", data_format_from)) {
            port.format = *format;
        }
        return port;
    }

    AstBehavior read_behavior(const Json& json, const std::string& path) {
        AstBehavior behavior;
        if (!json.is_object()) {
            fail(path, "expected an object");
            return behavior;
        }
        check_fields(json, path, {"actions", "events", "links"});
        if (const Json* actions = require_array(json, path, "actions")) {
            int i = 0;
            for (const Json& action : *actions) {
                std::string field = path + ".actions[" + std::to_string(i) + "]";
                AstAction decoded;
                if (!action.is_object()) {
                    fail(field, "expected an object");
                } else {
                    check_fields(action, field, {"name", "kind"});
                    decoded.name = require_string(action, field, "name");
                    if (auto kind = read_enum<ActionKind>(action, field, "kind", "ActionKind",
                                                          action_kind_from)) {
                        decoded.kind = *kind;
                    }
                    behavior.actions.push_back(std::move(decoded));
                }
                ++i;
            }
        }
        if (const Json* events = require_array(json, path, "events")) {
            int i = 0;
            for (const Json& event : *events) {
                std::string field = path + ".events[" + std::to_string(i) + "]";
                if (!event.is_object()) {
                    fail(field, "expected an object");
                } else {
                    check_fields(event, field, {"name", "kind", "via"});
                    AstEvent decoded;
                    decoded.name = require_string(event, field, "name");
                    std::string kind = require_string(event, field, "kind");
                    if (kind == "ReceiveData") {
                        decoded.kind = EventKind::ReceiveData;
                        if (event.contains("via")) {
                            decoded.trigger_port = require_string(event, field, "via");
                        }
                    } else if (kind.rfind("Custom(", 0) == 0 && kind.back() == ')') {
                        decoded.kind = EventKind::Custom;
                        decoded.custom_name = kind.substr(7, kind.size() - 8);
                    } else if (!kind.empty()) {
                        fail(field + ".kind", "unknown EventKind '" + kind + "'");
                    }
                    behavior.events.push_back(std::move(decoded));
                }
                ++i;
            }
        }
        if (const Json* links = require_array(json, path, "links")) {
            int i = 0;
            for (const Json& link : *links) {
                std::string field = path + ".links[" + std::to_string(i) + "]";
                if (!link.is_object()) {
                    fail(field, "expected an object");
                } else {
                    check_fields(link, field, {"from", "to"});
                    AstLink decoded;
                    decoded.from = read_endpoint(require_string(link, field, "from"));
                    decoded.to = read_endpoint(require_string(link, field, "to"));
                    behavior.links.push_back(std::move(decoded));
                }
                ++i;
            }
        }
        return behavior;
    }

    AstLinkEndpoint read_endpoint(const std::string& text) {
        AstLinkEndpoint endpoint;
        if (text.rfind("port ", 0) == 0) {
            endpoint.kind = LinkEndpoint::Kind::Port;
            endpoint.name = text.substr(5);
        } else {
            endpoint.name = text;
        }
        return endpoint;
    }

    void read_connection(const Json& json, const std::string& path, AstDocument& ast) {
        if (!json.is_object()) {
            fail(path, "expected an object");
            return;
        }
        check_fields(json, path, {"name", "from", "to", "protocol"});
        AstConnection connection;
        connection.name = require_string(json, path, "name");
        auto parse_ref = [&](const std::string& key, PortRef& ref) {
            std::string text = require_string(json, path, key);
            auto dot = text.find('.');
            if (dot == std::string::npos || dot == 0 || dot + 1 == text.size()) {
                if (!text.empty()) {
                    fail(path + "." + key, "expected 'Node.port', got '" + text + "'");
                }
                return;
            }
            ref.node = text.substr(0, dot);
            ref.port = text.substr(dot + 1);
        };
        parse_ref("from", connection.source);
        parse_ref("to", connection.target);
        std::string protocol = require_string(json, path, "protocol");
        if (protocol == "HTTPS") {
            connection.protocol = {Protocol::Kind::HTTPS, ""};
        } else if (protocol == "MQTT") {
            connection.protocol = {Protocol::Kind::MQTT, ""};
        } else if (protocol == "REST") {
            connection.protocol = {Protocol::Kind::REST, ""};
        } else if (protocol.rfind("Custom(", 0) == 0 && protocol.back() == ')') {
            connection.protocol = {Protocol::Kind::Custom,
                                   protocol.substr(7, protocol.size() - 8)};
        } else if (!protocol.empty()) {
            fail(path + ".protocol", "unknown Protocol '" + protocol + "'");
        }
        ast.connections.push_back(std::move(connection));
    }
};

}  // namespace

FromJsonResult from_json(std::string_view text) {
    return JsonReader().read(text);
}

namespace {

std::string dot_escape(std::string_view text) {
    std::string out;
    for (char c : text) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

std::string dot_node_stmt(const DataNode& node) {
    std::ostringstream out;
    out << "\"" << dot_escape(node.name) << "\" [label=\"" << dot_escape(node.name)
        << "\\n\u00ab" << name_of(node.node_type) << "\u00bb\"];";
    return out.str();
}

}  // namespace

std::string to_dot(const ArchitectureModel& model, DotOptions options) {
    std::ostringstream out;
    out << "digraph " << model.name << " {\n";
    out << "  rankdir=LR;\n";
    if (options.cluster_by_layer) {
        static constexpr Layer order[] = {Layer::Edge, Layer::Fog, Layer::Cloud};
        static constexpr std::string_view cluster_names[] = {"cluster_edge", "cluster_fog",
                                                             "cluster_cloud"};
        for (std::size_t i = 0; i < 3; ++i) {
            bool any = std::any_of(model.nodes.begin(), model.nodes.end(),
                                   [&](const DataNode& n) { return n.layer == order[i]; });
            if (!any) continue;
            out << "  subgraph " << cluster_names[i] << " {\n";
            out << "    label=\"" << name_of(order[i]) << "\";\n";
            for (const DataNode& node : model.nodes) {
                if (node.layer == order[i]) out << "    " << dot_node_stmt(node) << "\n";
            }
            out << "  }\n";
        }
    } else {
        for (const DataNode& node : model.nodes) {
            out << "  " << dot_node_stmt(node) << "\n";
        }
    }
    for (const Connection& connection : model.connections) {
        out << "  \"" << dot_escape(connection.source.node) << "\" -> \""
            << dot_escape(connection.target.node) << "\" [label=\""
            << dot_escape(protocol_name(connection.protocol)) << "\"";
        if (options.show_ports) {
            out << ", taillabel=\"" << dot_escape(connection.source.port) << "\", headlabel=\""
                << dot_escape(connection.target.port) << "\"";
        }
        out << "];\n";
    }
    out << "}\n";
    return out.str();
}

MetricsReport metrics(const ArchitectureModel& model) {
    MetricsReport report;
    report.nodes_per_layer = {{Layer::Edge, 0}, {Layer::Fog, 0}, {Layer::Cloud, 0}};
    for (const DataNode& node : model.nodes) {
        ++report.nodes_per_layer[node.layer];
        if (node.processing == ProcessingType::RealTime) {
            ++report.realtime_node_count;
        } else {
            ++report.batch_node_count;
        }
        MetricsReport::NodeDegree degree;
        degree.node = node.name;
        if (auto flows = node_flows(model, node.name)) {
            degree.fan_in = static_cast<int>(flows->incoming.size());
            degree.fan_out = static_cast<int>(flows->outgoing.size());
        }
        report.degrees.push_back(std::move(degree));
    }
    for (const Connection& connection : model.connections) {
        ++report.connections_per_protocol[protocol_name(connection.protocol)];
    }

    if (model.nodes.size() > 24) {
        report.max_edge_to_cloud_path = std::nullopt;
        return report;
    }

    // longest simple path, node-level digraph, Edge start to Cloud end
    const int n = static_cast<int>(model.nodes.size());
    auto index_of = [&](std::string_view name) {
        for (int i = 0; i < n; ++i) {
            if (model.nodes[i].name == name) return i;
        }
        return -1;
    };
    std::vector<std::set<int>> adjacency(n);
    for (const Connection& connection : model.connections) {
        int from = index_of(connection.source.node);
        int to = index_of(connection.target.node);
        if (from >= 0 && to >= 0 && from != to) adjacency[from].insert(to);
    }
    int best = 0;
    std::vector<bool> visited(n, false);
    auto dfs = [&](auto&& self, int v, int hops) -> void {
        if (model.nodes[v].layer == Layer::Cloud) best = std::max(best, hops);
        visited[v] = true;
        for (int next : adjacency[v]) {
            if (!visited[next]) self(self, next, hops + 1);
        }
        visited[v] = false;
    };
    for (int v = 0; v < n; ++v) {
        if (model.nodes[v].layer == Layer::Edge) dfs(dfs, v, 0);
    }
    report.max_edge_to_cloud_path = best;
    return report;
}

std::string render(const MetricsReport& report) {
    std::ostringstream out;
    out << "nodes per layer:\n";
    for (const auto& [layer, count] : report.nodes_per_layer) {
        out << "  " << name_of(layer) << ": " << count << "\n";
    }
    out << "connections per protocol:\n";
    for (const auto& [protocol, count] : report.connections_per_protocol) {
        out << "  " << protocol << ": " << count << "\n";
    }
    out << "processing:\n";
    out << "  RealTime: " << report.realtime_node_count << "\n";
    out << "  Batch: " << report.batch_node_count << "\n";
    out << "fan in/out per node:\n";
    for (const auto& degree : report.degrees) {
        out << "  " << degree.node << ": " << degree.fan_in << "/" << degree.fan_out << "\n";
    }
    out << "max edge-to-cloud path: ";
    if (report.max_edge_to_cloud_path) {
        out << *report.max_edge_to_cloud_path << "\n";
    } else {
        out << "skipped (more than 24 nodes)\n";
    }
    return out.str();
}

namespace {

int round_half_up_percent(double base, double measured) {
    double percent = (base - measured) / base * 100.0;
    return static_cast<int>(std::floor(percent + 0.5));
}

std::string number_text(double value) {
    std::ostringstream out;
    if (value == std::floor(value) && std::abs(value) < 1e15) {
        out << static_cast<long long>(value);
    } else {
        out << value;
    }
    return out.str();
}

}  // namespace

SavingsResult savings_report(const std::vector<EffortRecord>& records) {
    SavingsResult result;
    SavingsReport report;
    double base_total = 0.0;
    double measured_total = 0.0;
    bool any_base = false;
    for (const EffortRecord& record : records) {
        if (record.measured_hours < 0) {
            result.error = "task '" + record.task + "': measured hours must be non-negative";
            return result;
        }
        SavingsRow row;
        row.task = record.task;
        row.base = record.baseline_hours;
        row.measured = record.measured_hours;
        if (record.baseline_hours) {
            if (*record.baseline_hours <= 0) {
                result.error = "task '" + record.task + "': baseline hours must be positive";
                return result;
            }
            row.percent = round_half_up_percent(*record.baseline_hours, record.measured_hours);
            base_total += *record.baseline_hours;
            any_base = true;
        }
        // measured totals include rows without a baseline
        measured_total += record.measured_hours;
        report.rows.push_back(std::move(row));
    }
    report.total.task = "Total";
    report.total.measured = measured_total;
    if (any_base) {
        report.total.base = base_total;
        report.total.percent = round_half_up_percent(base_total, measured_total);
    }
    result.report = std::move(report);
    return result;
}

std::string render(const SavingsReport& report) {
    std::vector<std::array<std::string, 4>> lines;
    lines.push_back({"Task", "Base", "Measured", "Percent"});
    auto row_line = [&](const SavingsRow& row) {
        std::array<std::string, 4> line;
        line[0] = row.task;
        line[1] = row.base ? number_text(*row.base) : "n/a";
        line[2] = number_text(row.measured);
        line[3] = row.percent ? std::to_string(*row.percent) + "%" : "n/a";
        lines.push_back(std::move(line));
    };
    for (const SavingsRow& row : report.rows) row_line(row);
    row_line(report.total);

    std::array<std::size_t, 4> widths{};
    for (const auto& line : lines) {
        for (std::size_t i = 0; i < 4; ++i) widths[i] = std::max(widths[i], line[i].size());
    }
    std::ostringstream out;
    for (const auto& line : lines) {
        out << line[0] << std::string(widths[0] - line[0].size(), ' ');
        for (std::size_t i = 1; i < 4; ++i) {
            out << "  " << std::string(widths[i] - line[i].size(), ' ') << line[i];
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace datcloud
