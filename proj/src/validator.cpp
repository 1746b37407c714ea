#include "datcloud/validator.hpp"

#include <algorithm>
#include <sstream>

#include "datcloud/behavior.hpp"

namespace datcloud {

const std::vector<RuleInfo>& rule_catalog() {
    static const std::vector<RuleInfo> catalog = {
        {"E001", Severity::Error, "duplicate node name",
         "Node names must be unique within the architecture. Rename one of the nodes."},
        {"E002", Severity::Error, "duplicate port or element name in node",
         "Port names must be unique within their node, and action/event names must be unique "
         "within their behavior."},
        {"E003", Severity::Error, "connection endpoint does not resolve",
         "A connection endpoint must name an existing node and an existing port on that node."},
        {"E004", Severity::Error, "connection direction mismatch",
         "A connection must run from an out-port to an in-port."},
        {"E005", Severity::Error, "connection format mismatch",
         "The source and target ports of a connection must carry the same data format."},
        {"E006", Severity::Error, "port format not in node formats",
         "Every port's format must be listed in the owning node's formats set."},
        {"E007", Severity::Error, "behavior graph contains a cycle",
         "Behavior workflows are pipelines; links must form a directed acyclic graph."},
        {"E008", Severity::Error, "behavior link endpoint does not resolve",
         "A link endpoint must name an action or event of the behavior, or (with the 'port' "
         "prefix) a port of the node."},
        {"E009", Severity::Error, "ReceiveData event without a resolvable in-port trigger",
         "A ReceiveData event must name an existing in-port of its node with 'via'."},
        {"E010", Severity::Error, "Store action on a node without a storage spec",
         "A node whose behavior stores data must declare a storage attribute."},
        {"E011", Severity::Error, "duplicate connection name",
         "Connection names must be unique within the architecture."},
        {"E012", Severity::Error, "illegal link endpoint kind",
         "Links may not target an event, start at a port, or target an in-port."},
        {"W001", Severity::Warning, "action unreachable from every event",
         "In a behavior that declares events, every action should be reachable from some event. "
         "Behaviors without events are treated as source workflows and are exempt."},
        {"W002", Severity::Warning, "unused port",
         "The port is referenced by no connection, no ReceiveData trigger and no link."},
        {"W003", Severity::Warning, "node has ports but no behavior",
         "A node that exchanges data usually describes how it handles it."},
        {"W004", Severity::Warning, "layer-skipping connection",
         "The connection jumps across the Edge < Fog < Cloud order by more than one step. "
         "Configurable: off, warning (default), info or error."},
        {"W005", Severity::Warning, "node with empty formats",
         "The node declares no data formats, so no port or payload type can be checked."},
        {"W006", Severity::Warning, "self-connection",
         "The connection starts and ends on the same node."},
        {"W007", Severity::Warning, "isolated node",
         "No connection references the node."},
    };
    return catalog;
}

const RuleInfo* find_rule(std::string_view code) {
    for (const RuleInfo& rule : rule_catalog()) {
        if (rule.code == code) return &rule;
    }
    return nullptr;
}

RuleConfigResult parse_rule_config(std::string_view text) {
    RuleConfigResult result;
    RuleConfig config;
    int line_no = 0;
    std::istringstream stream{std::string(text)};
    std::string line;
    auto trim = [](std::string s) {
        const char* ws = " \t\r";
        auto begin = s.find_first_not_of(ws);
        if (begin == std::string::npos) return std::string();
        auto end = s.find_last_not_of(ws);
        return s.substr(begin, end - begin + 1);
    };
    auto fail = [&](const std::string& message) {
        result.error = "rules config line " + std::to_string(line_no) + ": " + message;
        return result;
    };
    while (std::getline(stream, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) return fail("expected 'CODE = value'");
        std::string code = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        const RuleInfo* rule = find_rule(code);
        if (rule == nullptr) return fail("unknown rule code '" + code + "'");
        if (rule->severity == Severity::Error) {
            return fail("rule " + code + " cannot be configured (error rules are always on)");
        }
        if (value == "off") {
            if (code == "W004") {
                config.layer_skip = LayerSkipPolicy::Off;
            } else {
                config.disabled.insert(code);
            }
        } else if (value == "warning") {
            config.overrides.erase(code);
        } else if (value == "info") {
            config.overrides[code] = Severity::Info;
        } else if (value == "error" && code == "W004") {
            config.layer_skip = LayerSkipPolicy::Error;
        } else {
            return fail("invalid value '" + value + "' for rule " + code);
        }
    }
    result.config = std::move(config);
    return result;
}

namespace {

int layer_rank(Layer layer) {
    switch (layer) {
        case Layer::Edge: return 0;
        case Layer::Fog: return 1;
        case Layer::Cloud: return 2;
    }
    return 0;
}

std::string port_ref_text(const PortRef& ref) {
    return ref.node + "." + ref.port;
}

class RuleRunner {
public:
    explicit RuleRunner(const ArchitectureModel& model) : model_(model) {}

    std::vector<Diagnostic> run() {
        check_connections();
        for (const DataNode& node : model_.nodes) check_node(node);
        sort_diagnostics(findings_);
        return std::move(findings_);
    }

private:
    const ArchitectureModel& model_;
    std::vector<Diagnostic> findings_;

    void add(std::string code, std::string message, const std::optional<SourceSpan>& span) {
        const RuleInfo* rule = find_rule(code);
        Diagnostic d;
        d.code = std::move(code);
        d.severity = rule != nullptr ? rule->severity : Severity::Error;
        d.message = std::move(message);
        d.span = span;
        findings_.push_back(std::move(d));
    }

    void check_connections() {
        for (const Connection& connection : model_.connections) {
            PortLookup source = resolve_port(model_, connection.source);
            PortLookup target = resolve_port(model_, connection.target);

            auto unresolved = [&](std::string_view side, const PortRef& ref,
                                  const PortLookup& lookup) {
                if (lookup.node == nullptr) {
                    add("E003",
                        "connection '" + connection.name + "' " + std::string(side) +
                            " references unknown node '" + ref.node + "'",
                        connection.span);
                } else if (lookup.port == nullptr) {
                    add("E003",
                        "connection '" + connection.name + "' " + std::string(side) +
                            " references unknown port '" + ref.port + "' on node '" + ref.node +
                            "'",
                        connection.span);
                }
            };
            unresolved("source", connection.source, source);
            unresolved("target", connection.target, target);

            if (source.ok() && source.port->direction != PortDirection::Out) {
                add("E004",
                    "connection '" + connection.name + "' source '" +
                        port_ref_text(connection.source) + "' must be an out-port",
                    connection.span);
            }
            if (target.ok() && target.port->direction != PortDirection::In) {
                add("E004",
                    "connection '" + connection.name + "' target '" +
                        port_ref_text(connection.target) + "' must be an in-port",
                    connection.span);
            }

            if (source.ok() && target.ok() && source.port->format != target.port->format) {
                add("E005",
                    "connection '" + connection.name + "' format mismatch: source '" +
                        port_ref_text(connection.source) + "' is " +
                        std::string(name_of(source.port->format)) + ", target '" +
                        port_ref_text(connection.target) + "' is " +
                        std::string(name_of(target.port->format)),
                    connection.span);
            }

            if (source.node != nullptr && target.node != nullptr) {
                int skip = std::abs(layer_rank(source.node->layer) -
                                    layer_rank(target.node->layer));
                if (skip > 1) {
                    add("W004",
                        "connection '" + connection.name + "' skips layers: " +
                            std::string(name_of(source.node->layer)) + " to " +
                            std::string(name_of(target.node->layer)),
                        connection.span);
                }
            }

            if (connection.source.node == connection.target.node) {
                add("W006",
                    "connection '" + connection.name + "' connects node '" +
                        connection.source.node + "' to itself",
                    connection.span);
            }
        }
    }

    bool port_used(const DataNode& node, const DataPort& port) const {
        for (const Connection& connection : model_.connections) {
            if (connection.source.node == node.name && connection.source.port == port.name) {
                return true;
            }
            if (connection.target.node == node.name && connection.target.port == port.name) {
                return true;
            }
        }
        if (!node.behavior) return false;
        for (const Event& event : node.behavior->events) {
            if (event.trigger_port == port.name) return true;
        }
        for (const BehaviorLink& link : node.behavior->links) {
            if (link.from.kind == LinkEndpoint::Kind::Port && link.from.name == port.name) {
                return true;
            }
            if (link.to.kind == LinkEndpoint::Kind::Port && link.to.name == port.name) {
                return true;
            }
        }
        return false;
    }

    bool node_connected(const DataNode& node) const {
        for (const Connection& connection : model_.connections) {
            if (connection.source.node == node.name || connection.target.node == node.name) {
                return true;
            }
        }
        return false;
    }

    void check_node(const DataNode& node) {
        if (node.formats.empty()) {
            add("W005", "node '" + node.name + "' has an empty formats set", node.span);
        }
        for (const DataPort& port : node.ports) {
            if (node.formats.find(port.format) == node.formats.end()) {
                add("E006",
                    "port '" + port.name + "' format " + std::string(name_of(port.format)) +
                        " is not in the formats of node '" + node.name + "'",
                    port.span);
            }
            if (!port_used(node, port)) {
                add("W002",
                    "port '" + port.name + "' of node '" + node.name +
                        "' is never used by a connection or behavior",
                    port.span);
            }
        }
        if (!node.ports.empty() && !node.behavior) {
            add("W003", "node '" + node.name + "' has ports but no behavior", node.span);
        }
        if (!node_connected(node)) {
            add("W007", "node '" + node.name + "' has no connections", node.span);
        }
        if (node.behavior) check_behavior(node);
    }

    void check_behavior(const DataNode& node) {
        const NodeBehavior& behavior = *node.behavior;

        for (const Event& event : behavior.events) {
            if (event.kind != EventKind::ReceiveData) continue;
            if (!event.trigger_port) {
                add("E009",
                    "ReceiveData event '" + event.name + "' in node '" + node.name +
                        "' has no trigger port",
                    event.span);
                continue;
            }
            const DataPort* port = node.find_port(*event.trigger_port);
            if (port == nullptr) {
                add("E009",
                    "ReceiveData event '" + event.name + "' in node '" + node.name +
                        "' names unknown trigger port '" + *event.trigger_port + "'",
                    event.span);
            } else if (port->direction != PortDirection::In) {
                add("E009",
                    "ReceiveData event '" + event.name + "' in node '" + node.name +
                        "' trigger port '" + *event.trigger_port + "' is not an in-port",
                    event.span);
            }
        }

        if (!node.storage) {
            for (const Action& action : behavior.actions) {
                if (action.kind == ActionKind::Store) {
                    add("E010",
                        "Store action '" + action.name + "' in node '" + node.name +
                            "' requires a storage spec on the node",
                        action.span);
                }
            }
        }

        GraphBuildResult built = build_graph(behavior, node.ports, node.name);
        for (Diagnostic& d : built.diagnostics) findings_.push_back(std::move(d));
        if (!built.graph) return;

        for (const std::vector<std::string>& cycle : detect_cycles(*built.graph)) {
            std::string path;
            for (const std::string& vertex : cycle) path += vertex + " -> ";
            path += cycle.front();
            add("E007",
                "behavior of node '" + node.name + "' contains a cycle: " + path, node.span);
        }

        // behaviors without events are source workflows: nothing to reach from
        if (!behavior.events.empty()) {
            for (const std::string& action_name : unreachable_elements(*built.graph)) {
                std::optional<SourceSpan> span;
                for (const Action& action : behavior.actions) {
                    if (action.name == action_name) span = action.span;
                }
                add("W001",
                    "action '" + action_name + "' in node '" + node.name +
                        "' is not reachable from any event",
                    span);
            }
        }
    }
};

}  // namespace

std::vector<Diagnostic> validate(const ArchitectureModel& model, const RuleConfig& config) {
    std::vector<Diagnostic> findings = RuleRunner(model).run();

    std::vector<Diagnostic> kept;
    kept.reserve(findings.size());
    for (Diagnostic& d : findings) {
        if (config.disabled.count(d.code) != 0) continue;
        if (d.code == "W004") {
            if (config.layer_skip == LayerSkipPolicy::Off) continue;
            if (config.layer_skip == LayerSkipPolicy::Error) d.severity = Severity::Error;
        }
        if (auto it = config.overrides.find(d.code); it != config.overrides.end()) {
            d.severity = it->second;
        }
        kept.push_back(std::move(d));
    }
    sort_diagnostics(kept);
    return kept;
}

std::vector<Diagnostic> check_cross_view(const ArchitectureModel& model) {
    static const std::set<std::string> cross_view_codes = {"E009", "E010", "E012",
                                                           "W001", "W002", "W003"};
    std::vector<Diagnostic> findings = RuleRunner(model).run();
    std::vector<Diagnostic> kept;
    for (Diagnostic& d : findings) {
        if (cross_view_codes.count(d.code) != 0) kept.push_back(std::move(d));
    }
    sort_diagnostics(kept);
    return kept;
}

}  // namespace datcloud
