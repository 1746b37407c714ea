#include "datcloud/ast.hpp"

#include <map>
#include <string>

namespace datcloud {

bool operator==(const AstPort& a, const AstPort& b) {
    return a.name == b.name && a.direction == b.direction && a.format == b.format;
}

bool operator==(const AstAction& a, const AstAction& b) {
    return a.name == b.name && a.kind == b.kind;
}

bool operator==(const AstEvent& a, const AstEvent& b) {
    return a.name == b.name && a.kind == b.kind && a.custom_name == b.custom_name &&
           a.trigger_port == b.trigger_port;
}

bool operator==(const AstLinkEndpoint& a, const AstLinkEndpoint& b) {
    return a.kind == b.kind && a.name == b.name;
}

bool operator==(const AstLink& a, const AstLink& b) {
    return a.from == b.from && a.to == b.to;
}

bool operator==(const AstBehavior& a, const AstBehavior& b) {
    return a.actions == b.actions && a.events == b.events && a.links == b.links;
}

bool operator==(const AstConnection& a, const AstConnection& b) {
    return a.name == b.name && a.source == b.source && a.target == b.target &&
           a.protocol == b.protocol;
}

bool operator==(const AstNode& a, const AstNode& b) {
    return a.name == b.name && a.description == b.description && a.node_type == b.node_type &&
           a.layer == b.layer && a.processing == b.processing && a.formats == b.formats &&
           a.storage == b.storage && a.ports == b.ports && a.behavior == b.behavior;
}

bool operator==(const AstDocument& a, const AstDocument& b) {
    return a.name == b.name && a.nodes == b.nodes && a.connections == b.connections;
}

namespace {

Diagnostic duplicate(std::string code, std::string message, const SourceSpan& second,
                     const SourceSpan& first) {
    Diagnostic d;
    d.code = std::move(code);
    d.severity = Severity::Error;
    d.message = std::move(message);
    d.span = second;
    d.related.push_back({first, "first declared here"});
    return d;
}

NodeBehavior lower_behavior(const AstBehavior& ast) {
    NodeBehavior behavior;
    for (const AstAction& action : ast.actions) {
        behavior.actions.push_back({action.name, action.kind, action.span});
    }
    for (const AstEvent& event : ast.events) {
        behavior.events.push_back(
            {event.name, event.kind, event.custom_name, event.trigger_port, event.span});
    }
    for (const AstLink& link : ast.links) {
        BehaviorLink lowered;
        lowered.from = {link.from.kind, link.from.name, link.from.span};
        lowered.to = {link.to.kind, link.to.name, link.to.span};
        lowered.span = link.span;
        behavior.links.push_back(std::move(lowered));
    }
    return behavior;
}

}  // namespace

BuildResult build_model(const ParsedDocument& document) {
    BuildResult result;
    if (!document.ok()) return result;
    const AstDocument& ast = *document.architecture;

    ArchitectureModel model;
    model.name = ast.name;
    model.span = ast.span;

    std::map<std::string, SourceSpan> node_names;
    for (const AstNode& ast_node : ast.nodes) {
        if (auto [it, inserted] = node_names.try_emplace(ast_node.name, ast_node.span);
            !inserted) {
            result.diagnostics.push_back(duplicate(
                "E001", "duplicate node name '" + ast_node.name + "'", ast_node.span, it->second));
            continue;
        }

        DataNode node;
        node.name = ast_node.name;
        node.description = ast_node.description.value_or("");
        node.node_type = ast_node.node_type.value_or(NodeType::Server);
        node.layer = ast_node.layer.value_or(Layer::Cloud);
        node.processing = ast_node.processing.value_or(ProcessingType::Batch);
        if (ast_node.formats) node.formats.insert(ast_node.formats->begin(), ast_node.formats->end());
        node.storage = ast_node.storage;
        node.span = ast_node.span;

        std::map<std::string, SourceSpan> port_names;
        for (const AstPort& port : ast_node.ports) {
            if (auto [it, inserted] = port_names.try_emplace(port.name, port.span); !inserted) {
                result.diagnostics.push_back(duplicate(
                    "E002",
                    "duplicate port name '" + port.name + "' in node '" + node.name + "'",
                    port.span, it->second));
                continue;
            }
            node.ports.push_back({port.name, port.direction, port.format, port.span});
        }

        if (ast_node.behavior) {
            std::map<std::string, SourceSpan> element_names;
            auto check_element = [&](const std::string& name, const SourceSpan& span) {
                if (auto [it, inserted] = element_names.try_emplace(name, span); !inserted) {
                    result.diagnostics.push_back(duplicate(
                        "E002",
                        "duplicate element name '" + name + "' in behavior of node '" +
                            node.name + "'",
                        span, it->second));
                }
            };
            for (const AstAction& action : ast_node.behavior->actions) {
                check_element(action.name, action.span);
            }
            for (const AstEvent& event : ast_node.behavior->events) {
                check_element(event.name, event.span);
            }
            node.behavior = lower_behavior(*ast_node.behavior);
        }

        model.nodes.push_back(std::move(node));
    }

    std::map<std::string, SourceSpan> connection_names;
    for (const AstConnection& ast_connection : ast.connections) {
        if (auto [it, inserted] =
                connection_names.try_emplace(ast_connection.name, ast_connection.span);
            !inserted) {
            result.diagnostics.push_back(
                duplicate("E011", "duplicate connection name '" + ast_connection.name + "'",
                          ast_connection.span, it->second));
            continue;
        }
        Connection connection;
        connection.name = ast_connection.name;
        connection.source = ast_connection.source;
        connection.target = ast_connection.target;
        connection.protocol = ast_connection.protocol;
        connection.span = ast_connection.span;
        model.connections.push_back(std::move(connection));
    }

    sort_diagnostics(result.diagnostics);
    if (!has_errors(result.diagnostics)) {
        result.model = std::move(model);
    }
    return result;
}

AstDocument model_to_ast(const ArchitectureModel& model) {
    AstDocument doc;
    doc.name = model.name;
    for (const DataNode& node : model.nodes) {
        AstNode ast_node;
        ast_node.name = node.name;
        if (!node.description.empty()) ast_node.description = node.description;
        ast_node.node_type = node.node_type;
        ast_node.layer = node.layer;
        ast_node.processing = node.processing;
        if (!node.formats.empty()) {
            ast_node.formats = std::vector<DataFormat>(node.formats.begin(), node.formats.end());
        }
        ast_node.storage = node.storage;
        for (const DataPort& port : node.ports) {
            ast_node.ports.push_back({port.name, port.direction, port.format, {}});
        }
        if (node.behavior) {
            AstBehavior behavior;
            for (const Action& action : node.behavior->actions) {
                behavior.actions.push_back({action.name, action.kind, {}});
            }
            for (const Event& event : node.behavior->events) {
                behavior.events.push_back(
                    {event.name, event.kind, event.custom_name, event.trigger_port, {}});
            }
            for (const BehaviorLink& link : node.behavior->links) {
                AstLink ast_link;
                ast_link.from = {link.from.kind, link.from.name, {}};
                ast_link.to = {link.to.kind, link.to.name, {}};
                behavior.links.push_back(std::move(ast_link));
            }
            ast_node.behavior = std::move(behavior);
        }
        doc.nodes.push_back(std::move(ast_node));
    }
    for (const Connection& connection : model.connections) {
        AstConnection ast_connection;
        ast_connection.name = connection.name;
        ast_connection.source = connection.source;
        ast_connection.target = connection.target;
        ast_connection.protocol = connection.protocol;
        doc.connections.push_back(std::move(ast_connection));
    }
    return doc;
}

}  // namespace datcloud
