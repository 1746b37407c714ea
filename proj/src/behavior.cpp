#include "datcloud/behavior.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <sstream>

namespace datcloud {

int BehaviorGraph::find_vertex(std::string_view name, BehaviorVertex::Kind kind) const {
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        if (vertices[i].kind == kind && vertices[i].name == name) return static_cast<int>(i);
    }
    return -1;
}

namespace {

std::string in_node(std::string_view node_name) {
    if (node_name.empty()) return "";
    return " in node '" + std::string(node_name) + "'";
}

Diagnostic endpoint_diag(std::string code, std::string message,
                         const std::optional<SourceSpan>& span) {
    Diagnostic d;
    d.code = std::move(code);
    d.severity = Severity::Error;
    d.message = std::move(message);
    d.span = span;
    return d;
}

}  // namespace

GraphBuildResult build_graph(const NodeBehavior& behavior, const std::vector<DataPort>& ports,
                             std::string_view node_name) {
    GraphBuildResult result;
    BehaviorGraph graph;

    std::map<std::string, int> elements;  // actions and events share one namespace
    for (const Event& event : behavior.events) {
        elements[event.name] = static_cast<int>(graph.vertices.size());
        graph.vertices.push_back({BehaviorVertex::Kind::Event, event.name, {}});
    }
    for (const Action& action : behavior.actions) {
        elements[action.name] = static_cast<int>(graph.vertices.size());
        graph.vertices.push_back({BehaviorVertex::Kind::Action, action.name, action.kind});
    }

    std::map<std::string, int> sinks;
    auto sink_vertex = [&](const std::string& port_name) {
        if (auto it = sinks.find(port_name); it != sinks.end()) return it->second;
        int index = static_cast<int>(graph.vertices.size());
        sinks[port_name] = index;
        graph.vertices.push_back({BehaviorVertex::Kind::PortSink, port_name, {}});
        return index;
    };

    auto find_port = [&](std::string_view name) -> const DataPort* {
        for (const DataPort& port : ports) {
            if (port.name == name) return &port;
        }
        return nullptr;
    };

    for (const BehaviorLink& link : behavior.links) {
        int from = -1;
        int to = -1;

        if (link.from.kind == LinkEndpoint::Kind::Port) {
            if (find_port(link.from.name) == nullptr) {
                result.diagnostics.push_back(endpoint_diag(
                    "E008",
                    "link endpoint 'port " + link.from.name + "' does not resolve" +
                        in_node(node_name),
                    link.from.span));
            } else {
                result.diagnostics.push_back(endpoint_diag(
                    "E012",
                    "link source 'port " + link.from.name + "' is a port, not an action or event" +
                        in_node(node_name),
                    link.from.span));
            }
        } else if (auto it = elements.find(link.from.name); it != elements.end()) {
            from = it->second;
        } else {
            result.diagnostics.push_back(endpoint_diag(
                "E008",
                "link endpoint '" + link.from.name + "' does not resolve" + in_node(node_name),
                link.from.span));
        }

        if (link.to.kind == LinkEndpoint::Kind::Port) {
            const DataPort* port = find_port(link.to.name);
            if (port == nullptr) {
                result.diagnostics.push_back(endpoint_diag(
                    "E008",
                    "link endpoint 'port " + link.to.name + "' does not resolve" +
                        in_node(node_name),
                    link.to.span));
            } else if (port->direction != PortDirection::Out) {
                result.diagnostics.push_back(endpoint_diag(
                    "E012",
                    "link target 'port " + link.to.name + "' is not an out-port" +
                        in_node(node_name),
                    link.to.span));
            } else {
                to = sink_vertex(link.to.name);
            }
        } else if (auto it = elements.find(link.to.name); it != elements.end()) {
            if (graph.vertices[it->second].kind == BehaviorVertex::Kind::Event) {
                result.diagnostics.push_back(endpoint_diag(
                    "E012", "link target '" + link.to.name + "' is an event" + in_node(node_name),
                    link.to.span));
            } else {
                to = it->second;
            }
        } else {
            result.diagnostics.push_back(endpoint_diag(
                "E008",
                "link endpoint '" + link.to.name + "' does not resolve" + in_node(node_name),
                link.to.span));
        }

        if (from >= 0 && to >= 0) graph.edges.emplace_back(from, to);
    }

    if (!result.diagnostics.empty()) return result;

    graph.adjacency.assign(graph.vertices.size(), {});
    for (const auto& [from, to] : graph.edges) {
        graph.adjacency[from].push_back(to);
    }
    result.graph = std::move(graph);
    return result;
}

std::vector<std::vector<std::string>> detect_cycles(const BehaviorGraph& graph) {
    const int n = static_cast<int>(graph.vertices.size());
    std::vector<std::vector<std::string>> cycles;

    // Each elementary cycle is discovered exactly once: from its
    // minimum-index vertex, walking only vertices with index >= start.
    std::vector<int> path;
    std::vector<bool> on_path(n, false);

    auto dfs = [&](auto&& self, int start, int v) -> void {
        path.push_back(v);
        on_path[v] = true;
        for (int next : graph.adjacency[v]) {
            if (next == start) {
                std::vector<std::string> names;
                names.reserve(path.size());
                for (int index : path) names.push_back(graph.vertices[index].name);
                auto smallest = std::min_element(names.begin(), names.end());
                std::rotate(names.begin(), smallest, names.end());
                cycles.push_back(std::move(names));
            } else if (next > start && !on_path[next]) {
                self(self, start, next);
            }
        }
        on_path[v] = false;
        path.pop_back();
    };

    for (int start = 0; start < n; ++start) {
        dfs(dfs, start, start);
    }
    std::sort(cycles.begin(), cycles.end());
    return cycles;
}

std::vector<std::string> unreachable_elements(const BehaviorGraph& graph) {
    const int n = static_cast<int>(graph.vertices.size());
    std::vector<bool> visited(n, false);
    std::vector<int> stack;
    for (int i = 0; i < n; ++i) {
        if (graph.vertices[i].kind == BehaviorVertex::Kind::Event) {
            visited[i] = true;
            stack.push_back(i);
        }
    }
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int next : graph.adjacency[v]) {
            if (!visited[next]) {
                visited[next] = true;
                stack.push_back(next);
            }
        }
    }
    std::vector<std::string> unreachable;
    for (int i = 0; i < n; ++i) {
        if (graph.vertices[i].kind == BehaviorVertex::Kind::Action && !visited[i]) {
            unreachable.push_back(graph.vertices[i].name);
        }
    }
    std::sort(unreachable.begin(), unreachable.end());
    return unreachable;
}

bool operator==(const TraceStep& a, const TraceStep& b) {
    return a.kind == b.kind && a.name == b.name &&
           (a.kind != TraceStep::Kind::Action || a.action_kind == b.action_kind);
}

bool operator==(const Trace& a, const Trace& b) {
    return a.event == b.event && a.steps == b.steps;
}

std::optional<Trace> trace(const BehaviorGraph& graph, std::string_view event_name) {
    int start = graph.find_vertex(event_name, BehaviorVertex::Kind::Event);
    if (start < 0) return std::nullopt;
    if (!detect_cycles(graph).empty()) return std::nullopt;

    const int n = static_cast<int>(graph.vertices.size());
    std::vector<bool> reachable(n, false);
    std::vector<int> stack{start};
    reachable[start] = true;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int next : graph.adjacency[v]) {
            if (!reachable[next]) {
                reachable[next] = true;
                stack.push_back(next);
            }
        }
    }

    std::vector<int> in_degree(n, 0);
    for (const auto& [from, to] : graph.edges) {
        if (reachable[from] && reachable[to]) ++in_degree[to];
    }

    // topological order, lexicographic tie-break on vertex name
    auto priority = [&](int v) {
        return std::make_pair(graph.vertices[v].name, static_cast<int>(graph.vertices[v].kind));
    };
    std::set<std::pair<std::pair<std::string, int>, int>> ready;
    for (int v = 0; v < n; ++v) {
        if (reachable[v] && in_degree[v] == 0) ready.insert({priority(v), v});
    }

    Trace result;
    result.event = std::string(event_name);
    while (!ready.empty()) {
        int v = ready.begin()->second;
        ready.erase(ready.begin());
        const BehaviorVertex& vertex = graph.vertices[v];
        if (vertex.kind == BehaviorVertex::Kind::Action) {
            result.steps.push_back({TraceStep::Kind::Action, vertex.name, vertex.action_kind});
        } else if (vertex.kind == BehaviorVertex::Kind::PortSink) {
            result.steps.push_back({TraceStep::Kind::Emit, vertex.name, {}});
        }
        // duplicate edges decrement once each; a vertex becomes ready when
        // its last in-edge is consumed
        for (int next : graph.adjacency[v]) {
            if (!reachable[next]) continue;
            if (--in_degree[next] == 0) ready.insert({priority(next), next});
        }
    }
    return result;
}

std::string render(const Trace& t) {
    std::ostringstream out;
    for (const TraceStep& step : t.steps) {
        if (step.kind == TraceStep::Kind::Action) {
            out << "ACTION " << step.name << " (" << name_of(step.action_kind) << ")\n";
        } else {
            out << "EMIT " << step.name << "\n";
        }
    }
    return out.str();
}

}  // namespace datcloud
