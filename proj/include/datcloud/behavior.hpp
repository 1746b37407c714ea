#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "datcloud/diagnostics.hpp"
#include "datcloud/model.hpp"

namespace datcloud {

struct BehaviorVertex {
    enum class Kind { Event, Action, PortSink };
    Kind kind = Kind::Action;
    std::string name;
    ActionKind action_kind = ActionKind::Process;  // meaningful for actions only
};

struct BehaviorGraph {
    std::vector<BehaviorVertex> vertices;     // elements plus referenced out-ports
    std::vector<std::pair<int, int>> edges;   // one per link, declaration order
    std::vector<std::vector<int>> adjacency;  // out-neighbours, declaration order

    int find_vertex(std::string_view name, BehaviorVertex::Kind kind) const;
};

struct GraphBuildResult {
    std::optional<BehaviorGraph> graph;  // absent when diagnostics are present
    std::vector<Diagnostic> diagnostics;
};

// Resolves every link endpoint against the behavior's elements and the given
// ports. Unresolved endpoints yield E008, illegal endpoint kinds (into an
// event, out of a port, into an in-port) yield E012, and no graph is built.
// `node_name`, when given, is woven into diagnostic messages.
GraphBuildResult build_graph(const NodeBehavior& behavior,
                             const std::vector<DataPort>& ports,
                             std::string_view node_name = "");

// Every elementary cycle, each rotated so its lexicographically smallest
// vertex comes first, the list sorted lexicographically. Empty iff DAG.
std::vector<std::vector<std::string>> detect_cycles(const BehaviorGraph& graph);

// Actions not reachable from any event vertex, sorted by name. In a behavior
// without events every action is unreachable.
std::vector<std::string> unreachable_elements(const BehaviorGraph& graph);

struct TraceStep {
    enum class Kind { Action, Emit };
    Kind kind = Kind::Action;
    std::string name;
    ActionKind action_kind = ActionKind::Process;  // for Action steps
};
bool operator==(const TraceStep& a, const TraceStep& b);

struct Trace {
    std::string event;
    std::vector<TraceStep> steps;
};
bool operator==(const Trace& a, const Trace& b);

// Deterministic linearization of the sub-DAG reachable from the event:
// topological order with lexicographic tie-breaking on vertex name. Each
// reachable action appears exactly once. nullopt for an unknown event or a
// cyclic graph.
std::optional<Trace> trace(const BehaviorGraph& graph, std::string_view event_name);

// One step per line: `ACTION name (kind)` or `EMIT port`.
std::string render(const Trace& t);

}  // namespace datcloud
