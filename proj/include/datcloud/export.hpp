#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "datcloud/model.hpp"

namespace datcloud {

// Interchange document, schema version 1: fixed key order, declaration-order
// arrays, no spans, absent optionals omitted. Byte-deterministic.
std::string to_json(const ArchitectureModel& model);

// Accepts exactly schema version 1; unknown fields and unknown enum literals
// are rejected with a diagnostic naming the field path.
struct FromJsonResult {
    std::optional<ArchitectureModel> model;
    std::vector<Diagnostic> diagnostics;
};
FromJsonResult from_json(std::string_view text);

struct DotOptions {
    bool cluster_by_layer = true;
    bool show_ports = false;
};

// DOT digraph, `rankdir=LR;` preamble, one cluster per non-empty layer when
// clustering, node labels `name\n«type»`, edges labeled with the protocol.
std::string to_dot(const ArchitectureModel& model, DotOptions options = {});

struct MetricsReport {
    std::map<Layer, int> nodes_per_layer;
    std::map<std::string, int> connections_per_protocol;
    struct NodeDegree {
        std::string node;
        int fan_in = 0;
        int fan_out = 0;
    };
    std::vector<NodeDegree> degrees;  // declaration order
    int realtime_node_count = 0;
    int batch_node_count = 0;
    // Longest simple path (connection hops) from any Edge node to any Cloud
    // node; 0 when no such path; nullopt when skipped (more than 24 nodes).
    std::optional<int> max_edge_to_cloud_path;
};

MetricsReport metrics(const ArchitectureModel& model);
std::string render(const MetricsReport& report);

struct EffortRecord {
    std::string task;
    std::optional<double> baseline_hours;  // must be > 0 when present
    double measured_hours = 0.0;
};

struct SavingsRow {
    std::string task;
    std::optional<double> base;
    double measured = 0.0;
    std::optional<int> percent;  // round-half-up integer; absent renders n/a
};

struct SavingsReport {
    std::vector<SavingsRow> rows;
    SavingsRow total;  // base: sum of present baselines; measured: sum of all
};

struct SavingsResult {
    std::optional<SavingsReport> report;
    std::string error;
};
SavingsResult savings_report(const std::vector<EffortRecord>& records);

// Aligned plain-text table: Task, Base, Measured, Percent.
std::string render(const SavingsReport& report);

}  // namespace datcloud
