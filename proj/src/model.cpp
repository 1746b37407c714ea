#include "datcloud/model.hpp"

#include <algorithm>

namespace datcloud {

FormatCategory category(DataFormat format) {
    switch (format) {
        case DataFormat::Relational:
        case DataFormat::CSV:
        case DataFormat::Excel:
        case DataFormat::RDF:
        case DataFormat::EDI:
            return FormatCategory::Structured;
        case DataFormat::XML:
        case DataFormat::Email:
        case DataFormat::JSON:
        case DataFormat::YAML:
        case DataFormat::AVRO:
        case DataFormat::Protobuf:
            return FormatCategory::SemiStructured;
        case DataFormat::GPS:
        case DataFormat::Multimedia:
        case DataFormat::Log:
        case DataFormat::OfficeFile:
        case DataFormat::PlainText:
            return FormatCategory::Unstructured;
    }
    return FormatCategory::Unstructured;
}

std::string_view name_of(NodeType v) {
    switch (v) {
        case NodeType::Server: return "Server";
        case NodeType::Gateway: return "Gateway";
        case NodeType::Device: return "Device";
    }
    return "";
}

std::string_view name_of(Layer v) {
    switch (v) {
        case Layer::Cloud: return "Cloud";
        case Layer::Fog: return "Fog";
        case Layer::Edge: return "Edge";
    }
    return "";
}

std::string_view name_of(ProcessingType v) {
    switch (v) {
        case ProcessingType::Batch: return "Batch";
        case ProcessingType::RealTime: return "RealTime";
    }
    return "";
}

std::string_view name_of(NoSqlFamily v) {
    switch (v) {
        case NoSqlFamily::Graph: return "Graph";
        case NoSqlFamily::Column: return "Column";
        case NoSqlFamily::Document: return "Document";
        case NoSqlFamily::KeyValue: return "KeyValue";
    }
    return "";
}

std::string_view name_of(NewSqlMode v) {
    switch (v) {
        case NewSqlMode::RealTime: return "RealTime";
        case NewSqlMode::Historical: return "Historical";
        case NewSqlMode::Stream: return "Stream";
    }
    return "";
}

std::string_view name_of(FileSystemKind v) {
    switch (v) {
        case FileSystemKind::HDFS: return "HDFS";
        case FileSystemKind::GFS: return "GFS";
        case FileSystemKind::Blobseer: return "Blobseer";
        case FileSystemKind::GPFS: return "GPFS";
    }
    return "";
}

std::string_view name_of(DataFormat v) {
    switch (v) {
        case DataFormat::Relational: return "Relational";
        case DataFormat::CSV: return "CSV";
        case DataFormat::Excel: return "Excel";
        case DataFormat::RDF: return "RDF";
        case DataFormat::EDI: return "EDI";
        case DataFormat::XML: return "XML";
        case DataFormat::Email: return "Email";
        case DataFormat::JSON: return "JSON";
        case DataFormat::YAML: return "YAML";
        case DataFormat::AVRO: return "AVRO";
        case DataFormat::Protobuf: return "Protobuf";
        case DataFormat::GPS: return "GPS";
        case DataFormat::Multimedia: return "Multimedia";
        case DataFormat::Log: return "Log";
        case DataFormat::OfficeFile: return "OfficeFile";
        case DataFormat::PlainText: return "PlainText";
    }
    return "";
}

std::string_view name_of(FormatCategory v) {
    switch (v) {
        case FormatCategory::Structured: return "Structured";
        case FormatCategory::SemiStructured: return "SemiStructured";
        case FormatCategory::Unstructured: return "Unstructured";
    }
    return "";
}

std::string_view name_of(PortDirection v) {
    return v == PortDirection::In ? "In" : "Out";
}

std::string_view name_of(ActionKind v) {
    switch (v) {
        case ActionKind::Generate: return "Generate";
        case ActionKind::Ingest: return "Ingest";
        case ActionKind::Process: return "Process";
        case ActionKind::Store: return "Store";
        case ActionKind::Analyze: return "Analyze";
        case ActionKind::Consume: return "Consume";
        case ActionKind::Verify: return "Verify";
        case ActionKind::Secure: return "Secure";
    }
    return "";
}

namespace {

template <typename Enum>
std::optional<Enum> from_name(std::string_view s, const std::vector<Enum>& values) {
    for (Enum v : values) {
        if (name_of(v) == s) return v;
    }
    return std::nullopt;
}

}  // namespace

std::optional<NodeType> node_type_from(std::string_view s) {
    static const std::vector<NodeType> values{NodeType::Server, NodeType::Gateway,
                                              NodeType::Device};
    return from_name(s, values);
}

std::optional<Layer> layer_from(std::string_view s) {
    static const std::vector<Layer> values{Layer::Cloud, Layer::Fog, Layer::Edge};
    return from_name(s, values);
}

std::optional<ProcessingType> processing_from(std::string_view s) {
    static const std::vector<ProcessingType> values{ProcessingType::Batch,
                                                    ProcessingType::RealTime};
    return from_name(s, values);
}

std::optional<NoSqlFamily> nosql_family_from(std::string_view s) {
    static const std::vector<NoSqlFamily> values{NoSqlFamily::Graph, NoSqlFamily::Column,
                                                 NoSqlFamily::Document, NoSqlFamily::KeyValue};
    return from_name(s, values);
}

std::optional<NewSqlMode> newsql_mode_from(std::string_view s) {
    static const std::vector<NewSqlMode> values{NewSqlMode::RealTime, NewSqlMode::Historical,
                                                NewSqlMode::Stream};
    return from_name(s, values);
}

std::optional<FileSystemKind> filesystem_kind_from(std::string_view s) {
    static const std::vector<FileSystemKind> values{FileSystemKind::HDFS, FileSystemKind::GFS,
                                                    FileSystemKind::Blobseer, FileSystemKind::GPFS};
    return from_name(s, values);
}

std::optional<DataFormat> data_format_from(std::string_view s) {
    return from_name(s, all_data_formats());
}

std::optional<ActionKind> action_kind_from(std::string_view s) {
    static const std::vector<ActionKind> values{
        ActionKind::Generate, ActionKind::Ingest,  ActionKind::Process, ActionKind::Store,
        ActionKind::Analyze,  ActionKind::Consume, ActionKind::Verify,  ActionKind::Secure};
    return from_name(s, values);
}

const std::vector<DataFormat>& all_data_formats() {
    static const std::vector<DataFormat> values{
        DataFormat::Relational, DataFormat::CSV,       DataFormat::Excel,
        DataFormat::RDF,        DataFormat::EDI,       DataFormat::XML,
        DataFormat::Email,      DataFormat::JSON,      DataFormat::YAML,
        DataFormat::AVRO,       DataFormat::Protobuf,  DataFormat::GPS,
        DataFormat::Multimedia, DataFormat::Log,       DataFormat::OfficeFile,
        DataFormat::PlainText};
    return values;
}

std::string protocol_name(const Protocol& protocol) {
    switch (protocol.kind) {
        case Protocol::Kind::HTTPS: return "HTTPS";
        case Protocol::Kind::MQTT: return "MQTT";
        case Protocol::Kind::REST: return "REST";
        case Protocol::Kind::Custom: return "Custom(" + protocol.custom_name + ")";
    }
    return "";
}

// --- equality (ignores spans) ---

bool operator==(const DataPort& a, const DataPort& b) {
    return a.name == b.name && a.direction == b.direction && a.format == b.format;
}

bool operator==(const Connection& a, const Connection& b) {
    return a.name == b.name && a.source == b.source && a.target == b.target &&
           a.protocol == b.protocol;
}

bool operator==(const Action& a, const Action& b) {
    return a.name == b.name && a.kind == b.kind;
}

bool operator==(const Event& a, const Event& b) {
    return a.name == b.name && a.kind == b.kind && a.custom_name == b.custom_name &&
           a.trigger_port == b.trigger_port;
}

bool operator==(const LinkEndpoint& a, const LinkEndpoint& b) {
    return a.kind == b.kind && a.name == b.name;
}

bool operator==(const BehaviorLink& a, const BehaviorLink& b) {
    return a.from == b.from && a.to == b.to;
}

bool operator==(const NodeBehavior& a, const NodeBehavior& b) {
    return a.actions == b.actions && a.events == b.events && a.links == b.links;
}

bool operator==(const DataNode& a, const DataNode& b) {
    return a.name == b.name && a.description == b.description && a.node_type == b.node_type &&
           a.layer == b.layer && a.processing == b.processing && a.formats == b.formats &&
           a.storage == b.storage && a.ports == b.ports && a.behavior == b.behavior;
}

bool operator==(const ArchitectureModel& a, const ArchitectureModel& b) {
    return a.name == b.name && a.nodes == b.nodes && a.connections == b.connections;
}

// --- lookups ---

const DataPort* DataNode::find_port(std::string_view port_name) const {
    for (const DataPort& port : ports) {
        if (port.name == port_name) return &port;
    }
    return nullptr;
}

const DataNode* ArchitectureModel::find_node(std::string_view node_name) const {
    for (const DataNode& node : nodes) {
        if (node.name == node_name) return &node;
    }
    return nullptr;
}

PortLookup resolve_port(const ArchitectureModel& model, const PortRef& ref) {
    PortLookup result;
    result.node = model.find_node(ref.node);
    if (result.node == nullptr) return result;
    result.port = result.node->find_port(ref.port);
    return result;
}

std::optional<NodeFlows> node_flows(const ArchitectureModel& model, std::string_view node_name) {
    if (model.find_node(node_name) == nullptr) return std::nullopt;
    NodeFlows flows;
    for (const Connection& connection : model.connections) {
        if (connection.target.node == node_name) flows.incoming.push_back(&connection);
        if (connection.source.node == node_name) flows.outgoing.push_back(&connection);
    }
    return flows;
}

}  // namespace datcloud
