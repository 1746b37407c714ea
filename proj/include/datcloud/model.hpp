#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "datcloud/diagnostics.hpp"

namespace datcloud {

enum class NodeType { Server, Gateway, Device };

// Ordered: adjacent layers differ by one step (used by the layer-skip rule).
enum class Layer { Edge, Fog, Cloud };

enum class ProcessingType { Batch, RealTime };

enum class NoSqlFamily { Graph, Column, Document, KeyValue };
enum class NewSqlMode { RealTime, Historical, Stream };
enum class FileSystemKind { HDFS, GFS, Blobseer, GPFS };

struct NoSqlStorage {
    NoSqlFamily family = NoSqlFamily::Document;
    bool operator==(const NoSqlStorage&) const = default;
};
struct NewSqlStorage {
    NewSqlMode mode = NewSqlMode::RealTime;
    bool operator==(const NewSqlStorage&) const = default;
};
struct FileSystemStorage {
    FileSystemKind fs = FileSystemKind::HDFS;
    bool operator==(const FileSystemStorage&) const = default;
};
using StorageSpec = std::variant<NoSqlStorage, NewSqlStorage, FileSystemStorage>;

enum class DataFormat {
    // structured
    Relational,
    CSV,
    Excel,
    RDF,
    EDI,
    // semi-structured
    XML,
    Email,
    JSON,
    YAML,
    AVRO,
    Protobuf,
    // unstructured
    GPS,
    Multimedia,
    Log,
    OfficeFile,
    PlainText,
};

enum class FormatCategory { Structured, SemiStructured, Unstructured };

// Total: every format belongs to exactly one category.
FormatCategory category(DataFormat format);

enum class PortDirection { In, Out };

struct DataPort {
    std::string name;
    PortDirection direction = PortDirection::In;
    DataFormat format = DataFormat::JSON;
    std::optional<SourceSpan> span;
};
bool operator==(const DataPort& a, const DataPort& b);

struct Protocol {
    enum class Kind { HTTPS, MQTT, REST, Custom };
    Kind kind = Kind::HTTPS;
    std::string custom_name;  // set iff kind == Custom

    bool operator==(const Protocol&) const = default;
};

// Display spelling: "MQTT", "Custom(CoAP)", ...
std::string protocol_name(const Protocol& protocol);

// Syntactic node.port reference; resolution is a validation concern.
struct PortRef {
    std::string node;
    std::string port;
    bool operator==(const PortRef&) const = default;
};

struct Connection {
    std::string name;
    PortRef source;
    PortRef target;
    Protocol protocol;
    std::optional<SourceSpan> span;
};
bool operator==(const Connection& a, const Connection& b);

enum class ActionKind { Generate, Ingest, Process, Store, Analyze, Consume, Verify, Secure };

struct Action {
    std::string name;
    ActionKind kind = ActionKind::Process;
    std::optional<SourceSpan> span;
};
bool operator==(const Action& a, const Action& b);

enum class EventKind { ReceiveData, Custom };

struct Event {
    std::string name;
    EventKind kind = EventKind::ReceiveData;
    std::string custom_name;                   // set iff kind == Custom
    std::optional<std::string> trigger_port;   // in-port, meaningful for ReceiveData
    std::optional<SourceSpan> span;
};
bool operator==(const Event& a, const Event& b);

struct LinkEndpoint {
    enum class Kind { Element, Port };
    Kind kind = Kind::Element;
    std::string name;
    std::optional<SourceSpan> span;
};
bool operator==(const LinkEndpoint& a, const LinkEndpoint& b);

struct BehaviorLink {
    LinkEndpoint from;
    LinkEndpoint to;
    std::optional<SourceSpan> span;
};
bool operator==(const BehaviorLink& a, const BehaviorLink& b);

struct NodeBehavior {
    std::vector<Action> actions;
    std::vector<Event> events;
    std::vector<BehaviorLink> links;
};
bool operator==(const NodeBehavior& a, const NodeBehavior& b);

struct DataNode {
    std::string name;
    std::string description;
    NodeType node_type = NodeType::Server;
    Layer layer = Layer::Cloud;
    ProcessingType processing = ProcessingType::Batch;
    std::set<DataFormat> formats;
    std::optional<StorageSpec> storage;
    std::vector<DataPort> ports;
    std::optional<NodeBehavior> behavior;
    std::optional<SourceSpan> span;

    const DataPort* find_port(std::string_view port_name) const;
};
bool operator==(const DataNode& a, const DataNode& b);

struct ArchitectureModel {
    std::string name;
    std::vector<DataNode> nodes;
    std::vector<Connection> connections;
    std::optional<SourceSpan> span;

    const DataNode* find_node(std::string_view node_name) const;
};
bool operator==(const ArchitectureModel& a, const ArchitectureModel& b);

// --- name <-> enum spellings (exactly the DSL / interchange literals) ---

std::string_view name_of(NodeType v);
std::string_view name_of(Layer v);
std::string_view name_of(ProcessingType v);
std::string_view name_of(NoSqlFamily v);
std::string_view name_of(NewSqlMode v);
std::string_view name_of(FileSystemKind v);
std::string_view name_of(DataFormat v);
std::string_view name_of(FormatCategory v);
std::string_view name_of(PortDirection v);
std::string_view name_of(ActionKind v);

std::optional<NodeType> node_type_from(std::string_view s);
std::optional<Layer> layer_from(std::string_view s);
std::optional<ProcessingType> processing_from(std::string_view s);
std::optional<NoSqlFamily> nosql_family_from(std::string_view s);
std::optional<NewSqlMode> newsql_mode_from(std::string_view s);
std::optional<FileSystemKind> filesystem_kind_from(std::string_view s);
std::optional<DataFormat> data_format_from(std::string_view s);
std::optional<ActionKind> action_kind_from(std::string_view s);

// All 16 format literals in enum order.
const std::vector<DataFormat>& all_data_formats();

// --- lookups over a built model ---

struct PortLookup {
    const DataNode* node = nullptr;  // null: node not found
    const DataPort* port = nullptr;  // null with node set: port not found
    bool ok() const { return port != nullptr; }
};

// Total: failures are reported through the result, never thrown.
PortLookup resolve_port(const ArchitectureModel& model, const PortRef& ref);

struct NodeFlows {
    std::vector<const Connection*> incoming;  // declaration order
    std::vector<const Connection*> outgoing;  // declaration order
};

// A self-connection appears in both lists. nullopt when the node is unknown.
std::optional<NodeFlows> node_flows(const ArchitectureModel& model, std::string_view node_name);

}  // namespace datcloud
