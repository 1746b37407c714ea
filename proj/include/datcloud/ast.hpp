#pragma once

#include <optional>
#include <string>
#include <vector>

#include "datcloud/diagnostics.hpp"
#include "datcloud/model.hpp"

namespace datcloud {

// Parse-level mirror of the model: attributes are optional, references stay
// unresolved, and every construct carries a span. Structural equality of AST
// values ignores spans.

struct AstPort {
    std::string name;
    PortDirection direction = PortDirection::In;
    DataFormat format = DataFormat::JSON;
    SourceSpan span;
};
bool operator==(const AstPort& a, const AstPort& b);

struct AstAction {
    std::string name;
    ActionKind kind = ActionKind::Process;
    SourceSpan span;
};
bool operator==(const AstAction& a, const AstAction& b);

struct AstEvent {
    std::string name;
    EventKind kind = EventKind::ReceiveData;
    std::string custom_name;
    std::optional<std::string> trigger_port;
    SourceSpan span;
};
bool operator==(const AstEvent& a, const AstEvent& b);

struct AstLinkEndpoint {
    LinkEndpoint::Kind kind = LinkEndpoint::Kind::Element;
    std::string name;
    SourceSpan span;
};
bool operator==(const AstLinkEndpoint& a, const AstLinkEndpoint& b);

struct AstLink {
    AstLinkEndpoint from;
    AstLinkEndpoint to;
    SourceSpan span;
};
bool operator==(const AstLink& a, const AstLink& b);

struct AstBehavior {
    std::vector<AstAction> actions;
    std::vector<AstEvent> events;
    std::vector<AstLink> links;
    SourceSpan span;
};
bool operator==(const AstBehavior& a, const AstBehavior& b);

struct AstConnection {
    std::string name;
    PortRef source;
    PortRef target;
    Protocol protocol;
    SourceSpan span;
};
bool operator==(const AstConnection& a, const AstConnection& b);

struct AstNode {
    std::string name;
    std::optional<std::string> description;
    std::optional<NodeType> node_type;
    std::optional<Layer> layer;
    std::optional<ProcessingType> processing;
    std::optional<std::vector<DataFormat>> formats;  // declared order, duplicates kept
    std::optional<StorageSpec> storage;
    std::vector<AstPort> ports;
    std::optional<AstBehavior> behavior;
    SourceSpan span;
};
bool operator==(const AstNode& a, const AstNode& b);

struct AstDocument {
    std::string name;
    std::vector<AstNode> nodes;
    std::vector<AstConnection> connections;
    SourceSpan span;
};
bool operator==(const AstDocument& a, const AstDocument& b);

struct ParsedDocument {
    std::optional<AstDocument> architecture;  // may be partial after recovery
    std::vector<Diagnostic> diagnostics;

    // Documents with an Error diagnostic are unparsable-for-build.
    bool ok() const { return architecture.has_value() && !has_errors(diagnostics); }
};

// Model construction from a parsed document. Uniqueness invariants (node,
// connection, port and behavior-element names) are enforced here; on any
// Error-severity finding no model is returned.
struct BuildResult {
    std::optional<ArchitectureModel> model;
    std::vector<Diagnostic> diagnostics;
};

BuildResult build_model(const ParsedDocument& document);

// Lowers a built model back to AST form (all attributes present, empty or
// absent optionals omitted, formats in enum order). Spans are defaulted.
AstDocument model_to_ast(const ArchitectureModel& model);

}  // namespace datcloud
