#include "datcloud/parser.hpp"

#include <sstream>

#include "datcloud/lexer.hpp"

namespace datcloud {

namespace {

class Parser {
public:
    Parser(std::string_view source, std::string file) : file_(std::move(file)) {
        LexResult lexed = tokenize(source, file_);
        diagnostics_ = std::move(lexed.diagnostics);
        for (Token& token : lexed.tokens) {
            if (token.kind != TokenKind::Comment) tokens_.push_back(std::move(token));
        }
    }

    ParsedDocument run() {
        ParsedDocument document;
        if (!at_keyword("architecture")) {
            error("expected 'architecture'");
            skip_until({"architecture"});
        }
        if (at_keyword("architecture")) {
            document.architecture = parse_architecture();
            if (!at_eof()) {
                error("unexpected input after architecture block", "P101");
            }
        }
        document.diagnostics = std::move(diagnostics_);
        sort_diagnostics(document.diagnostics);
        return document;
    }

private:
    std::string file_;
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    std::vector<Diagnostic> diagnostics_;
    bool eof_reported_ = false;

    const Token& peek() const { return tokens_[pos_]; }
    const Token& previous() const { return tokens_[pos_ > 0 ? pos_ - 1 : 0]; }
    bool at_eof() const { return peek().kind == TokenKind::Eof; }

    const Token& advance() {
        const Token& token = tokens_[pos_];
        if (pos_ + 1 < tokens_.size()) ++pos_;
        return token;
    }

    bool at_keyword(std::string_view kw) const {
        return peek().kind == TokenKind::Keyword && peek().lexeme == kw;
    }

    bool at_punct(std::string_view p) const {
        return peek().kind == TokenKind::Punct && peek().lexeme == p;
    }

    bool match_keyword(std::string_view kw) {
        if (!at_keyword(kw)) return false;
        advance();
        return true;
    }

    bool match_punct(std::string_view p) {
        if (!at_punct(p)) return false;
        advance();
        return true;
    }

    std::string describe(const Token& token) const {
        if (token.kind == TokenKind::Eof) return "end of input";
        return "'" + token.lexeme + "'";
    }

    void error(std::string_view expected, std::string code = "P100") {
        if (at_eof()) {
            if (eof_reported_) return;
            eof_reported_ = true;
        }
        Diagnostic d;
        d.code = std::move(code);
        d.severity = Severity::Error;
        d.message = std::string(expected) + ", found " + describe(peek());
        d.span = peek().span;
        diagnostics_.push_back(std::move(d));
    }

    // Panic-mode recovery: skip tokens until one of the given keywords, a
    // closing `}`, or end of input.
    void skip_until(std::initializer_list<std::string_view> keywords) {
        while (!at_eof()) {
            if (peek().kind == TokenKind::Keyword) {
                for (std::string_view kw : keywords) {
                    if (peek().lexeme == kw) return;
                }
            }
            if (at_punct("}")) return;
            advance();
        }
    }

    bool expect_punct(std::string_view p) {
        if (match_punct(p)) return true;
        error("expected '" + std::string(p) + "'");
        return false;
    }

    std::optional<std::string> expect_identifier(std::string_view what) {
        if (peek().kind == TokenKind::Identifier) {
            return advance().lexeme;
        }
        error("expected " + std::string(what));
        return std::nullopt;
    }

    SourceSpan merge(const SourceSpan& start) const {
        SourceSpan span = start;
        const SourceSpan& end = previous().span;
        span.end_line = end.end_line;
        span.end_col = end.end_col;
        return span;
    }

    AstDocument parse_architecture() {
        AstDocument doc;
        SourceSpan start = peek().span;
        advance();  // architecture
        if (auto name = expect_identifier("architecture name")) doc.name = *name;
        expect_punct("{");
        while (!at_eof() && !at_punct("}")) {
            if (at_keyword("node")) {
                doc.nodes.push_back(parse_node());
            } else if (at_keyword("connection")) {
                if (auto connection = parse_connection()) {
                    doc.connections.push_back(std::move(*connection));
                }
            } else {
                error("expected 'node' or 'connection'");
                skip_until({"node", "connection"});
            }
        }
        if (!match_punct("}")) error("expected '}'");
        doc.span = merge(start);
        return doc;
    }

    AstNode parse_node() {
        AstNode node;
        SourceSpan start = peek().span;
        advance();  // node
        if (auto name = expect_identifier("node name")) node.name = *name;
        expect_punct("{");
        while (!at_eof()) {
            if (at_punct("}")) {
                advance();
                break;
            }
            if (at_keyword("node") || at_keyword("connection")) {
                // a missing `}`; hand control back to the architecture loop
                error("expected '}'");
                break;
            }
            if (at_keyword("description")) {
                advance();
                expect_punct(":");
                if (peek().kind == TokenKind::String) {
                    node.description = advance().value;
                } else {
                    error("expected string");
                    recover_in_node();
                }
            } else if (at_keyword("type")) {
                advance();
                expect_punct(":");
                parse_enum_attr<NodeType>(node.node_type, node_type_from,
                                          "'Server', 'Gateway' or 'Device'");
            } else if (at_keyword("layer")) {
                advance();
                expect_punct(":");
                parse_enum_attr<Layer>(node.layer, layer_from, "'Cloud', 'Fog' or 'Edge'");
            } else if (at_keyword("processing")) {
                advance();
                expect_punct(":");
                parse_enum_attr<ProcessingType>(node.processing, processing_from,
                                                "'Batch' or 'RealTime'");
            } else if (at_keyword("formats")) {
                advance();
                expect_punct(":");
                parse_formats(node);
            } else if (at_keyword("storage")) {
                advance();
                expect_punct(":");
                parse_storage(node);
            } else if (at_keyword("in") || at_keyword("out")) {
                if (auto port = parse_port()) node.ports.push_back(std::move(*port));
            } else if (at_keyword("behavior")) {
                node.behavior = parse_behavior();
            } else {
                error("expected attribute, port, behavior or '}'");
                recover_in_node();
            }
        }
        node.span = merge(start);
        return node;
    }

    void recover_in_node() {
        while (!at_eof()) {
            if (peek().kind == TokenKind::Keyword) {
                static constexpr std::string_view sync[] = {
                    "description", "type", "layer",    "processing", "formats", "storage",
                    "in",          "out",  "behavior", "node",       "connection"};
                for (std::string_view kw : sync) {
                    if (peek().lexeme == kw) return;
                }
            }
            if (at_punct("}")) return;
            advance();
        }
    }

    template <typename Enum, typename FromName>
    void parse_enum_attr(std::optional<Enum>& slot, FromName from_name,
                         std::string_view expectation) {
        if (peek().kind == TokenKind::Identifier) {
            if (auto value = from_name(peek().lexeme)) {
                advance();
                slot = *value;
                return;
            }
        }
        error("expected " + std::string(expectation));
        if (peek().kind == TokenKind::Identifier) advance();
    }

    void parse_formats(AstNode& node) {
        if (!expect_punct("[")) {
            recover_in_node();
            return;
        }
        std::vector<DataFormat> formats;
        while (true) {
            if (peek().kind == TokenKind::Identifier) {
                if (auto format = data_format_from(peek().lexeme)) {
                    advance();
                    formats.push_back(*format);
                } else {
                    error("expected a data format");
                    advance();
                }
            } else {
                error("expected a data format");
                break;
            }
            if (!match_punct(",")) break;
        }
        expect_punct("]");
        node.formats = std::move(formats);
    }

    void parse_storage(AstNode& node) {
        if (peek().kind != TokenKind::Identifier) {
            error("expected 'NoSql', 'NewSql' or 'FileSystem'");
            recover_in_node();
            return;
        }
        std::string head = advance().lexeme;
        if (head != "NoSql" && head != "NewSql" && head != "FileSystem") {
            error("expected 'NoSql', 'NewSql' or 'FileSystem'");
            recover_in_node();
            return;
        }
        if (!expect_punct("(")) {
            recover_in_node();
            return;
        }
        if (peek().kind != TokenKind::Identifier) {
            error("expected storage argument");
            recover_in_node();
            return;
        }
        std::string arg = advance().lexeme;
        if (head == "NoSql") {
            if (auto family = nosql_family_from(arg)) {
                node.storage = NoSqlStorage{*family};
            } else {
                error_at_previous("unknown NoSql family '" + arg + "'");
            }
        } else if (head == "NewSql") {
            if (auto mode = newsql_mode_from(arg)) {
                node.storage = NewSqlStorage{*mode};
            } else {
                error_at_previous("unknown NewSql mode '" + arg + "'");
            }
        } else {
            if (auto fs = filesystem_kind_from(arg)) {
                node.storage = FileSystemStorage{*fs};
            } else {
                error_at_previous("unknown file system '" + arg + "'");
            }
        }
        expect_punct(")");
    }

    void error_at_previous(std::string message) {
        Diagnostic d;
        d.code = "P100";
        d.severity = Severity::Error;
        d.message = std::move(message);
        d.span = previous().span;
        diagnostics_.push_back(std::move(d));
    }

    std::optional<AstPort> parse_port() {
        AstPort port;
        SourceSpan start = peek().span;
        port.direction = peek().lexeme == "in" ? PortDirection::In : PortDirection::Out;
        advance();  // in | out
        if (!match_keyword("port")) {
            error("expected 'port'");
            recover_in_node();
            return std::nullopt;
        }
        auto name = expect_identifier("port name");
        if (!name) {
            recover_in_node();
            return std::nullopt;
        }
        port.name = *name;
        expect_punct("{");
        if (!match_keyword("format")) error("expected 'format'");
        expect_punct(":");
        if (peek().kind == TokenKind::Identifier) {
            if (auto format = data_format_from(peek().lexeme)) {
                advance();
                port.format = *format;
            } else {
                error("expected a data format");
                advance();
            }
        } else {
            error("expected a data format");
        }
        expect_punct("}");
        port.span = merge(start);
        return port;
    }

    AstBehavior parse_behavior() {
        AstBehavior behavior;
        SourceSpan start = peek().span;
        advance();  // behavior
        expect_punct("{");
        while (!at_eof() && !at_punct("}")) {
            if (at_keyword("action")) {
                if (auto action = parse_action()) behavior.actions.push_back(std::move(*action));
            } else if (at_keyword("event")) {
                if (auto event = parse_event()) behavior.events.push_back(std::move(*event));
            } else if (at_keyword("link")) {
                if (auto link = parse_link()) behavior.links.push_back(std::move(*link));
            } else {
                error("expected 'action', 'event', 'link' or '}'");
                skip_until({"action", "event", "link", "node", "connection"});
                if (at_keyword("node") || at_keyword("connection")) break;
            }
        }
        if (!match_punct("}")) error("expected '}'");
        behavior.span = merge(start);
        return behavior;
    }

    std::optional<AstAction> parse_action() {
        AstAction action;
        SourceSpan start = peek().span;
        advance();  // action
        auto name = expect_identifier("action name");
        if (!name) return std::nullopt;
        action.name = *name;
        if (!match_keyword("kind")) error("expected 'kind'");
        expect_punct(":");
        if (peek().kind == TokenKind::Identifier) {
            if (auto kind = action_kind_from(peek().lexeme)) {
                advance();
                action.kind = *kind;
            } else {
                error("expected an action kind");
                advance();
                return std::nullopt;
            }
        } else {
            error("expected an action kind");
            return std::nullopt;
        }
        action.span = merge(start);
        return action;
    }

    std::optional<AstEvent> parse_event() {
        AstEvent event;
        SourceSpan start = peek().span;
        advance();  // event
        auto name = expect_identifier("event name");
        if (!name) return std::nullopt;
        event.name = *name;
        if (!match_keyword("kind")) error("expected 'kind'");
        expect_punct(":");
        if (peek().kind != TokenKind::Identifier) {
            error("expected 'ReceiveData' or 'Custom'");
            return std::nullopt;
        }
        std::string kind_name = advance().lexeme;
        if (kind_name == "ReceiveData") {
            event.kind = EventKind::ReceiveData;
            if (match_keyword("via")) {
                if (auto port = expect_identifier("port name")) {
                    event.trigger_port = *port;
                }
            }
        } else if (kind_name == "Custom") {
            event.kind = EventKind::Custom;
            expect_punct("(");
            if (auto custom = expect_identifier("event kind name")) {
                event.custom_name = *custom;
            }
            expect_punct(")");
        } else {
            error_at_previous("expected 'ReceiveData' or 'Custom', found '" + kind_name + "'");
            return std::nullopt;
        }
        event.span = merge(start);
        return event;
    }

    std::optional<AstLink> parse_link() {
        AstLink link;
        SourceSpan start = peek().span;
        advance();  // link
        auto from = parse_endpoint();
        if (!from) return std::nullopt;
        link.from = std::move(*from);
        if (!match_punct("->")) {
            error("expected '->'");
            return std::nullopt;
        }
        auto to = parse_endpoint();
        if (!to) return std::nullopt;
        link.to = std::move(*to);
        link.span = merge(start);
        return link;
    }

    std::optional<AstLinkEndpoint> parse_endpoint() {
        AstLinkEndpoint endpoint;
        SourceSpan start = peek().span;
        if (match_keyword("port")) {
            endpoint.kind = LinkEndpoint::Kind::Port;
        }
        auto name = expect_identifier(endpoint.kind == LinkEndpoint::Kind::Port
                                          ? "port name"
                                          : "action, event or 'port'");
        if (!name) return std::nullopt;
        endpoint.name = *name;
        endpoint.span = merge(start);
        return endpoint;
    }

    std::optional<AstConnection> parse_connection() {
        AstConnection connection;
        SourceSpan start = peek().span;
        advance();  // connection
        auto name = expect_identifier("connection name");
        if (!name) {
            skip_until({"node", "connection"});
            return std::nullopt;
        }
        connection.name = *name;
        auto endpoint = [&](std::string_view kw, PortRef& ref) -> bool {
            if (!match_keyword(kw)) {
                error("expected '" + std::string(kw) + "'");
                return false;
            }
            auto node = expect_identifier("node name");
            if (!node) return false;
            if (!expect_punct(".")) return false;
            auto port = expect_identifier("port name");
            if (!port) return false;
            ref.node = *node;
            ref.port = *port;
            return true;
        };
        if (!endpoint("from", connection.source) || !endpoint("to", connection.target)) {
            skip_until({"node", "connection"});
            return std::nullopt;
        }
        if (!match_keyword("protocol")) {
            error("expected 'protocol'");
            skip_until({"node", "connection"});
            return std::nullopt;
        }
        if (peek().kind != TokenKind::Identifier) {
            error("expected a protocol");
            skip_until({"node", "connection"});
            return std::nullopt;
        }
        std::string proto = advance().lexeme;
        if (proto == "HTTPS") {
            connection.protocol = {Protocol::Kind::HTTPS, ""};
        } else if (proto == "MQTT") {
            connection.protocol = {Protocol::Kind::MQTT, ""};
        } else if (proto == "REST") {
            connection.protocol = {Protocol::Kind::REST, ""};
        } else if (proto == "Custom") {
            expect_punct("(");
            auto custom = expect_identifier("protocol name");
            if (!custom) {
                skip_until({"node", "connection"});
                return std::nullopt;
            }
            connection.protocol = {Protocol::Kind::Custom, *custom};
            expect_punct(")");
        } else {
            error_at_previous("unknown protocol '" + proto + "'");
            skip_until({"node", "connection"});
            return std::nullopt;
        }
        connection.span = merge(start);
        return connection;
    }
};

}  // namespace

ParsedDocument parse(std::string_view source, std::string file) {
    return Parser(source, std::move(file)).run();
}

}  // namespace datcloud
