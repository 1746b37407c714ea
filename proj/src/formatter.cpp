#include "datcloud/formatter.hpp"

#include <sstream>

namespace datcloud {

namespace {

std::string escape_string(std::string_view text) {
    std::string out = "\"";
    for (char c : text) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out.push_back(c); break;
        }
    }
    out.push_back('"');
    return out;
}

std::string storage_text(const StorageSpec& storage) {
    std::ostringstream out;
    if (const auto* nosql = std::get_if<NoSqlStorage>(&storage)) {
        out << "NoSql(" << name_of(nosql->family) << ")";
    } else if (const auto* newsql = std::get_if<NewSqlStorage>(&storage)) {
        out << "NewSql(" << name_of(newsql->mode) << ")";
    } else {
        out << "FileSystem(" << name_of(std::get<FileSystemStorage>(storage).fs) << ")";
    }
    return out.str();
}

std::string endpoint_text(const AstLinkEndpoint& endpoint) {
    if (endpoint.kind == LinkEndpoint::Kind::Port) return "port " + endpoint.name;
    return endpoint.name;
}

class Writer {
public:
    std::string write(const AstDocument& doc) {
        out_ << "architecture " << doc.name << " {";
        if (doc.nodes.empty() && doc.connections.empty()) {
            out_ << "}\n";
            return out_.str();
        }
        out_ << "\n";
        for (const AstNode& node : doc.nodes) write_node(node);
        for (const AstConnection& connection : doc.connections) write_connection(connection);
        out_ << "}\n";
        return out_.str();
    }

private:
    std::ostringstream out_;
    int indent_ = 1;

    void line(std::string_view text) {
        for (int i = 0; i < indent_; ++i) out_ << "  ";
        out_ << text << "\n";
    }

    void write_node(const AstNode& node) {
        bool empty = !node.description && !node.node_type && !node.layer && !node.processing &&
                     !node.formats && !node.storage && node.ports.empty() && !node.behavior;
        if (empty) {
            line("node " + node.name + " {}");
            return;
        }
        line("node " + node.name + " {");
        ++indent_;
        if (node.description) line("description: " + escape_string(*node.description));
        if (node.node_type) line("type: " + std::string(name_of(*node.node_type)));
        if (node.layer) line("layer: " + std::string(name_of(*node.layer)));
        if (node.processing) line("processing: " + std::string(name_of(*node.processing)));
        if (node.formats) {
            std::string text = "formats: [";
            for (std::size_t i = 0; i < node.formats->size(); ++i) {
                if (i > 0) text += ", ";
                text += name_of((*node.formats)[i]);
            }
            text += "]";
            line(text);
        }
        if (node.storage) line("storage: " + storage_text(*node.storage));
        for (const AstPort& port : node.ports) {
            std::string text = port.direction == PortDirection::In ? "in port " : "out port ";
            text += port.name;
            text += " { format: ";
            text += name_of(port.format);
            text += " }";
            line(text);
        }
        if (node.behavior) write_behavior(*node.behavior);
        --indent_;
        line("}");
    }

    void write_behavior(const AstBehavior& behavior) {
        if (behavior.actions.empty() && behavior.events.empty() && behavior.links.empty()) {
            line("behavior {}");
            return;
        }
        line("behavior {");
        ++indent_;
        for (const AstAction& action : behavior.actions) {
            line("action " + action.name + " kind: " + std::string(name_of(action.kind)));
        }
        for (const AstEvent& event : behavior.events) {
            std::string text = "event " + event.name + " kind: ";
            if (event.kind == EventKind::ReceiveData) {
                text += "ReceiveData";
                if (event.trigger_port) text += " via " + *event.trigger_port;
            } else {
                text += "Custom(" + event.custom_name + ")";
            }
            line(text);
        }
        for (const AstLink& link : behavior.links) {
            line("link " + endpoint_text(link.from) + " -> " + endpoint_text(link.to));
        }
        --indent_;
        line("}");
    }

    void write_connection(const AstConnection& connection) {
        line("connection " + connection.name + " from " + connection.source.node + "." +
             connection.source.port + " to " + connection.target.node + "." +
             connection.target.port + " protocol " + protocol_name(connection.protocol));
    }
};

}  // namespace

std::string format_document(const AstDocument& document) {
    return Writer().write(document);
}

std::string format_model(const ArchitectureModel& model) {
    return Writer().write(model_to_ast(model));
}

}  // namespace datcloud
