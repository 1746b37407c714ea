#include "datcloud/templates.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "datcloud/lexer.hpp"

namespace datcloud {

namespace {

namespace fs = std::filesystem;

Template make_edge_sensor() {
    Template t;
    t.name = "edge-sensor";
    t.description =
        "Single Device node on the edge layer producing readings. Free-standing "
        "(reported isolated by W007 until connected).";
    t.parameters = {
        {"arch", "EdgeSensor", "architecture name"},
        {"name", "Sensor", "node name for the sensor device"},
        {"format", "JSON", "data format of the readings"},
    };
    t.body = R"(architecture ${arch} {
  node ${name} {
    type: Device
    layer: Edge
    processing: RealTime
    formats: [${format}]
    out port readings { format: ${format} }
    behavior {
      action sample kind: Generate
      link sample -> port readings
    }
  }
}
)";
    return t;
}

Template make_fog_aggregator() {
    Template t;
    t.name = "fog-aggregator";
    t.description =
        "Gateway node on the fog layer receiving and processing a stream. Free-standing "
        "(reported isolated by W007 until connected).";
    t.parameters = {
        {"arch", "FogAggregator", "architecture name"},
        {"name", "Aggregator", "node name for the gateway"},
        {"format", "JSON", "data format passing through"},
    };
    t.body = R"(architecture ${arch} {
  node ${name} {
    type: Gateway
    layer: Fog
    processing: RealTime
    formats: [${format}]
    in port input { format: ${format} }
    out port output { format: ${format} }
    behavior {
      action aggregate kind: Process
      event receive kind: ReceiveData via input
      link receive -> aggregate
      link aggregate -> port output
    }
  }
}
)";
    return t;
}

Template make_cloud_analytics() {
    Template t;
    t.name = "cloud-analytics";
    t.description =
        "Server node on the cloud layer storing, analyzing and consuming ingested data. "
        "Free-standing (reported isolated by W007 until connected).";
    t.parameters = {
        {"arch", "CloudAnalytics", "architecture name"},
        {"name", "Analytics", "node name for the server"},
        {"format", "JSON", "data format of the ingest stream"},
        {"family", "Document", "NoSql storage family"},
    };
    t.body = R"(architecture ${arch} {
  node ${name} {
    type: Server
    layer: Cloud
    processing: Batch
    formats: [${format}]
    storage: NoSql(${family})
    in port ingest { format: ${format} }
    behavior {
      action persist kind: Store
      action analyze kind: Analyze
      action publish kind: Consume
      event receive kind: ReceiveData via ingest
      link receive -> persist
      link persist -> analyze
      link analyze -> publish
    }
  }
}
)";
    return t;
}

Template make_three_layer_pipeline() {
    Template t;
    t.name = "three-layer-pipeline";
    t.description =
        "Edge source, fog aggregator and cloud store/analyze pipeline with two "
        "connections. Validates without warnings.";
    t.parameters = {
        {"arch", "ThreeLayerPipeline", "architecture name"},
        {"source", "Sensor", "edge node name"},
        {"hub", "FogHub", "fog node name"},
        {"sink", "CloudStore", "cloud node name"},
        {"format", "JSON", "data format along the pipeline"},
        {"protocol", "MQTT", "protocol of both connections"},
    };
    t.body = R"(architecture ${arch} {
  node ${source} {
    type: Device
    layer: Edge
    processing: RealTime
    formats: [${format}]
    out port readings { format: ${format} }
    behavior {
      action sample kind: Generate
      link sample -> port readings
    }
  }
  node ${hub} {
    type: Gateway
    layer: Fog
    processing: RealTime
    formats: [${format}]
    in port input { format: ${format} }
    out port output { format: ${format} }
    behavior {
      action aggregate kind: Process
      event receive kind: ReceiveData via input
      link receive -> aggregate
      link aggregate -> port output
    }
  }
  node ${sink} {
    type: Server
    layer: Cloud
    processing: Batch
    formats: [${format}]
    storage: NoSql(Document)
    in port ingest { format: ${format} }
    behavior {
      action persist kind: Store
      action analyze kind: Analyze
      event receive kind: ReceiveData via ingest
      link receive -> persist
      link persist -> analyze
    }
  }
  connection upstream from ${source}.readings to ${hub}.input protocol ${protocol}
  connection downstream from ${hub}.output to ${sink}.ingest protocol ${protocol}
}
)";
    return t;
}

std::set<std::string> placeholders_in(std::string_view body) {
    std::set<std::string> names;
    std::size_t pos = 0;
    while ((pos = body.find("${", pos)) != std::string_view::npos) {
        auto end = body.find('}', pos + 2);
        if (end == std::string_view::npos) break;
        names.insert(std::string(body.substr(pos + 2, end - pos - 2)));
        pos = end + 1;
    }
    return names;
}

}  // namespace

const std::vector<Template>& builtin_templates() {
    static const std::vector<Template> catalog = [] {
        std::vector<Template> templates{make_cloud_analytics(), make_edge_sensor(),
                                        make_fog_aggregator(), make_three_layer_pipeline()};
        std::sort(templates.begin(), templates.end(),
                  [](const Template& a, const Template& b) { return a.name < b.name; });
        return templates;
    }();
    return catalog;
}

std::vector<Template> list_templates(const std::vector<std::string>& user_dirs) {
    std::vector<Template> catalog;
    for (const std::string& dir : user_dirs) {
        std::error_code ec;
        if (!fs::is_directory(dir, ec)) continue;
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(dir, ec)) {
            if (entry.path().extension() == ".datct") files.push_back(entry.path());
        }
        std::sort(files.begin(), files.end());
        for (const fs::path& file : files) {
            std::ifstream in(file);
            if (!in) continue;
            std::ostringstream text;
            text << in.rdbuf();
            TemplateParseResult parsed =
                parse_template_file(text.str(), file.stem().string());
            if (parsed.tmpl) catalog.push_back(std::move(*parsed.tmpl));
        }
    }
    for (const Template& t : builtin_templates()) {
        if (find_template(catalog, t.name) == nullptr) catalog.push_back(t);
    }
    std::sort(catalog.begin(), catalog.end(),
              [](const Template& a, const Template& b) { return a.name < b.name; });
    return catalog;
}

const Template* find_template(const std::vector<Template>& catalog, std::string_view name) {
    for (const Template& t : catalog) {
        if (t.name == name) return &t;
    }
    return nullptr;
}

TemplateParseResult parse_template_file(std::string_view text, std::string name) {
    TemplateParseResult result;
    Template t;
    t.name = std::move(name);
    std::istringstream stream{std::string(text)};
    std::string line;
    int line_no = 0;
    bool separator_seen = false;
    std::ostringstream body;
    while (std::getline(stream, line)) {
        ++line_no;
        if (separator_seen) {
            body << line << "\n";
            continue;
        }
        std::string trimmed = line;
        while (!trimmed.empty() && (trimmed.back() == '\r' || trimmed.back() == ' ')) {
            trimmed.pop_back();
        }
        if (trimmed == "---") {
            separator_seen = true;
            continue;
        }
        if (trimmed.empty()) continue;
        if (trimmed.rfind("param ", 0) != 0) {
            result.error = "template line " + std::to_string(line_no) +
                           ": expected 'param NAME [= default] -- doc' or '---'";
            return result;
        }
        std::string rest = trimmed.substr(6);
        TemplateParam param;
        if (auto dashes = rest.find("--"); dashes != std::string::npos) {
            param.doc = rest.substr(dashes + 2);
            while (!param.doc.empty() && param.doc.front() == ' ') param.doc.erase(0, 1);
            rest = rest.substr(0, dashes);
        }
        if (auto eq = rest.find('='); eq != std::string::npos) {
            std::string value = rest.substr(eq + 1);
            rest = rest.substr(0, eq);
            auto strip = [](std::string& s) {
                while (!s.empty() && s.front() == ' ') s.erase(0, 1);
                while (!s.empty() && s.back() == ' ') s.pop_back();
            };
            strip(value);
            param.default_value = value;
        }
        while (!rest.empty() && rest.back() == ' ') rest.pop_back();
        while (!rest.empty() && rest.front() == ' ') rest.erase(0, 1);
        if (rest.empty()) {
            result.error = "template line " + std::to_string(line_no) + ": missing parameter name";
            return result;
        }
        param.name = rest;
        t.parameters.push_back(std::move(param));
    }
    if (!separator_seen) {
        result.error = "template has no '---' separator";
        return result;
    }
    t.body = body.str();
    for (const std::string& placeholder : placeholders_in(t.body)) {
        bool declared = std::any_of(t.parameters.begin(), t.parameters.end(),
                                    [&](const TemplateParam& p) { return p.name == placeholder; });
        if (!declared) {
            result.error = "placeholder '${" + placeholder + "}' names no declared parameter";
            return result;
        }
    }
    result.tmpl = std::move(t);
    return result;
}

InstantiateResult instantiate(const Template& tmpl,
                              const std::map<std::string, std::string>& params) {
    InstantiateResult result;
    for (const auto& [name, value] : params) {
        bool declared = std::any_of(tmpl.parameters.begin(), tmpl.parameters.end(),
                                    [&](const TemplateParam& p) { return p.name == name; });
        if (!declared) {
            result.error = "unknown parameter '" + name + "'";
            return result;
        }
        // each value must lex as a single substitutable token
        LexResult lexed = tokenize(value);
        if (!lexed.diagnostics.empty() || lexed.tokens.size() != 2 ||
            (lexed.tokens[0].kind != TokenKind::Identifier &&
             lexed.tokens[0].kind != TokenKind::String &&
             lexed.tokens[0].kind != TokenKind::Integer) ||
            !lexed.tokens[0].leading_trivia.empty() ||
            !lexed.tokens[1].leading_trivia.empty()) {
            result.error = "value '" + value + "' for parameter '" + name +
                           "' does not lex as a single token";
            return result;
        }
    }

    std::map<std::string, std::string> values;
    for (const TemplateParam& param : tmpl.parameters) {
        if (auto it = params.find(param.name); it != params.end()) {
            values[param.name] = it->second;
        } else if (param.default_value) {
            values[param.name] = *param.default_value;
        } else {
            result.error = "missing required parameter '" + param.name + "'";
            return result;
        }
    }

    std::string text = tmpl.body;
    std::size_t pos = 0;
    while ((pos = text.find("${", pos)) != std::string::npos) {
        auto end = text.find('}', pos + 2);
        if (end == std::string::npos) break;
        std::string name = text.substr(pos + 2, end - pos - 2);
        auto it = values.find(name);
        if (it == values.end()) {
            result.error = "placeholder '${" + name + "}' names no declared parameter";
            return result;
        }
        text.replace(pos, end - pos + 1, it->second);
        pos += it->second.size();
    }
    result.text = std::move(text);
    return result;
}

}  // namespace datcloud
