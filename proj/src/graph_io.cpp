#include "reprint/graph_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <ostream>
#include <set>
#include <sstream>

#include "reprint/csv.hpp"
#include "reprint/error.hpp"

namespace reprint {

namespace {

std::string xml_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

std::string xml_unescape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] != '&') {
            out.push_back(s[i]);
            continue;
        }
        auto semi = s.find(';', i);
        if (semi == std::string_view::npos) throw DataError("graphml: unterminated entity");
        auto entity = s.substr(i + 1, semi - i - 1);
        if (entity == "amp") out.push_back('&');
        else if (entity == "lt") out.push_back('<');
        else if (entity == "gt") out.push_back('>');
        else if (entity == "quot") out.push_back('"');
        else if (entity == "apos") out.push_back('\'');
        else throw DataError("graphml: unsupported entity &" + std::string(entity) + ";");
        i = semi;
    }
    return out;
}

enum class AttrType { long_, double_, string_ };

const char* type_name(AttrType t) {
    switch (t) {
        case AttrType::long_: return "long";
        case AttrType::double_: return "double";
        case AttrType::string_: return "string";
    }
    return "string";
}

AttrType type_of(const AttrValue& v) {
    if (std::holds_alternative<std::int64_t>(v)) return AttrType::long_;
    if (std::holds_alternative<double>(v)) return AttrType::double_;
    return AttrType::string_;
}

std::string value_text(const AttrValue& v) {
    if (auto* i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
    if (auto* d = std::get_if<double>(&v)) return csv::format_double(*d);
    return std::get<std::string>(v);
}

std::string graph_id(const RepublishGraph& g) {
    return g.window_index ? "window_" + std::to_string(*g.window_index) : "combined";
}

}  // namespace

void write_graphml(std::ostream& out, const RepublishGraph& graph) {
    std::map<std::string, AttrType> keys;
    for (const auto& [name, attrs] : graph.nodes) {
        for (const auto& [k, v] : attrs) {
            AttrType t = type_of(v);
            auto [it, inserted] = keys.emplace(k, t);
            if (!inserted && it->second != t) {
                bool numeric = it->second != AttrType::string_ && t != AttrType::string_;
                it->second = numeric ? AttrType::double_ : AttrType::string_;
            }
        }
    }

    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\" "
           "xmlns:xsi=\"http://www.w3.org/2001/XMLSchema-instance\" "
           "xsi:schemaLocation=\"http://graphml.graphdrawing.org/xmlns "
           "http://graphml.graphdrawing.org/xmlns/1.0/graphml.xsd\">\n";
    for (const auto& [k, t] : keys) {
        out << "  <key id=\"" << xml_escape(k) << "\" for=\"node\" attr.name=\"" << xml_escape(k)
            << "\" attr.type=\"" << type_name(t) << "\"/>\n";
    }
    out << "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"long\"/>\n";
    out << "  <graph id=\"" << graph_id(graph) << "\" edgedefault=\"directed\">\n";
    for (const auto& [name, attrs] : graph.nodes) {
        out << "    <node id=\"" << xml_escape(name) << "\"";
        if (attrs.empty()) {
            out << "/>\n";
            continue;
        }
        out << ">\n";
        for (const auto& [k, v] : attrs) {
            std::string text = value_text(v);
            if (keys.at(k) == AttrType::double_ && std::holds_alternative<std::int64_t>(v)) {
                text = csv::format_double(static_cast<double>(std::get<std::int64_t>(v)));
            }
            out << "      <data key=\"" << xml_escape(k) << "\">" << xml_escape(text) << "</data>\n";
        }
        out << "    </node>\n";
    }
    std::size_t e = 0;
    for (const auto& [key, w] : graph.edges) {
        out << "    <edge id=\"e" << e++ << "\" source=\"" << xml_escape(key.first) << "\" target=\""
            << xml_escape(key.second) << "\">\n"
            << "      <data key=\"weight\">" << w << "</data>\n"
            << "    </edge>\n";
    }
    out << "  </graph>\n</graphml>\n";
}

namespace {

struct Tag {
    std::string name;  // without leading '/'
    bool closing = false;
    bool self_closing = false;
    std::map<std::string, std::string> attrs;
};

// Pull parser over the element subset write_graphml emits.
class XmlScanner {
public:
    explicit XmlScanner(std::string doc) : doc_(std::move(doc)) {}

    // Next tag; text between tags is accumulated in last_text().
    std::optional<Tag> next() {
        text_.clear();
        for (;;) {
            auto lt = doc_.find('<', pos_);
            if (lt == std::string::npos) {
                text_ += doc_.substr(pos_);
                pos_ = doc_.size();
                return std::nullopt;
            }
            text_ += doc_.substr(pos_, lt - pos_);
            if (doc_.compare(lt, 4, "<!--") == 0) {
                auto end = doc_.find("-->", lt);
                if (end == std::string::npos) throw DataError("graphml: unterminated comment");
                pos_ = end + 3;
                continue;
            }
            if (doc_.compare(lt, 2, "<?") == 0 || doc_.compare(lt, 2, "<!") == 0) {
                auto end = doc_.find('>', lt);
                if (end == std::string::npos) throw DataError("graphml: unterminated declaration");
                pos_ = end + 1;
                continue;
            }
            auto gt = find_tag_end(lt);
            Tag tag = parse_tag(std::string_view(doc_).substr(lt + 1, gt - lt - 1));
            pos_ = gt + 1;
            return tag;
        }
    }

    std::string last_text() const { return xml_unescape(text_); }

private:
    std::size_t find_tag_end(std::size_t lt) const {
        char quote = 0;
        for (std::size_t i = lt + 1; i < doc_.size(); ++i) {
            char c = doc_[i];
            if (quote) {
                if (c == quote) quote = 0;
            } else if (c == '"' || c == '\'') {
                quote = c;
            } else if (c == '>') {
                return i;
            }
        }
        throw DataError("graphml: unterminated tag");
    }

    static Tag parse_tag(std::string_view body) {
        Tag tag;
        if (!body.empty() && body.front() == '/') {
            tag.closing = true;
            body.remove_prefix(1);
        }
        if (!body.empty() && body.back() == '/') {
            tag.self_closing = true;
            body.remove_suffix(1);
        }
        std::size_t i = 0;
        auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; };
        while (i < body.size() && !is_space(body[i])) ++i;
        tag.name = std::string(body.substr(0, i));
        for (;;) {
            while (i < body.size() && is_space(body[i])) ++i;
            if (i >= body.size()) break;
            auto eq = body.find('=', i);
            if (eq == std::string_view::npos) throw DataError("graphml: malformed attribute");
            std::string key(body.substr(i, eq - i));
            while (!key.empty() && is_space(key.back())) key.pop_back();
            i = eq + 1;
            while (i < body.size() && is_space(body[i])) ++i;
            if (i >= body.size() || (body[i] != '"' && body[i] != '\'')) {
                throw DataError("graphml: unquoted attribute value");
            }
            char quote = body[i++];
            auto close = body.find(quote, i);
            if (close == std::string_view::npos) throw DataError("graphml: unterminated attribute value");
            tag.attrs[key] = xml_unescape(body.substr(i, close - i));
            i = close + 1;
        }
        return tag;
    }

    std::string doc_;
    std::size_t pos_ = 0;
    std::string text_;
};

const std::string& required(const Tag& tag, const char* attr) {
    auto it = tag.attrs.find(attr);
    if (it == tag.attrs.end()) throw DataError("graphml: <" + tag.name + "> missing '" + attr + "'");
    return it->second;
}

AttrValue parse_value(const std::string& text, const std::string& type) {
    try {
        if (type == "long" || type == "int") return static_cast<std::int64_t>(std::stoll(text));
        if (type == "double" || type == "float") return std::stod(text);
    } catch (const std::exception&) {
        throw DataError("graphml: bad " + type + " value '" + text + "'");
    }
    return text;
}

}  // namespace

RepublishGraph read_graphml(std::istream& in) {
    std::string doc((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    XmlScanner scanner(std::move(doc));

    struct Key {
        std::string name;
        std::string type;
        std::string domain;
    };
    std::map<std::string, Key> keys;
    RepublishGraph g;
    bool saw_graph = false;

    std::optional<std::string> current_node;
    std::optional<std::pair<std::string, std::string>> current_edge;
    std::optional<std::string> current_data;

    while (auto tag = scanner.next()) {
        if (tag->name == "key" && !tag->closing) {
            keys[required(*tag, "id")] = {required(*tag, "attr.name"),
                                          tag->attrs.count("attr.type") ? tag->attrs.at("attr.type") : "string",
                                          tag->attrs.count("for") ? tag->attrs.at("for") : "all"};
        } else if (tag->name == "graph" && !tag->closing) {
            saw_graph = true;
            const std::string& id = required(*tag, "id");
            if (id.rfind("window_", 0) == 0) {
                try {
                    g.window_index = std::stoul(id.substr(7));
                } catch (const std::exception&) {
                    throw DataError("graphml: bad graph id '" + id + "'");
                }
            }
        } else if (tag->name == "node") {
            if (tag->closing) {
                current_node.reset();
                continue;
            }
            const std::string& id = required(*tag, "id");
            g.add_node(id);
            if (!tag->self_closing) current_node = id;
        } else if (tag->name == "edge") {
            if (tag->closing) {
                current_edge.reset();
                continue;
            }
            auto key = std::make_pair(required(*tag, "source"), required(*tag, "target"));
            g.add_node(key.first);
            g.add_node(key.second);
            g.edges.try_emplace(key, 0);
            if (!tag->self_closing) current_edge = key;
        } else if (tag->name == "data") {
            if (!tag->closing) {
                current_data = required(*tag, "key");
                if (tag->self_closing) current_data.reset();
                continue;
            }
            if (!current_data) throw DataError("graphml: stray </data>");
            auto it = keys.find(*current_data);
            if (it == keys.end()) throw DataError("graphml: undeclared key '" + *current_data + "'");
            std::string text = scanner.last_text();
            if (current_edge) {
                if (it->second.name == "weight") {
                    g.edges[*current_edge] = std::get<std::int64_t>(parse_value(text, "long"));
                }
            } else if (current_node) {
                g.nodes[*current_node][it->second.name] = parse_value(text, it->second.type);
            }
            current_data.reset();
        }
    }
    if (!saw_graph) throw DataError("graphml: no <graph> element");
    return g;
}

namespace {

std::string dot_quote(std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

constexpr const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
constexpr const char* kShades[] = {"#eff3ff", "#bdd7e7", "#6baed6", "#3182bd", "#08519c"};

}  // namespace

void write_dot(std::ostream& out, const RepublishGraph& graph, const std::string& color_attribute) {
    std::set<std::string> categories;
    double lo = 0.0, hi = 0.0;
    bool have_real = false;
    for (const auto& [name, attrs] : graph.nodes) {
        auto it = attrs.find(color_attribute);
        if (it == attrs.end()) continue;
        if (auto* d = std::get_if<double>(&it->second)) {
            lo = have_real ? std::min(lo, *d) : *d;
            hi = have_real ? std::max(hi, *d) : *d;
            have_real = true;
        } else {
            categories.insert(value_text(it->second));
        }
    }
    auto fill_for = [&](const AttrMap& attrs) -> std::string {
        auto it = attrs.find(color_attribute);
        if (it == attrs.end()) return "#ffffff";
        if (auto* d = std::get_if<double>(&it->second)) {
            if (hi <= lo) return kShades[0];
            auto bucket = static_cast<std::size_t>((*d - lo) / (hi - lo) * 5.0);
            return kShades[std::min<std::size_t>(bucket, 4)];
        }
        auto pos = static_cast<std::size_t>(
            std::distance(categories.begin(), categories.find(value_text(it->second))));
        return kPalette[pos % std::size(kPalette)];
    };

    std::int64_t max_weight = 1;
    for (const auto& [key, w] : graph.edges) max_weight = std::max(max_weight, w);

    out << "digraph " << dot_quote(graph_id(graph)) << " {\n";
    out << "  node [style=filled];\n";
    for (const auto& [name, attrs] : graph.nodes) {
        out << "  " << dot_quote(name) << " [fillcolor=" << dot_quote(fill_for(attrs)) << "];\n";
    }
    for (const auto& [key, w] : graph.edges) {
        char pen[32];
        std::snprintf(pen, sizeof pen, "%.3f",
                      1.0 + 4.0 * static_cast<double>(w) / static_cast<double>(max_weight));
        out << "  " << dot_quote(key.first) << " -> " << dot_quote(key.second) << " [weight=" << w
            << ", penwidth=" << pen << "];\n";
    }
    out << "}\n";
}

void export_graph(const RepublishGraph& graph, GraphFormat format, const std::filesystem::path& path,
                  const std::string& color_attribute) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write graph file: " + path.string());
    if (format == GraphFormat::graphml) {
        write_graphml(out, graph);
    } else {
        write_dot(out, graph, color_attribute);
    }
    if (!out) throw DataError("failed writing graph file: " + path.string());
}

}  // namespace reprint
