#ifndef PURSUIT_GRAPH_IO_HPP
#define PURSUIT_GRAPH_IO_HPP

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "json.hpp"
#include "pursuit/graph.hpp"

namespace pursuit {

using json = nlohmann::json;

struct NamedGraph {
    std::optional<std::string> name;
    Graph graph;
};

namespace detail {

inline std::size_t line_at(std::string_view text, std::size_t offset) {
    offset = std::min(offset, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

// Byte offset of the `index`-th element of the top-level "edges" array, or npos.
inline std::size_t locate_edge(std::string_view text, std::size_t index) {
    int depth = 0;
    bool in_edges = false;
    std::size_t seen = 0;
    std::string last_key;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (c == '"') {
            std::size_t j = i + 1;
            std::string s;
            while (j < text.size() && text[j] != '"') {
                if (text[j] == '\\') ++j;
                if (j < text.size()) s += text[j];
                ++j;
            }
            if (depth == 1) last_key = s;
            i = j;
            continue;
        }
        if (c == '{' || c == '[') {
            ++depth;
            if (c == '[' && depth == 2 && last_key == "edges") in_edges = true;
            else if (in_edges && depth == 3 && seen++ == index) return i;
        } else if (c == '}' || c == ']') {
            if (depth == 2) in_edges = false;
            --depth;
        }
    }
    return std::string_view::npos;
}

}  // namespace detail

// Graph file format: {"name": optional string, "n": integer, "edges": [[u,v],...]}.
inline NamedGraph parse_named_graph(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(detail::line_at(text, e.byte == 0 ? 0 : e.byte - 1), e.what());
    }
    if (!doc.is_object()) throw ParseError(1, "graph document must be a JSON object");
    if (!doc.contains("n") || !doc["n"].is_number_integer() || doc["n"].get<long long>() < 0)
        throw ParseError(detail::line_at(text, text.find("\"n\"")), "\"n\" must be a non-negative integer");
    const auto n = doc["n"].get<std::size_t>();
    std::vector<Edge> edges;
    if (doc.contains("edges")) {
        const auto& list = doc["edges"];
        if (!list.is_array()) throw ParseError(detail::line_at(text, text.find("\"edges\"")), "\"edges\" must be an array");
        for (std::size_t i = 0; i < list.size(); ++i) {
            auto fail = [&](const std::string& why) {
                return ParseError(detail::line_at(text, detail::locate_edge(text, i)), "edge " + std::to_string(i) + ": " + why);
            };
            const auto& e = list[i];
            if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
                throw fail("expected a pair of integers");
            for (const auto& end : e) {
                long long x = end.get<long long>();
                if (x < 0) throw fail("endpoint " + std::to_string(x) + " is negative");
                if (static_cast<unsigned long long>(x) >= n)
                    throw fail("endpoint " + std::to_string(x) + " ≥ n (n = " + std::to_string(n) + ")");
            }
            auto u = e[0].get<Vertex>();
            auto v = e[1].get<Vertex>();
            if (u == v) throw fail("self-loop on " + std::to_string(u));
            edges.emplace_back(u, v);
        }
    }
    NamedGraph out{std::nullopt, build_graph(n, edges)};
    if (doc.contains("name")) {
        if (!doc["name"].is_string()) throw ParseError(detail::line_at(text, text.find("\"name\"")), "\"name\" must be a string");
        out.name = doc["name"].get<std::string>();
    }
    return out;
}

inline Graph parse_graph(std::string_view text) { return parse_named_graph(text).graph; }

inline json graph_to_json(const Graph& g, const std::optional<std::string>& name = std::nullopt) {
    json doc = json::object();
    if (name) doc["name"] = *name;
    doc["n"] = g.order();
    json edges = json::array();
    for (const auto& [u, v] : g.edges()) edges.push_back({u, v});
    doc["edges"] = std::move(edges);
    return doc;
}

inline std::string serialize_graph(const Graph& g, const std::optional<std::string>& name = std::nullopt) {
    return graph_to_json(g, name).dump();
}

// Accepts an already-parsed document in the graph file format.
inline Graph graph_from_json(const json& doc) { return parse_graph(doc.dump()); }

inline NamedGraph load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_named_graph(ss.str());
}

}  // namespace pursuit

#endif  // PURSUIT_GRAPH_IO_HPP
