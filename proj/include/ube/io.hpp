#pragma once

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "dag.hpp"
#include "layout.hpp"
#include "outerplanar.hpp"

namespace ube {

using Json = nlohmann::json;

struct GraphDocument {
    Dag dag;
    std::optional<std::vector<VertexName>> outer_face;
    bool operator==(const GraphDocument&) const = default;
};

struct EmbeddingMeta {
    std::string algorithm;
    std::optional<int> bound;
    std::optional<std::map<int, std::set<int>>> page_separation; // block -> pages
    bool operator==(const EmbeddingMeta&) const = default;
};

struct EmbeddingDocument {
    BookEmbedding embedding;
    EmbeddingMeta meta;
    bool operator==(const EmbeddingDocument&) const = default;
};

namespace detail {

inline bool same_cyclic(std::vector<VertexName> a, const std::vector<VertexName>& b) {
    if (a.size() != b.size()) return false;
    if (a.empty()) return true;
    for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t r = 0; r < a.size(); ++r) {
            if (a == b) return true;
            std::rotate(a.begin(), a.begin() + 1, a.end());
        }
        std::reverse(a.begin(), a.end());
    }
    return false;
}

template <class F>
auto json_guard(const std::string& what, F f) -> decltype(f()) {
    try {
        return f();
    } catch (const Json::exception& e) {
        fail(Errc::parse_error, what + ": " + e.what());
    }
}

} // namespace detail

inline Json graph_to_json(const GraphDocument& doc) {
    Json j;
    j["vertices"] = doc.dag.names();
    Json es = Json::array();
    for (const auto& [t, h] : doc.dag.edge_names()) es.push_back({t, h});
    j["edges"] = es;
    if (doc.outer_face) j["outer_face"] = *doc.outer_face;
    return j;
}

inline Json graph_to_json(const Dag& g) { return graph_to_json(GraphDocument{g, std::nullopt}); }

inline GraphDocument graph_from_json(const Json& j) {
    return detail::json_guard("graph document", [&] {
        if (!j.is_object()) fail(Errc::parse_error, "graph document must be an object");
        GraphDocument doc;
        auto vs = j.at("vertices").get<std::vector<VertexName>>();
        std::vector<EdgeName> es;
        for (const auto& e : j.at("edges")) {
            if (!e.is_array() || e.size() != 2) fail(Errc::parse_error, "edge must be [tail, head]");
            es.push_back({e[0].get<VertexName>(), e[1].get<VertexName>()});
        }
        doc.dag = build_dag(vs, es);
        if (j.contains("outer_face")) {
            auto of = j.at("outer_face").get<std::vector<VertexName>>();
            std::set<VertexName> seen(of.begin(), of.end());
            if (seen.size() != of.size() || static_cast<int>(of.size()) != doc.dag.vertex_count())
                fail(Errc::parse_error, "outer_face must list every vertex once");
            for (const auto& v : of)
                if (!doc.dag.contains(v)) fail(Errc::parse_error, "outer_face names unknown vertex " + v);
            OuterEmbedding oe = recover_outer_embedding(doc.dag);
            if (oe.biconnected) {
                std::vector<VertexName> rec;
                for (int v : oe.outer_cycle) rec.push_back(doc.dag.name(v));
                if (!detail::same_cyclic(of, rec)) fail(Errc::parse_error, "outer_face differs from the outerplanar embedding");
            }
            doc.outer_face = of;
        }
        return doc;
    });
}

inline Json embedding_to_json(const EmbeddingDocument& doc) {
    Json j;
    j["order"] = doc.embedding.order;
    Json pages = Json::object();
    for (const auto& [e, p] : doc.embedding.pages) pages[edge_key(e)] = p;
    j["pages"] = pages;
    j["num_pages"] = doc.embedding.num_pages;
    Json meta = Json::object();
    meta["algorithm"] = doc.meta.algorithm;
    if (doc.meta.bound) meta["bound"] = *doc.meta.bound;
    if (doc.meta.page_separation) {
        Json ps = Json::object();
        for (const auto& [blk, pgs] : *doc.meta.page_separation) ps[std::to_string(blk)] = pgs;
        meta["page_separation"] = ps;
    }
    j["meta"] = meta;
    return j;
}

/// Splits "tail->head" at the arrow whose sides are both spine vertices.
inline EdgeName parse_edge_key(const std::string& key, const std::set<VertexName>& vertices) {
    std::optional<EdgeName> hit;
    for (std::size_t at = key.find("->"); at != std::string::npos; at = key.find("->", at + 1)) {
        EdgeName e{key.substr(0, at), key.substr(at + 2)};
        if (vertices.count(e.first) && vertices.count(e.second)) {
            if (hit) fail(Errc::parse_error, "ambiguous edge key " + key);
            hit = e;
        }
    }
    if (!hit) fail(Errc::parse_error, "edge key " + key + " does not name two vertices of the order");
    return *hit;
}

inline EmbeddingDocument embedding_from_json(const Json& j) {
    return detail::json_guard("embedding document", [&] {
        if (!j.is_object()) fail(Errc::parse_error, "embedding document must be an object");
        EmbeddingDocument doc;
        doc.embedding.order = j.at("order").get<Order>();
        std::set<VertexName> vs(doc.embedding.order.begin(), doc.embedding.order.end());
        for (const auto& [k, v] : j.at("pages").items()) doc.embedding.pages[parse_edge_key(k, vs)] = v.get<int>();
        doc.embedding.num_pages = j.at("num_pages").get<int>();
        if (j.contains("meta")) {
            const auto& m = j.at("meta");
            if (m.contains("algorithm")) doc.meta.algorithm = m.at("algorithm").get<std::string>();
            if (m.contains("bound")) doc.meta.bound = m.at("bound").get<int>();
            if (m.contains("page_separation")) {
                std::map<int, std::set<int>> ps;
                for (const auto& [k, v] : m.at("page_separation").items()) ps[std::stoi(k)] = v.get<std::set<int>>();
                doc.meta.page_separation = ps;
            }
        }
        return doc;
    });
}

inline std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

inline std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Errc::io_failure, "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(Errc::io_failure, "cannot write " + path);
    out << text;
    if (!out) fail(Errc::io_failure, "write failed for " + path);
}

inline Json parse_json_text(const std::string& text, const std::string& source) {
    try {
        return Json::parse(text);
    } catch (const Json::exception& e) {
        fail(Errc::parse_error, source + ": " + e.what());
    }
}

inline GraphDocument load_graph(const std::string& path) { return graph_from_json(parse_json_text(read_text(path), path)); }
inline EmbeddingDocument load_embedding(const std::string& path) {
    return embedding_from_json(parse_json_text(read_text(path), path));
}
inline void save_graph(const std::string& path, const GraphDocument& doc) { write_text(path, dump_json(graph_to_json(doc))); }
inline void save_embedding(const std::string& path, const EmbeddingDocument& doc) {
    write_text(path, dump_json(embedding_to_json(doc)));
}

namespace detail {

inline std::string dot_quote(const std::string& s) {
    std::string r = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') r += '\\';
        r += c;
    }
    return r + "\"";
}

inline const char* page_color(int p) {
    static const char* palette[] = {"black", "red", "blue", "darkgreen", "orange", "purple", "brown", "magenta",
                                    "cyan4", "gold3", "gray40", "navy", "olivedrab", "tomato", "teal", "indigo"};
    return palette[(p > 0 ? p - 1 : 0) % 16];
}

} // namespace detail

/// Graphviz text; with an embedding, vertices follow the spine left to right
/// and edges are coloured by page.
inline std::string to_dot(const Dag& g, const std::optional<BookEmbedding>& b = std::nullopt) {
    std::ostringstream o;
    o << "digraph ube {\n  rankdir=LR;\n  node [shape=circle];\n";
    Order order = b ? b->order : g.names();
    for (const auto& v : order) o << "  " << detail::dot_quote(v) << ";\n";
    if (b) {
        for (std::size_t i = 0; i + 1 < order.size(); ++i)
            o << "  " << detail::dot_quote(order[i]) << " -> " << detail::dot_quote(order[i + 1])
              << " [style=invis, weight=100];\n";
    }
    for (const auto& e : g.edge_names()) {
        o << "  " << detail::dot_quote(e.first) << " -> " << detail::dot_quote(e.second);
        if (b) {
            int p = b->page(e);
            o << " [color=" << detail::page_color(p) << ", label=\"" << p << "\", constraint=false]";
        }
        o << ";\n";
    }
    o << "}\n";
    return o.str();
}

} // namespace ube
