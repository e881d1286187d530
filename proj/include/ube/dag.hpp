#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "error.hpp"

namespace ube {

using VertexName = std::string;
using EdgeName = std::pair<VertexName, VertexName>;

inline std::string edge_key(const VertexName& tail, const VertexName& head) { return tail + "->" + head; }
inline std::string edge_key(const EdgeName& e) { return edge_key(e.first, e.second); }

struct Arc {
    int tail = -1;
    int head = -1;
    auto operator<=>(const Arc&) const = default;
};

enum class VertexKind { source, sink, internal, isolated };

inline const char* kind_name(VertexKind k) {
    switch (k) {
    case VertexKind::source: return "source";
    case VertexKind::sink: return "sink";
    case VertexKind::internal: return "internal";
    case VertexKind::isolated: return "source-and-sink";
    }
    return "?";
}

/// Directed acyclic graph over opaque string ids.
///
/// Vertices are indexed in lexicographic order of their ids and arcs are kept
/// sorted by (tail, head), so every derived ordering that breaks ties by index
/// breaks them lexicographically by id. Immutable once built.
class Dag {
public:
    Dag() = default;

    static Dag build(std::vector<VertexName> vertices, const std::vector<EdgeName>& edges) {
        std::sort(vertices.begin(), vertices.end());
        for (std::size_t i = 1; i < vertices.size(); ++i)
            if (vertices[i] == vertices[i - 1]) fail(Errc::duplicate_vertex, vertices[i]);
        Dag d;
        d.names_ = std::move(vertices);
        for (std::size_t i = 0; i < d.names_.size(); ++i) d.index_.emplace(d.names_[i], static_cast<int>(i));
        std::set<std::pair<int, int>> seen;
        for (const auto& [t, h] : edges) {
            auto ti = d.find(t), hi = d.find(h);
            if (!ti) fail(Errc::unknown_vertex, t);
            if (!hi) fail(Errc::unknown_vertex, h);
            if (*ti == *hi) fail(Errc::self_loop, t);
            if (seen.count({*ti, *hi})) fail(Errc::duplicate_edge, edge_key(t, h));
            if (seen.count({*hi, *ti})) fail(Errc::cycle_detected, t + " -> " + h + " -> " + t);
            seen.insert({*ti, *hi});
        }
        for (const auto& [t, h] : seen) d.arcs_.push_back({t, h});
        d.finish();
        if (auto cyc = d.find_cycle()) {
            std::string w;
            for (int v : *cyc) w += d.names_[v] + " -> ";
            w += d.names_[cyc->front()];
            fail(Errc::cycle_detected, w);
        }
        return d;
    }

    /// Builds from edges only; the vertex set is the set of endpoints.
    static Dag from_edges(const std::vector<EdgeName>& edges) {
        std::set<VertexName> vs;
        for (const auto& [t, h] : edges) { vs.insert(t); vs.insert(h); }
        return build({vs.begin(), vs.end()}, edges);
    }

    int vertex_count() const { return static_cast<int>(names_.size()); }
    int edge_count() const { return static_cast<int>(arcs_.size()); }
    const std::vector<VertexName>& names() const { return names_; }
    const VertexName& name(int v) const { return names_.at(v); }
    const std::vector<Arc>& arcs() const { return arcs_; }
    const Arc& arc(int e) const { return arcs_.at(e); }
    EdgeName edge_name(int e) const { return {names_[arcs_[e].tail], names_[arcs_[e].head]}; }

    std::optional<int> find(std::string_view name) const {
        auto it = index_.find(std::string(name));
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }
    int index(std::string_view name) const {
        auto i = find(name);
        if (!i) fail(Errc::unknown_vertex, std::string(name));
        return *i;
    }
    bool contains(std::string_view name) const { return find(name).has_value(); }

    const std::vector<int>& out(int v) const { return out_[v]; }
    const std::vector<int>& in(int v) const { return in_[v]; }
    const std::vector<int>& neighbors(int v) const { return nbr_[v]; }
    int out_degree(int v) const { return static_cast<int>(out_[v].size()); }
    int in_degree(int v) const { return static_cast<int>(in_[v].size()); }
    int degree(int v) const { return static_cast<int>(nbr_[v].size()); }

    /// Arc index of u->v, or -1.
    int arc_index(int u, int v) const {
        auto it = std::lower_bound(arcs_.begin(), arcs_.end(), Arc{u, v});
        return (it != arcs_.end() && *it == Arc{u, v}) ? static_cast<int>(it - arcs_.begin()) : -1;
    }
    bool has_arc(int u, int v) const { return arc_index(u, v) >= 0; }
    bool adjacent(int u, int v) const { return has_arc(u, v) || has_arc(v, u); }
    /// Index of the arc joining u and v in either direction, or -1.
    int edge_between(int u, int v) const {
        int e = arc_index(u, v);
        return e >= 0 ? e : arc_index(v, u);
    }
    bool has_edge(const EdgeName& e) const {
        auto t = find(e.first), h = find(e.second);
        return t && h && has_arc(*t, *h);
    }

    VertexKind kind(int v) const {
        bool i = !in_[v].empty(), o = !out_[v].empty();
        if (!i && !o) return VertexKind::isolated;
        if (!i) return VertexKind::source;
        if (!o) return VertexKind::sink;
        return VertexKind::internal;
    }
    bool is_source(int v) const { return in_[v].empty(); }
    bool is_sink(int v) const { return out_[v].empty(); }

    std::vector<int> sources() const {
        std::vector<int> r;
        for (int v = 0; v < vertex_count(); ++v) if (is_source(v)) r.push_back(v);
        return r;
    }
    std::vector<int> sinks() const {
        std::vector<int> r;
        for (int v = 0; v < vertex_count(); ++v) if (is_sink(v)) r.push_back(v);
        return r;
    }
    bool is_st_dag() const { return sources().size() == 1 && sinks().size() == 1; }

    std::vector<EdgeName> edge_names() const {
        std::vector<EdgeName> r;
        r.reserve(arcs_.size());
        for (int e = 0; e < edge_count(); ++e) r.push_back(edge_name(e));
        return r;
    }

    /// Every arc reversed.
    Dag reversed() const {
        std::vector<EdgeName> es;
        for (const auto& a : arcs_) es.push_back({names_[a.head], names_[a.tail]});
        return build(names_, es);
    }

    /// Subgraph formed by the given arcs (indices into this graph) plus their endpoints.
    Dag arc_subgraph(const std::vector<int>& arc_ids) const {
        std::set<VertexName> vs;
        std::vector<EdgeName> es;
        for (int e : arc_ids) {
            es.push_back(edge_name(e));
            vs.insert(es.back().first);
            vs.insert(es.back().second);
        }
        return build({vs.begin(), vs.end()}, es);
    }

    /// Subgraph induced by a vertex-name set.
    Dag induced(const std::set<VertexName>& keep) const {
        std::vector<EdgeName> es;
        for (const auto& a : arcs_)
            if (keep.count(names_[a.tail]) && keep.count(names_[a.head])) es.push_back({names_[a.tail], names_[a.head]});
        return build({keep.begin(), keep.end()}, es);
    }

    /// Lexicographically smallest topological order (Kahn with a min-heap).
    std::vector<int> topological_order() const {
        std::vector<int> indeg(vertex_count());
        for (const auto& a : arcs_) ++indeg[a.head];
        std::priority_queue<int, std::vector<int>, std::greater<>> q;
        for (int v = 0; v < vertex_count(); ++v) if (indeg[v] == 0) q.push(v);
        std::vector<int> order;
        while (!q.empty()) {
            int v = q.top();
            q.pop();
            order.push_back(v);
            for (int w : out_[v]) if (--indeg[w] == 0) q.push(w);
        }
        return order;
    }

    bool connected() const {
        if (vertex_count() == 0) return true;
        std::vector<char> seen(vertex_count(), 0);
        std::vector<int> st{0};
        seen[0] = 1;
        int count = 1;
        while (!st.empty()) {
            int v = st.back();
            st.pop_back();
            for (int w : nbr_[v]) if (!seen[w]) { seen[w] = 1; ++count; st.push_back(w); }
        }
        return count == vertex_count();
    }

    bool operator==(const Dag& o) const { return names_ == o.names_ && arcs_ == o.arcs_; }

private:
    void finish() {
        int n = vertex_count();
        out_.assign(n, {});
        in_.assign(n, {});
        nbr_.assign(n, {});
        for (const auto& a : arcs_) {
            out_[a.tail].push_back(a.head);
            in_[a.head].push_back(a.tail);
            nbr_[a.tail].push_back(a.head);
            nbr_[a.head].push_back(a.tail);
        }
        for (auto* adj : {&out_, &in_, &nbr_})
            for (auto& l : *adj) std::sort(l.begin(), l.end());
    }

    std::optional<std::vector<int>> find_cycle() const {
        int n = vertex_count();
        std::vector<int> color(n, 0), parent(n, -1);
        for (int r = 0; r < n; ++r) {
            if (color[r]) continue;
            std::vector<std::pair<int, std::size_t>> st{{r, 0}};
            color[r] = 1;
            while (!st.empty()) {
                auto& [v, i] = st.back();
                if (i < out_[v].size()) {
                    int w = out_[v][i++];
                    if (color[w] == 1) {
                        std::vector<int> cyc{w};
                        for (int x = v; x != w; x = parent[x]) cyc.push_back(x);
                        std::reverse(cyc.begin() + 1, cyc.end());
                        return cyc;
                    }
                    if (color[w] == 0) {
                        color[w] = 1;
                        parent[w] = v;
                        st.push_back({w, 0});
                    }
                } else {
                    color[v] = 2;
                    st.pop_back();
                }
            }
        }
        return std::nullopt;
    }

    std::vector<VertexName> names_;
    std::map<VertexName, int, std::less<>> index_;
    std::vector<Arc> arcs_;
    std::vector<std::vector<int>> out_, in_, nbr_;
};

inline Dag build_dag(std::vector<VertexName> vertices, const std::vector<EdgeName>& edges) {
    return Dag::build(std::move(vertices), edges);
}

inline std::map<VertexName, VertexKind> classify_vertices(const Dag& d) {
    std::map<VertexName, VertexKind> r;
    for (int v = 0; v < d.vertex_count(); ++v) r.emplace(d.name(v), d.kind(v));
    return r;
}

} // namespace ube
