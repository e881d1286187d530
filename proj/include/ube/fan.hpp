#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "layout.hpp"
#include "outerplanar.hpp"

namespace ube {

/// Arcs, vertices and source/sink of a set of inner faces of an embedding.
struct FaceSetInfo {
    std::vector<int> arcs;
    std::vector<int> vertices;
    std::vector<int> inner_arcs; // arcs bounding two faces of the set
    int source = -1;
    int sink = -1;
    bool st = false;
};

inline FaceSetInfo face_set_info(const OuterEmbedding& oe, const std::vector<int>& faces) {
    FaceSetInfo r;
    std::map<int, int> mult;
    for (int f : faces)
        for (int e : oe.face_arcs[f]) ++mult[e];
    std::set<int> vs;
    std::map<int, int> indeg, outdeg;
    for (auto [e, c] : mult) {
        r.arcs.push_back(e);
        if (c == 2) r.inner_arcs.push_back(e);
        const Arc& a = oe.dag.arc(e);
        vs.insert(a.tail);
        vs.insert(a.head);
        ++outdeg[a.tail];
        ++indeg[a.head];
    }
    r.vertices.assign(vs.begin(), vs.end());
    int ns = 0, nt = 0;
    for (int v : r.vertices) {
        if (!indeg.count(v)) { ++ns; r.source = v; }
        if (!outdeg.count(v)) { ++nt; r.sink = v; }
    }
    r.st = ns == 1 && nt == 1;
    if (!r.st) r.source = r.sink = -1;
    return r;
}

/// True iff the faces form an st-fan: single source and sink, every inner arc at the source.
inline bool is_fan_faces(const OuterEmbedding& oe, const std::vector<int>& faces, FaceSetInfo* out = nullptr) {
    FaceSetInfo i = face_set_info(oe, faces);
    if (out) *out = i;
    if (!i.st) return false;
    for (int e : i.inner_arcs) {
        const Arc& a = oe.dag.arc(e);
        if (a.tail != i.source && a.head != i.source) return false;
    }
    return true;
}

inline std::vector<EdgeName> arc_names(const Dag& d, const std::vector<int>& arcs) {
    std::vector<EdgeName> r;
    for (int e : arcs) r.push_back(d.edge_name(e));
    return r;
}

/// Subgraph of the parent graph spanned by a set of faces.
inline Dag faces_subgraph(const OuterEmbedding& oe, const std::vector<int>& faces) {
    return oe.dag.arc_subgraph(face_set_info(oe, faces).arcs);
}

/// Vertex names of the outer cycle of `g` rotated to start at `from`, walking away from `avoid`.
inline std::vector<VertexName> outer_walk(const OuterEmbedding& oe, const VertexName& from, const VertexName& avoid) {
    const Dag& g = oe.dag;
    std::vector<int> cyc = oe.outer_cycle;
    int s = g.index(from);
    std::rotate(cyc.begin(), std::find(cyc.begin(), cyc.end(), s), cyc.end());
    if (cyc.size() > 1 && g.name(cyc[1]) == avoid) std::reverse(cyc.begin() + 1, cyc.end());
    std::vector<VertexName> r;
    for (int v : cyc) r.push_back(g.name(v));
    return r;
}

inline bool is_outer_edge_of(const OuterEmbedding& oe, const EdgeName& e) {
    auto t = oe.dag.find(e.first), h = oe.dag.find(e.second);
    if (!t || !h) return false;
    int a = oe.dag.arc_index(*t, *h);
    return a >= 0 && oe.is_outer_arc(a);
}

/// One-page embedding of a one-sided st-outerplanar graph: the outer s-t path avoiding st.
inline BookEmbedding embed_one_sided(const Dag& g, const VertexName& s, const VertexName& t, int page = 1) {
    if (!g.contains(s) || !g.contains(t) || !g.has_edge({s, t})) fail(Errc::not_one_sided, "no edge " + edge_key(s, t));
    auto srcs = g.sources(), snks = g.sinks();
    if (srcs.size() != 1 || snks.size() != 1 || g.name(srcs[0]) != s || g.name(snks[0]) != t)
        fail(Errc::not_one_sided, "graph is not an st-DAG with source " + s + " and sink " + t);
    BookEmbedding b;
    if (g.vertex_count() == 2) {
        b.order = {s, t};
    } else {
        OuterEmbedding oe = recover_outer_embedding(g);
        if (!oe.biconnected || !is_outer_edge_of(oe, {s, t}))
            fail(Errc::not_one_sided, "edge " + edge_key(s, t) + " is not on the outer face");
        b.order = outer_walk(oe, s, t);
        if (b.order.back() != t) fail(Errc::not_one_sided, "outer path from " + s + " does not end at " + t);
    }
    for (const auto& e : g.edge_names()) b.pages[e] = page;
    b.recount();
    return b;
}

/// Structure of an st-fan: apex s, sink t, and the two outer s-t paths
/// (internal vertices only, each listed from s toward t).
struct FanShape {
    VertexName s, t;
    std::vector<VertexName> left, right;
};

inline FanShape fan_shape(const Dag& g) {
    auto srcs = g.sources(), snks = g.sinks();
    if (srcs.size() != 1 || snks.size() != 1) fail(Errc::not_fan, "not an st-DAG");
    FanShape f;
    f.s = g.name(srcs[0]);
    f.t = g.name(snks[0]);
    OuterEmbedding oe = recover_outer_embedding(g);
    if (!oe.biconnected || oe.face_count() == 0 || !oe.internally_triangulated() || !oe.is_outerpath())
        fail(Errc::not_fan, "underlying graph is not a fan");
    int si = g.index(f.s);
    for (int e = 0; e < g.edge_count(); ++e)
        if (oe.is_inner_arc(e) && g.arc(e).tail != si && g.arc(e).head != si)
            fail(Errc::not_fan, "inner edge " + edge_key(g.edge_name(e)) + " avoids the source");
    auto walk = outer_walk(oe, f.s, "");
    auto it = std::find(walk.begin(), walk.end(), f.t);
    f.left.assign(walk.begin() + 1, it);
    f.right.assign(it + 1, walk.end());
    std::reverse(f.right.begin(), f.right.end());
    return f;
}

/// Two-page uv-consecutive embedding of an st-fan on pages {p1, p2}.
/// With `sink_on_one_page`, the edges from s into the later side take the
/// second page instead, so that t keeps a single page. `also`, if given, must
/// end up consecutive as well.
inline BookEmbedding embed_st_fan(const Dag& g, const EdgeName& uv, std::array<int, 2> pg = {1, 2},
                                  bool sink_on_one_page = false, std::optional<EdgeName> also = std::nullopt) {
    FanShape f = fan_shape(g);
    if (uv == EdgeName{f.s, f.t}) fail(Errc::edge_is_st, edge_key(uv));
    auto on_path = [&](const std::vector<VertexName>& p) {
        std::vector<VertexName> full{f.s};
        full.insert(full.end(), p.begin(), p.end());
        full.push_back(f.t);
        for (std::size_t i = 0; i + 1 < full.size(); ++i)
            if (full[i] == uv.first && full[i + 1] == uv.second) return true;
        return false;
    };
    std::vector<VertexName> A = f.left, B = f.right;
    if (!on_path(A)) {
        if (!on_path(B)) fail(Errc::precondition_violated, edge_key(uv) + " is not an outer edge of the fan");
        std::swap(A, B);
    }
    if (uv.second == f.t && uv.first != f.s) std::swap(A, B);
    auto layout = [&](const std::vector<VertexName>& X, const std::vector<VertexName>& Y) {
        BookEmbedding b;
        b.order.push_back(f.s);
        b.order.insert(b.order.end(), X.begin(), X.end());
        b.order.insert(b.order.end(), Y.begin(), Y.end());
        b.order.push_back(f.t);
        std::set<EdgeName> second;
        if (!X.empty() && !Y.empty()) {
            if (sink_on_one_page)
                for (const auto& y : Y) second.insert({f.s, y});
            else
                second.insert({X.back(), f.t});
        }
        for (const auto& e : g.edge_names()) b.pages[e] = second.count(e) ? pg[1] : pg[0];
        b.recount();
        return b;
    };
    auto adjacent = [](const Order& o, const EdgeName& e) {
        auto it = std::find(o.begin(), o.end(), e.first);
        return it != o.end() && it + 1 != o.end() && *(it + 1) == e.second;
    };
    BookEmbedding b = layout(A, B);
    if (also && !adjacent(b.order, *also)) {
        b = layout(B, A);
        if (!adjacent(b.order, uv) || !adjacent(b.order, *also))
            fail(Errc::precondition_violated, edge_key(uv) + " and " + edge_key(*also) + " cannot both be consecutive");
    }
    return b;
}

// ---------------------------------------------------------------------------
// Fan decomposition

struct Fan {
    Dag g;
    VertexName s, t;
    std::vector<int> faces; // face ids of the decomposed graph
    bool one_sided() const { return g.has_edge({s, t}) && outer_st; }
    bool outer_st = false;
};

struct FanDecomposition {
    std::vector<Fan> fans;
    std::vector<EdgeName> shared; // shared[i] joins fans[i] and fans[i+1]
    int size() const { return static_cast<int>(fans.size()); }
};

/// True iff some extreme face of the dual path contains s.
inline bool is_primary(const OuterEmbedding& oe, int s) {
    auto [a, b] = oe.dual_ends();
    return oe.face_has_vertex(a, s) || oe.face_has_vertex(b, s);
}

inline std::vector<int> vertex_ids_sorted(const OuterEmbedding& oe, int f) {
    auto v = oe.inner_faces[f];
    std::sort(v.begin(), v.end());
    return v;
}

/// The dual path of an outerpath read from the extreme face containing `v`;
/// ties go to the face with lexicographically smaller vertex set.
inline std::vector<int> dual_path_from_vertex(const OuterEmbedding& oe, int v) {
    auto [a, b] = oe.dual_ends();
    bool ia = oe.face_has_vertex(a, v), ib = oe.face_has_vertex(b, v);
    int first = a;
    if (ia && ib) first = vertex_ids_sorted(oe, a) <= vertex_ids_sorted(oe, b) ? a : b;
    else if (ib) first = b;
    return oe.dual_path(first);
}

inline Fan make_fan(const OuterEmbedding& oe, const std::vector<int>& faces) {
    FaceSetInfo info;
    invariant(is_fan_faces(oe, faces, &info), "face run is not a fan");
    Fan f;
    f.g = oe.dag.arc_subgraph(info.arcs);
    f.s = oe.dag.name(info.source);
    f.t = oe.dag.name(info.sink);
    f.faces = faces;
    int st = oe.dag.arc_index(info.source, info.sink);
    f.outer_st = st >= 0 && std::find(info.inner_arcs.begin(), info.inner_arcs.end(), st) == info.inner_arcs.end();
    return f;
}

inline int shared_arc(const OuterEmbedding& oe, int f, int g) {
    for (int e : oe.face_arcs[f])
        if (std::find(oe.face_arcs[g].begin(), oe.face_arcs[g].end(), e) != oe.face_arcs[g].end()) return e;
    return -1;
}

/// Greedy maximal-fan partition of a run of faces, in the given order.
inline std::vector<std::vector<int>> greedy_fan_runs(const OuterEmbedding& oe, const std::vector<int>& path) {
    std::vector<std::vector<int>> runs;
    std::vector<int> cur;
    for (int f : path) {
        cur.push_back(f);
        if (cur.size() > 1 && !is_fan_faces(oe, cur)) {
            cur.pop_back();
            runs.push_back(cur);
            cur = {f};
        }
    }
    if (!cur.empty()) runs.push_back(cur);
    return runs;
}

inline std::vector<std::string> check_fan_decomposition(const OuterEmbedding& oe, const FanDecomposition& fd,
                                                        const std::vector<int>& path) {
    std::vector<std::string> bad;
    const Dag& g = oe.dag;
    int k = fd.size();
    for (int i = 0; i < k; ++i) {
        int last = fd.fans[i].faces.back();
        auto it = std::find(path.begin(), path.end(), last);
        if (it + 1 != path.end()) {
            auto ext = fd.fans[i].faces;
            ext.push_back(*(it + 1));
            if (is_fan_faces(oe, ext)) bad.push_back("(i) fan " + std::to_string(i + 1) + " is not incrementally maximal");
        }
    }
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            auto ei = fd.fans[i].g.edge_names();
            std::set<EdgeName> a(ei.begin(), ei.end());
            int common = 0;
            for (const auto& e : fd.fans[j].g.edge_names()) common += a.count(e);
            if (j == i + 1 && (common != 1 || !a.count(fd.shared[i])))
                bad.push_back("(ii) fans " + std::to_string(i + 1) + "," + std::to_string(j + 1) + " share " + std::to_string(common) + " edges");
            if (j > i + 1 && common != 0)
                bad.push_back("(ii) fans " + std::to_string(i + 1) + "," + std::to_string(j + 1) + " share an edge");
        }
    auto srcs = g.sources();
    if (k == 0 || srcs.size() != 1 || fd.fans[0].s != g.name(srcs[0])) bad.push_back("(iii) first fan does not start at s");
    for (int i = 0; i + 1 < k; ++i) {
        if (fd.shared[i].first != fd.fans[i + 1].s) bad.push_back("(iv) tail of e_" + std::to_string(i + 1) + " is not s_" + std::to_string(i + 2));
        if (fd.shared[i] == EdgeName{fd.fans[i].s, fd.fans[i].t}) bad.push_back("(v) e_" + std::to_string(i + 1) + " equals s_i t_i");
    }
    std::set<EdgeName> all;
    for (const auto& f : fd.fans)
        for (const auto& e : f.g.edge_names()) all.insert(e);
    if (static_cast<int>(all.size()) != g.edge_count()) bad.push_back("(vi) fans do not cover the graph");
    return bad;
}

/// True iff: whenever fan i+1 is not one-sided, e_i = s_{i+1} t_i.
inline bool shared_edge_property(const FanDecomposition& fd) {
    for (int i = 0; i + 1 < fd.size(); ++i)
        if (!fd.fans[i + 1].one_sided() && fd.shared[i] != EdgeName{fd.fans[i + 1].s, fd.fans[i].t}) return false;
    return true;
}

inline FanDecomposition fan_decomposition(const Dag& g) {
    if (!g.is_st_dag()) fail(Errc::not_primary, "not an st-DAG");
    OuterEmbedding oe = recover_outer_embedding(g);
    if (!oe.is_outerpath() || !oe.internally_triangulated()) fail(Errc::not_primary, "not an internally triangulated outerpath");
    int s = g.sources()[0];
    if (!is_primary(oe, s)) fail(Errc::not_primary, "no extreme face contains the source");
    auto path = dual_path_from_vertex(oe, s);
    FanDecomposition fd;
    for (auto& run : greedy_fan_runs(oe, path)) fd.fans.push_back(make_fan(oe, run));
    for (int i = 0; i + 1 < fd.size(); ++i)
        fd.shared.push_back(g.edge_name(shared_arc(oe, fd.fans[i].faces.back(), fd.fans[i + 1].faces.front())));
    auto bad = check_fan_decomposition(oe, fd, path);
    if (!bad.empty()) fail(Errc::internal_invariant, "fan decomposition: " + bad.front());
    return fd;
}

} // namespace ube
