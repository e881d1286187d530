#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bctree.hpp"
#include "dag.hpp"
#include "layout.hpp"

namespace ube {

/// Outerplanar embedding of a connected DAG. Vertex and arc ids refer to `dag`.
struct OuterEmbedding {
    Dag dag;
    std::vector<int> outer_cycle;               // every vertex once
    std::vector<std::vector<int>> inner_faces;  // vertex cycles
    std::vector<std::vector<int>> face_arcs;    // arcs bounding each inner face
    std::vector<std::vector<int>> arc_faces;    // inner faces incident to each arc
    std::vector<std::vector<int>> dual;         // face adjacency through shared arcs
    bool biconnected = false;

    int face_count() const { return static_cast<int>(inner_faces.size()); }
    bool is_outer_arc(int e) const { return arc_faces[e].size() <= 1; }
    bool is_inner_arc(int e) const { return arc_faces[e].size() == 2; }
    int dual_edge_count() const {
        int c = 0;
        for (const auto& l : dual) c += static_cast<int>(l.size());
        return c / 2;
    }
    /// Biconnected with a path-shaped weak dual.
    bool is_outerpath() const {
        if (!biconnected || inner_faces.empty()) return false;
        int ends = 0;
        for (const auto& l : dual) {
            if (l.size() > 2) return false;
            if (l.size() <= 1) ++ends;
        }
        return dual_edge_count() == face_count() - 1 && (face_count() == 1 || ends == 2);
    }
    bool internally_triangulated() const {
        return std::all_of(inner_faces.begin(), inner_faces.end(), [](const auto& f) { return f.size() == 3; });
    }
    /// Faces along the dual path, starting from `first` (an end of the path).
    std::vector<int> dual_path(int first) const {
        std::vector<int> p{first};
        int prev = -1;
        while (true) {
            int cur = p.back(), nxt = -1;
            for (int g : dual[cur])
                if (g != prev) nxt = g;
            if (nxt < 0) break;
            prev = cur;
            p.push_back(nxt);
        }
        return p;
    }
    /// The two ends of the dual path (equal if one face).
    std::pair<int, int> dual_ends() const {
        std::vector<int> ends;
        for (int f = 0; f < face_count(); ++f)
            if (dual[f].size() <= 1) ends.push_back(f);
        if (ends.size() == 1) return {ends[0], ends[0]};
        return {ends.front(), ends.back()};
    }
    bool face_has_vertex(int f, int v) const {
        return std::find(inner_faces[f].begin(), inner_faces[f].end(), v) != inner_faces[f].end();
    }
    std::vector<VertexName> outer_cycle_names() const {
        std::vector<VertexName> r;
        for (int v : outer_cycle) r.push_back(dag.name(v));
        return r;
    }
};

namespace detail {

/// Hamiltonian outer cycle of a biconnected graph on local ids 0..n-1 by
/// degree-2 peeling; nullopt plus a reason if the graph is not outerplanar.
inline std::optional<std::vector<int>> peel_outer_cycle(int n, const std::vector<std::pair<int, int>>& edges,
                                                        std::string& why) {
    if (n <= 2) {
        std::vector<int> c;
        for (int i = 0; i < n; ++i) c.push_back(i);
        return c;
    }
    if (static_cast<int>(edges.size()) > 2 * n - 3) {
        why = "too many edges for an outerplanar graph (" + std::to_string(edges.size()) + " > 2n-3)";
        return std::nullopt;
    }
    std::vector<std::set<int>> adj(n);
    for (auto [a, b] : edges) { adj[a].insert(b); adj[b].insert(a); }
    std::set<int> deg2;
    for (int v = 0; v < n; ++v) if (adj[v].size() == 2) deg2.insert(v);
    std::vector<char> alive(n, 1);
    struct Rec { int v, a, b; };
    std::vector<Rec> recs;
    int left = n;
    while (left > 3) {
        if (deg2.empty()) {
            why = "no degree-2 vertex remains (K4 or K2,3 minor)";
            return std::nullopt;
        }
        int v = *deg2.begin();
        deg2.erase(deg2.begin());
        int a = *adj[v].begin(), b = *adj[v].rbegin();
        adj[a].erase(v);
        adj[b].erase(v);
        adj[a].insert(b);
        adj[b].insert(a);
        adj[v].clear();
        alive[v] = 0;
        --left;
        for (int x : {a, b}) {
            if (adj[x].size() == 2) deg2.insert(x);
            else deg2.erase(x);
        }
        recs.push_back({v, a, b});
    }
    std::vector<int> rest;
    for (int v = 0; v < n; ++v) if (alive[v]) rest.push_back(v);
    for (int i = 0; i < 3; ++i)
        if (!adj[rest[i]].count(rest[(i + 1) % 3])) {
            why = "reduced graph is not a triangle";
            return std::nullopt;
        }
    std::vector<int> nx(n, -1), pv(n, -1);
    for (int i = 0; i < 3; ++i) {
        nx[rest[i]] = rest[(i + 1) % 3];
        pv[rest[(i + 1) % 3]] = rest[i];
    }
    for (auto it = recs.rbegin(); it != recs.rend(); ++it) {
        int a = it->a, b = it->b, v = it->v;
        if (nx[b] == a) std::swap(a, b);
        if (nx[a] != b) {
            why = "peeled vertex " + std::to_string(v) + " cannot be reinserted";
            return std::nullopt;
        }
        nx[a] = v; pv[v] = a; nx[v] = b; pv[b] = v;
    }
    std::vector<int> cyc{0};
    for (int x = nx[0]; x != 0; x = nx[x]) cyc.push_back(x);
    // canonical direction: from the smallest id toward its smaller neighbour
    if (cyc.back() < cyc[1]) std::reverse(cyc.begin() + 1, cyc.end());

    std::vector<int> pos(n);
    for (int i = 0; i < n; ++i) pos[cyc[i]] = i;
    std::set<std::pair<int, int>> real;
    for (auto [a, b] : edges) real.insert({std::min(a, b), std::max(a, b)});
    for (int i = 0; i < n; ++i) {
        int a = cyc[i], b = cyc[(i + 1) % n];
        if (!real.count({std::min(a, b), std::max(a, b)})) {
            why = "outer cycle needs a missing edge; graph is not biconnected";
            return std::nullopt;
        }
    }
    std::vector<std::pair<int, int>> chords;
    for (auto [a, b] : real) {
        int d = std::abs(pos[a] - pos[b]);
        if (d != 1 && d != n - 1) chords.push_back({std::min(pos[a], pos[b]), std::max(pos[a], pos[b])});
    }
    for (std::size_t i = 0; i < chords.size(); ++i)
        for (std::size_t j = i + 1; j < chords.size(); ++j)
            if (spans_cross(chords[i].first, chords[i].second, chords[j].first, chords[j].second)) {
                why = "chords cross";
                return std::nullopt;
            }
    return cyc;
}

/// Inner faces of a polygon (cycle of local ids) with non-crossing chords.
inline std::vector<std::vector<int>> polygon_faces(const std::vector<int>& cyc,
                                                   const std::vector<std::pair<int, int>>& edges) {
    const int n = static_cast<int>(cyc.size());
    if (n < 3) return {};
    int maxid = *std::max_element(cyc.begin(), cyc.end());
    std::vector<int> pos(maxid + 1, -1);
    for (int i = 0; i < n; ++i) pos[cyc[i]] = i;
    std::vector<std::vector<int>> nb(maxid + 1);
    for (auto [a, b] : edges) { nb[a].push_back(b); nb[b].push_back(a); }
    auto rel = [&](int from, int to) { return ((pos[to] - pos[from]) % n + n) % n; };
    std::set<std::pair<int, int>> used;
    std::vector<std::vector<int>> faces;
    auto trace = [&](int u, int x) {
        if (used.count({u, x})) return;
        std::vector<int> f;
        int a = u, b = x;
        while (!used.count({a, b})) {
            used.insert({a, b});
            f.push_back(a);
            int ru = rel(b, a), best = -1, bestr = -1;
            for (int y : nb[b]) {
                int r = rel(b, y);
                if (r < ru && r > bestr) { bestr = r; best = y; }
            }
            a = b;
            b = best;
        }
        faces.push_back(f);
    };
    for (int i = 0; i < n; ++i) trace(cyc[i], cyc[(i + 1) % n]);
    for (auto [a, b] : edges) {
        int r = rel(a, b);
        if (r != 1 && r != n - 1) {
            trace(a, b);
            trace(b, a);
        }
    }
    return faces;
}

} // namespace detail

/// Recovers the outerplanar embedding (outer cycle, inner faces, weak dual).
/// Throws NotOuterplanar with a description of the obstruction.
inline OuterEmbedding recover_outer_embedding(const Dag& d) {
    OuterEmbedding oe;
    oe.dag = d;
    const int n = d.vertex_count();
    oe.arc_faces.assign(d.edge_count(), {});
    if (n == 0) return oe;
    if (n == 1) {
        oe.outer_cycle = {0};
        return oe;
    }
    BcTree bc = build_bc_tree(d);
    oe.biconnected = bc.block_count() == 1;

    std::vector<std::vector<int>> block_cycle(bc.block_count());
    for (int b = 0; b < bc.block_count(); ++b) {
        const auto& vs = bc.block_vertices[b];
        std::map<int, int> loc;
        for (std::size_t i = 0; i < vs.size(); ++i) loc[vs[i]] = static_cast<int>(i);
        std::vector<std::pair<int, int>> es;
        for (int e : bc.blocks[b]) es.push_back({loc[d.arc(e).tail], loc[d.arc(e).head]});
        std::string why;
        auto cyc = detail::peel_outer_cycle(static_cast<int>(vs.size()), es, why);
        if (!cyc) fail(Errc::not_outerplanar, why);
        for (int& x : *cyc) x = vs[x];
        block_cycle[b] = *cyc;
        std::vector<std::pair<int, int>> ges;
        for (int e : bc.blocks[b]) ges.push_back({d.arc(e).tail, d.arc(e).head});
        for (auto& f : detail::polygon_faces(block_cycle[b], ges)) oe.inner_faces.push_back(f);
    }
    if (oe.biconnected) {
        oe.outer_cycle = block_cycle[0];
    } else {
        // DFS over the block tree from the root block, entering each block at its attachment vertex
        std::vector<char> seen_b(bc.block_count(), 0), seen_v(n, 0);
        auto visit = [&](auto&& self, int b, int entry) -> void {
            seen_b[b] = 1;
            auto cyc = block_cycle[b];
            std::rotate(cyc.begin(), std::find(cyc.begin(), cyc.end(), entry), cyc.end());
            for (int v : cyc) {
                if (!seen_v[v]) { seen_v[v] = 1; oe.outer_cycle.push_back(v); }
                for (int c : bc.blocks_of[v])
                    if (!seen_b[c]) self(self, c, v);
            }
        };
        visit(visit, 0, block_cycle[0].front());
    }

    oe.face_arcs.assign(oe.face_count(), {});
    for (int f = 0; f < oe.face_count(); ++f) {
        const auto& fc = oe.inner_faces[f];
        for (std::size_t i = 0; i < fc.size(); ++i) {
            int e = d.edge_between(fc[i], fc[(i + 1) % fc.size()]);
            invariant(e >= 0, "face boundary uses a missing edge");
            oe.face_arcs[f].push_back(e);
            oe.arc_faces[e].push_back(f);
        }
    }
    oe.dual.assign(oe.face_count(), {});
    for (int e = 0; e < d.edge_count(); ++e)
        if (oe.arc_faces[e].size() == 2) {
            int a = oe.arc_faces[e][0], b = oe.arc_faces[e][1];
            oe.dual[a].push_back(b);
            oe.dual[b].push_back(a);
        }
    for (auto& l : oe.dual) std::sort(l.begin(), l.end());
    return oe;
}

inline bool is_outerplanar(const Dag& d) {
    try {
        recover_outer_embedding(d);
        return true;
    } catch (const Error& e) {
        if (e.code() == Errc::not_outerplanar) return false;
        throw;
    }
}

} // namespace ube
