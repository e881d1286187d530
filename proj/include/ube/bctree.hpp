#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dag.hpp"

namespace ube {

/// Block/cut-vertex decomposition of the underlying undirected graph.
struct BcTree {
    std::vector<std::vector<int>> blocks;         // arc ids, sorted
    std::vector<std::vector<int>> block_vertices; // vertex ids, sorted
    std::vector<int> cut_vertices;                // sorted
    std::vector<std::vector<int>> blocks_of;      // per vertex: blocks containing it
    std::optional<int> root;

    int block_count() const { return static_cast<int>(blocks.size()); }
    bool is_cut(int v) const { return blocks_of[v].size() > 1; }
    bool trivial(int b) const { return blocks[b].size() == 1; }
    /// Subgraph formed by one block.
    Dag block_dag(const Dag& d, int b) const { return d.arc_subgraph(blocks[b]); }
};

inline BcTree build_bc_tree(const Dag& d) {
    if (!d.connected()) fail(Errc::disconnected, "underlying graph is not connected");
    const int n = d.vertex_count();
    BcTree t;
    t.blocks_of.assign(n, {});
    if (n == 0) return t;

    // incident arcs per vertex
    std::vector<std::vector<std::pair<int, int>>> inc(n); // (neighbor, arc)
    for (int e = 0; e < d.edge_count(); ++e) {
        inc[d.arc(e).tail].push_back({d.arc(e).head, e});
        inc[d.arc(e).head].push_back({d.arc(e).tail, e});
    }
    for (auto& l : inc) std::sort(l.begin(), l.end());

    std::vector<int> disc(n, -1), low(n, 0);
    std::vector<int> estack;
    std::vector<std::vector<int>> raw;
    int timer = 0;
    struct Frame { int v, parent_arc; std::size_t i; };
    std::vector<Frame> st{{0, -1, 0}};
    disc[0] = low[0] = timer++;
    while (!st.empty()) {
        Frame& f = st.back();
        if (f.i < inc[f.v].size()) {
            auto [w, e] = inc[f.v][f.i++];
            if (e == f.parent_arc) continue;
            if (disc[w] < 0) {
                estack.push_back(e);
                disc[w] = low[w] = timer++;
                st.push_back({w, e, 0});
            } else if (disc[w] < disc[f.v]) {
                estack.push_back(e);
                low[f.v] = std::min(low[f.v], disc[w]);
            }
        } else {
            int v = f.v, pe = f.parent_arc;
            st.pop_back();
            if (st.empty()) break;
            int u = st.back().v;
            low[u] = std::min(low[u], low[v]);
            if (low[v] >= disc[u]) {
                std::vector<int> blk;
                while (true) {
                    int e = estack.back();
                    estack.pop_back();
                    blk.push_back(e);
                    if (e == pe) break;
                }
                std::sort(blk.begin(), blk.end());
                raw.push_back(std::move(blk));
            }
        }
    }

    std::vector<std::pair<std::vector<int>, std::vector<int>>> tmp;
    for (auto& blk : raw) {
        std::set<int> vs;
        for (int e : blk) { vs.insert(d.arc(e).tail); vs.insert(d.arc(e).head); }
        tmp.push_back({{vs.begin(), vs.end()}, blk});
    }
    std::sort(tmp.begin(), tmp.end());
    for (auto& [vs, blk] : tmp) {
        t.block_vertices.push_back(vs);
        t.blocks.push_back(blk);
    }
    for (int b = 0; b < t.block_count(); ++b)
        for (int v : t.block_vertices[b]) t.blocks_of[v].push_back(b);
    for (int v = 0; v < n; ++v)
        if (t.blocks_of[v].size() > 1) t.cut_vertices.push_back(v);
    if (!t.blocks.empty()) t.root = 0;
    return t;
}

struct BimodalityReport {
    bool ok = true;
    std::map<VertexName, int> internal_counts; // per cut vertex
    std::vector<VertexName> violations;
};

/// Counts, at every cut vertex, the blocks in which it is internal (has both
/// an incoming and an outgoing arc inside the block). More than two is a violation.
inline BimodalityReport check_bimodality_at_cuts(const Dag& d, const BcTree& t) {
    BimodalityReport r;
    for (int c : t.cut_vertices) {
        int cnt = 0;
        for (int b : t.blocks_of[c]) {
            bool in = false, out = false;
            for (int e : t.blocks[b]) {
                if (d.arc(e).head == c) in = true;
                if (d.arc(e).tail == c) out = true;
            }
            if (in && out) ++cnt;
        }
        r.internal_counts[d.name(c)] = cnt;
        if (cnt > 2) {
            r.ok = false;
            r.violations.push_back(d.name(c));
        }
    }
    return r;
}

} // namespace ube
