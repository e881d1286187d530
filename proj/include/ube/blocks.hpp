#pragma once

#include <algorithm>
#include <array>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bctree.hpp"
#include "fan.hpp"
#include "outerpath.hpp"
#include "outerplanar.hpp"

namespace ube {

/// An embedding together with the pages used by each block (BC-tree block id).
struct PageSeparatedEmbedding {
    BookEmbedding embedding;
    std::map<int, std::set<int>> block_pages;
    int mapping_fallbacks = 0; // children whose preferred page set conflicted
};

/// A supergraph produced by augmentation, with its recovered embedding.
struct Augmented {
    Dag dag;
    OuterEmbedding embedding;
    std::vector<EdgeName> added_edges;
    std::vector<VertexName> added_vertices;
};

// ---------------------------------------------------------------------------
// Biconnected st-outerplanar graphs

namespace detail {

inline OuterEmbedding require_biconnected_st(const Dag& g) {
    if (g.vertex_count() < 3) fail(Errc::not_biconnected, "fewer than three vertices");
    OuterEmbedding oe = recover_outer_embedding(g);
    if (!oe.biconnected) fail(Errc::not_biconnected, "graph has a cut vertex");
    if (!g.is_st_dag()) fail(Errc::multi_source_sink, "graph has several sources or sinks");
    return oe;
}

} // namespace detail

/// Adds, in every inner face, chords from the face source to the other face vertices.
inline Augmented triangulate_st_outerplanar(const Dag& g) {
    OuterEmbedding oe = detail::require_biconnected_st(g);
    Augmented r;
    std::vector<EdgeName> es = g.edge_names();
    for (const auto& f : oe.inner_faces) {
        const int k = static_cast<int>(f.size());
        int src = -1, nsrc = 0;
        for (int i = 0; i < k; ++i) {
            int a = f[(i + k - 1) % k], v = f[i], b = f[(i + 1) % k];
            if (g.has_arc(v, a) && g.has_arc(v, b)) { src = v; ++nsrc; }
        }
        if (nsrc != 1) fail(Errc::multi_source_sink, "inner face without a unique source");
        for (int v : f)
            if (v != src && !g.adjacent(src, v)) r.added_edges.push_back({g.name(src), g.name(v)});
    }
    es.insert(es.end(), r.added_edges.begin(), r.added_edges.end());
    r.dag = Dag::build(g.names(), es);
    r.embedding = recover_outer_embedding(r.dag);
    return r;
}

namespace detail {

/// Inserts one-sided components one by one. A component's spine order is
/// kept contiguous in some gap between its attach endpoints, so its own edges
/// never cross each other; each edge then takes the attach edge's page when
/// uncrossed there, else the lowest uncrossed page up to `max_pages`.
inline std::optional<BookEmbedding> insert_one_sided_fitted(BookEmbedding b,
                                                            const std::vector<std::pair<Dag, EdgeName>>& comps,
                                                            int max_pages) {
    for (const auto& [h, uv] : comps) {
        BookEmbedding one = embed_one_sided(h, uv.first, uv.second);
        const Order mid(one.order.begin() + 1, one.order.end() - 1);
        const int home = b.page(uv);
        auto pos = positions(b.order);
        bool done = false;
        for (int gap = pos.at(uv.first) + 1; gap <= pos.at(uv.second) && !done; ++gap) {
            BookEmbedding trial = b;
            trial.order = concat({Order(b.order.begin(), b.order.begin() + gap), mid, Order(b.order.begin() + gap, b.order.end())});
            auto tp = positions(trial.order);
            bool ok = true;
            for (const auto& x : h.edge_names()) {
                if (x == uv) continue;
                std::set<int> bad;
                for (const auto& [y, p] : trial.pages)
                    if (spans_cross(tp.at(x.first), tp.at(x.second), tp.at(y.first), tp.at(y.second))) bad.insert(p);
                int pick = bad.count(home) ? 0 : home;
                for (int p = 1; p <= max_pages && !pick; ++p)
                    if (!bad.count(p)) pick = p;
                if (!pick) { ok = false; break; }
                trial.pages[x] = pick;
            }
            if (ok) { b = std::move(trial); done = true; }
        }
        if (!done) return std::nullopt;
    }
    b.recount();
    return b;
}

/// Embeds T from the st-outerpath spanned by `path` plus the components hanging off it.
inline std::optional<BookEmbedding> embed_along_dual_path(const Dag& T, const OuterEmbedding& oe,
                                                          const std::vector<int>& path) {
    std::set<int> on_path(path.begin(), path.end());
    Dag P = faces_subgraph(oe, path);
    if (!P.is_st_dag()) return std::nullopt;

    // one-sided components across each outer edge of P that is inner in T
    OuterEmbedding poe = recover_outer_embedding(P);
    std::vector<std::pair<Dag, EdgeName>> comps;
    for (int pe = 0; pe < P.edge_count(); ++pe) {
        if (!poe.is_outer_arc(pe)) continue;
        EdgeName uv = P.edge_name(pe);
        int e = T.arc_index(T.index(uv.first), T.index(uv.second));
        if (!oe.is_inner_arc(e)) continue;
        int start = on_path.count(oe.arc_faces[e][0]) ? oe.arc_faces[e][1] : oe.arc_faces[e][0];
        std::vector<int> comp{start};
        std::set<int> seen{start};
        for (std::size_t i = 0; i < comp.size(); ++i)
            for (int g2 : oe.dual[comp[i]])
                if (!on_path.count(g2) && seen.insert(g2).second) comp.push_back(g2);
        comps.push_back({faces_subgraph(oe, comp), uv});
    }

    for (int pe = 0; pe < P.edge_count(); ++pe) {
        if (!poe.is_outer_arc(pe)) continue;
        BookEmbedding b;
        try {
            b = embed_st_outerpath(P, P.edge_name(pe));
        } catch (const Error& err) {
            if (err.code() != Errc::ineligible_edge && err.code() != Errc::edge_is_st) throw;
            continue;
        }
        auto placed = insert_one_sided_fitted(b, comps, 4);
        if (placed && validate(T, *placed, 4).valid()) return placed;
    }
    return std::nullopt;
}

} // namespace detail

/// Four-page embedding: a primary st-outerpath through the dual plus one-sided
/// components hanging off its outer edges.
inline BookEmbedding embed_biconnected_st_outerplanar(const Dag& g) {
    Augmented aug = triangulate_st_outerplanar(g);
    const Dag& T = aug.dag;
    const OuterEmbedding& oe = aug.embedding;
    const int s = T.sources()[0], t = T.sinks()[0];

    std::vector<int> sfaces, tfaces;
    for (int f = 0; f < oe.face_count(); ++f) {
        if (oe.face_has_vertex(f, s)) sfaces.push_back(f);
        if (oe.face_has_vertex(f, t)) tfaces.push_back(f);
    }
    invariant(!sfaces.empty() && !tfaces.empty(), "source or sink lies on no inner face");
    // dual paths from each face at s, nearest faces at t first
    for (int f1 : sfaces) {
        std::vector<int> parent(oe.face_count(), -2), bfs{f1};
        parent[f1] = -1;
        for (std::size_t i = 0; i < bfs.size(); ++i)
            for (int g2 : oe.dual[bfs[i]])
                if (parent[g2] == -2) { parent[g2] = bfs[i]; bfs.push_back(g2); }
        for (int fh : bfs) {
            if (!oe.face_has_vertex(fh, t)) continue;
            std::vector<int> path;
            for (int f = fh; f >= 0; f = parent[f]) path.push_back(f);
            std::reverse(path.begin(), path.end());
            if (auto b = detail::embed_along_dual_path(T, oe, path)) return restrict_to(*b, g);
        }
    }
    fail(Errc::internal_invariant, "no outer edge of the st-outerpath yields a four-page embedding");
}

// ---------------------------------------------------------------------------
// Cycles and cacti

enum class AnchorEnd { first, last };

/// Two-page embedding of a DAG whose underlying graph is a cycle, with the
/// anchor (a source for `first`, a sink for `last`) at the requested end.
inline BookEmbedding embed_cycle_dag(const Dag& c, const VertexName& anchor, AnchorEnd end,
                                     std::array<int, 2> pg = {1, 2}) {
    const int n = c.vertex_count();
    if (n < 3 || c.edge_count() != n || !recover_outer_embedding(c).biconnected)
        fail(Errc::precondition_violated, "underlying graph is not a cycle");
    const int a = c.index(anchor);
    const bool first = end == AnchorEnd::first;
    if (first ? !c.is_source(a) : !c.is_sink(a))
        fail(Errc::anchor_not_source_or_sink, anchor + (first ? " is not a source" : " is not a sink"));
    std::vector<int> nb = c.neighbors(a);
    std::sort(nb.begin(), nb.end());
    const int w = nb[0];
    // walk the path a = p0, p1, ..., w avoiding the edge a-w
    std::vector<int> walk{a, nb[1]};
    while (walk.back() != w) {
        int cur = walk.back(), prev = walk[walk.size() - 2];
        for (int x : c.neighbors(cur))
            if (x != prev) { walk.push_back(x); break; }
    }
    // each next vertex goes right beside its predecessor, on the side its arc demands
    std::vector<int> order{a};
    for (std::size_t i = 1; i < walk.size(); ++i) {
        int u = walk[i - 1], v = walk[i];
        bool after = first ? c.has_arc(u, v) : c.has_arc(v, u);
        auto it = std::find(order.begin(), order.end(), u);
        order.insert(after ? it + 1 : it, v);
    }
    if (!first) std::reverse(order.begin(), order.end());
    BookEmbedding b;
    for (int v : order) b.order.push_back(c.name(v));
    const int sw = c.edge_between(a, w);
    for (int e = 0; e < c.edge_count(); ++e) b.pages[c.edge_name(e)] = e == sw ? pg[1] : pg[0];
    b.recount();
    return b;
}

namespace detail {

inline BcTree require_cactus(const Dag& g) {
    BcTree t = build_bc_tree(g);
    for (int b = 0; b < t.block_count(); ++b)
        if (!t.trivial(b) && t.blocks[b].size() != t.block_vertices[b].size())
            fail(Errc::not_cactus, "a block is neither an edge nor a cycle");
    if (!is_outerplanar(g)) fail(Errc::not_outerplanar, "cactus is not outerplanar");
    return t;
}

inline VertexName fresh_name(const Dag& g, const std::set<VertexName>& taken, int& counter) {
    while (true) {
        VertexName v = "_w" + std::to_string(++counter);
        if (!g.contains(v) && !taken.count(v)) return v;
    }
}

} // namespace detail

/// Replaces every bridge uv by a triangle u->w->v plus uv, with w fresh.
inline Augmented augment_cactus(const Dag& g) {
    BcTree t = detail::require_cactus(g);
    Augmented r;
    std::vector<EdgeName> es = g.edge_names();
    std::set<VertexName> taken;
    int counter = 0;
    for (int b = 0; b < t.block_count(); ++b) {
        if (!t.trivial(b)) continue;
        EdgeName uv = g.edge_name(t.blocks[b][0]);
        VertexName w = detail::fresh_name(g, taken, counter);
        taken.insert(w);
        r.added_vertices.push_back(w);
        r.added_edges.push_back({uv.first, w});
        r.added_edges.push_back({w, uv.second});
    }
    es.insert(es.end(), r.added_edges.begin(), r.added_edges.end());
    std::vector<VertexName> vs = g.names();
    vs.insert(vs.end(), r.added_vertices.begin(), r.added_vertices.end());
    r.dag = Dag::build(vs, es);
    r.embedding = recover_outer_embedding(r.dag);
    return r;
}

// ---------------------------------------------------------------------------
// BC-tree induction shared by the block-wise embedders

namespace detail {

enum class Role { source, sink, internal };

inline Role role_in(const Dag& blk, const VertexName& c) {
    int v = blk.index(c);
    if (blk.is_source(v)) return Role::source;
    if (blk.is_sink(v)) return Role::sink;
    return Role::internal;
}

struct BlockScheme {
    std::vector<std::vector<int>> page_sets;  // candidate homes; index 0 is the root's
    int limit;                                // page budget before overflow
    bool internal_inside;                     // internal children nearest to the cut vertex
    // embeds a block; anchor is the parent cut vertex and its role, absent for the root
    std::function<BookEmbedding(const Dag&, const std::optional<std::pair<VertexName, Role>>&)> embed;
    // home set for the k-th internal child given the parent's home; nullopt means no preference
    std::function<std::optional<int>(int parent_home, int k)> internal_home;
};

/// Injective map from local pages to global pages avoiding `forbidden`,
/// preferring `pref` in order, then any page up to a growing budget.
inline std::map<int, int> map_pages(const std::vector<int>& local, const std::map<int, std::set<int>>& forbidden,
                                    const std::vector<int>& pref, int limit) {
    for (int cap = limit;; cap += 2) {
        std::vector<int> cand = pref;
        for (int p = 1; p <= cap; ++p)
            if (std::find(cand.begin(), cand.end(), p) == cand.end()) cand.push_back(p);
        std::map<int, int> m;
        std::set<int> used;
        std::function<bool(std::size_t)> go = [&](std::size_t i) {
            if (i == local.size()) return true;
            const auto& bad = forbidden.at(local[i]);
            for (int p : cand) {
                if (used.count(p) || bad.count(p)) continue;
                m[local[i]] = p;
                used.insert(p);
                if (go(i + 1)) return true;
                used.erase(p);
            }
            return false;
        };
        if (go(0)) return m;
    }
}

inline PageSeparatedEmbedding embed_by_bc_tree(const Dag& g, const BcTree& t, const BlockScheme& sch) {
    PageSeparatedEmbedding out;
    BookEmbedding& b = out.embedding;
    if (g.vertex_count() == 0) return out;
    if (t.block_count() == 0) {
        b.order = {g.name(0)};
        return out;
    }
    std::vector<int> home(t.block_count(), -1);

    // places a block's local pages onto global pages, preferring its home set
    auto place = [&](const Dag& blk, const BookEmbedding& local, int h) {
        auto pos = positions(b.order);
        std::set<int> lp;
        for (const auto& [e, p] : local.pages) lp.insert(p);
        std::vector<int> lpv(lp.begin(), lp.end());
        std::map<int, std::set<int>> forbidden;
        for (int p : lpv) forbidden[p];
        for (const auto& [e, p] : local.pages) {
            int a1 = pos.at(e.first), b1 = pos.at(e.second);
            for (const auto& [x, q] : b.pages)
                if (spans_cross(a1, b1, pos.at(x.first), pos.at(x.second))) forbidden[p].insert(q);
        }
        std::vector<int> pref = sch.page_sets[h];
        std::map<int, int> m;
        bool direct = lpv.size() <= pref.size();
        for (std::size_t i = 0; direct && i < lpv.size(); ++i) {
            if (forbidden[lpv[i]].count(pref[i])) direct = false;
            m[lpv[i]] = pref[i];
        }
        if (!direct) {
            ++out.mapping_fallbacks;
            m = map_pages(lpv, forbidden, pref, sch.limit);
        }
        for (const auto& e : blk.edge_names()) b.pages[e] = m.at(local.page(e));
    };

    int root = t.blocks_of[0].front();
    for (int x : t.blocks_of[0]) root = std::min(root, x);
    Dag rb = t.block_dag(g, root);
    BookEmbedding r0 = sch.embed(rb, std::nullopt);
    b.order = r0.order;
    home[root] = 0;
    place(rb, r0, 0);

    // top-down over the BC-tree; cut vertices of a block in name order
    std::deque<int> q{root};
    std::vector<char> done_cut(g.vertex_count(), 0);
    while (!q.empty()) {
        int mu = q.front();
        q.pop_front();
        Dag mud = t.block_dag(g, mu);
        for (int c : t.block_vertices[mu]) {
            if (!t.is_cut(c) || done_cut[c]) continue;
            done_cut[c] = 1;
            const VertexName& cn = g.name(c);
            const bool parent_internal = role_in(mud, cn) == Role::internal;
            std::vector<int> sinks, sources, internals;
            for (int nu : t.blocks_of[c]) {
                if (nu == mu) continue;
                Role r = role_in(t.block_dag(g, nu), cn);
                (r == Role::sink ? sinks : r == Role::source ? sources : internals).push_back(nu);
            }
            if (internals.size() + (parent_internal ? 1 : 0) > 2)
                fail(Errc::bimodality_violation, cn + " is internal to more than two blocks");

            std::map<int, BookEmbedding> emb;
            std::map<int, Dag> dags;
            for (int nu : t.blocks_of[c]) {
                if (nu == mu) continue;
                dags[nu] = t.block_dag(g, nu);
                emb[nu] = sch.embed(dags[nu], std::make_pair(cn, role_in(dags[nu], cn)));
            }
            auto side = [&](int nu, bool before) {
                auto sp = split_at(emb[nu].order, cn);
                return before ? sp.prefix : sp.suffix;
            };
            auto [pre, post] = split_at(b.order, cn);
            std::vector<Order> parts{pre};
            auto push_internal_before = [&] {
                for (auto it = internals.rbegin(); it != internals.rend(); ++it) parts.push_back(side(*it, true));
            };
            auto push_internal_after = [&] {
                for (int nu : internals) parts.push_back(side(nu, false));
            };
            if (!sch.internal_inside) push_internal_before();
            for (int nu : sinks) parts.push_back(side(nu, true));
            if (sch.internal_inside) push_internal_before();
            parts.push_back({cn});
            if (sch.internal_inside) push_internal_after();
            for (int nu : sources) parts.push_back(side(nu, false));
            if (!sch.internal_inside) push_internal_after();
            parts.push_back(post);
            b.order = concat(parts);

            for (int nu : sinks) home[nu] = home[mu];
            for (int nu : sources) home[nu] = home[mu];
            for (std::size_t k = 0; k < internals.size(); ++k) {
                auto h = sch.internal_home(home[mu], static_cast<int>(k));
                home[internals[k]] = h ? *h : home[mu];
            }
            for (int nu : internals) place(dags[nu], emb[nu], home[nu]);
            for (int nu : sinks) place(dags[nu], emb[nu], home[nu]);
            for (int nu : sources) place(dags[nu], emb[nu], home[nu]);
            for (int nu : t.blocks_of[c])
                if (nu != mu) q.push_back(nu);
        }
    }
    b.recount();
    return out;
}

inline void fill_block_pages(PageSeparatedEmbedding& pse, const Dag& g, const BcTree& t) {
    pse.block_pages.clear();
    for (int blk = 0; blk < t.block_count(); ++blk) {
        auto& s = pse.block_pages[blk];
        for (int e : t.blocks[blk]) s.insert(pse.embedding.page(g.edge_name(e)));
    }
}

} // namespace detail

/// Eight-page embedding of a connected upward outerplanar graph whose blocks
/// are st-DAGs; every block keeps to at most four pages.
inline PageSeparatedEmbedding embed_st_blocks(const Dag& g) {
    BcTree t = build_bc_tree(g);
    for (int blk = 0; blk < t.block_count(); ++blk)
        if (!t.block_dag(g, blk).is_st_dag()) fail(Errc::block_not_st_dag, "block " + std::to_string(blk) + " is not an st-DAG");
    detail::BlockScheme sch;
    sch.page_sets = {{1, 2, 3, 4}, {5, 6, 7, 8}};
    sch.limit = 8;
    sch.internal_inside = false;
    sch.embed = [](const Dag& blk, const std::optional<std::pair<VertexName, detail::Role>>&) {
        if (blk.edge_count() == 1) {
            BookEmbedding e;
            e.order = {blk.name(blk.arc(0).tail), blk.name(blk.arc(0).head)};
            e.pages[blk.edge_name(0)] = 1;
            e.recount();
            return e;
        }
        return embed_biconnected_st_outerplanar(blk);
    };
    sch.internal_home = [](int parent, int k) -> std::optional<int> {
        if (k == 0) return 1 - parent;
        return std::nullopt;
    };
    PageSeparatedEmbedding r = detail::embed_by_bc_tree(g, t, sch);
    detail::fill_block_pages(r, g, t);
    return r;
}

/// Six-page embedding of an upward outerplanar cactus; every block keeps to at most two pages.
inline PageSeparatedEmbedding embed_cactus(const Dag& g) {
    BcTree t0 = detail::require_cactus(g);
    if (auto rep = check_bimodality_at_cuts(g, t0); !rep.ok)
        fail(Errc::bimodality_violation, rep.violations.front() + " is internal to more than two blocks");
    Augmented aug = augment_cactus(g);
    BcTree t = aug.dag.vertex_count() > 0 ? build_bc_tree(aug.dag) : BcTree{};
    detail::BlockScheme sch;
    sch.page_sets = {{1, 2}, {3, 4}, {5, 6}};
    sch.limit = 6;
    sch.internal_inside = true;
    sch.embed = [](const Dag& blk, const std::optional<std::pair<VertexName, detail::Role>>& at) {
        if (at && at->second == detail::Role::sink) return embed_cycle_dag(blk, at->first, AnchorEnd::last);
        if (at && at->second == detail::Role::source) return embed_cycle_dag(blk, at->first, AnchorEnd::first);
        return embed_cycle_dag(blk, blk.name(blk.sources()[0]), AnchorEnd::first);
    };
    sch.internal_home = [](int parent, int k) -> std::optional<int> {
        std::vector<int> others;
        for (int h = 0; h < 3; ++h)
            if (h != parent) others.push_back(h);
        return others[k];
    };
    PageSeparatedEmbedding full = detail::embed_by_bc_tree(aug.dag, t, sch);
    PageSeparatedEmbedding r;
    r.embedding = restrict_to(full.embedding, g);
    r.mapping_fallbacks = full.mapping_fallbacks;
    detail::fill_block_pages(r, g, t0);
    return r;
}

} // namespace ube
