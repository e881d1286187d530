#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bctree.hpp"
#include "fan.hpp"
#include "outerplanar.hpp"
#include "rng.hpp"
#include "upward.hpp"

namespace ube {

enum class Family {
    one_sided,
    st_fan,
    primary_outerpath,
    st_outerpath,
    upward_outerpath,
    biconnected_st_outerplanar,
    st_blocks,
    cactus,
    random_dag,
    cycle,
};

inline const std::vector<std::pair<Family, std::string>>& family_names() {
    static const std::vector<std::pair<Family, std::string>> v{
        {Family::one_sided, "one_sided"},
        {Family::st_fan, "st_fan"},
        {Family::primary_outerpath, "primary_outerpath"},
        {Family::st_outerpath, "st_outerpath"},
        {Family::upward_outerpath, "upward_outerpath"},
        {Family::biconnected_st_outerplanar, "biconnected_st_outerplanar"},
        {Family::st_blocks, "st_blocks"},
        {Family::cactus, "cactus"},
        {Family::random_dag, "random_dag"},
        {Family::cycle, "cycle"},
    };
    return v;
}

inline std::string family_name(Family f) {
    for (const auto& [g, s] : family_names())
        if (g == f) return s;
    return "?";
}

inline Family parse_family(const std::string& s) {
    for (const auto& [g, n] : family_names())
        if (n == s) return g;
    fail(Errc::parse_error, "unknown family " + s);
}

struct GenSpec {
    Family family = Family::st_outerpath;
    int n = 10;
    std::uint64_t seed = 1;
    std::map<std::string, int> extras; // e.g. "chord_pct", "edge_pct", "trivial_pct"
    int extra(const std::string& k, int dflt) const {
        auto it = extras.find(k);
        return it == extras.end() ? dflt : it->second;
    }
};

/// Structure recorded while building, independent of recognition.
struct Certificate {
    std::vector<VertexName> outer_cycle;            // biconnected families
    int inner_faces = 0;                            // faces created
    std::vector<std::vector<VertexName>> blocks;    // block vertex sets (block families)
    std::optional<VertexName> source, sink;         // st families
};

struct Generated {
    Dag dag;
    std::optional<OuterEmbedding> embedding;
    Certificate cert;
};

namespace detail {

inline std::string vname(int i) {
    std::string s = std::to_string(i);
    return "v" + std::string(s.size() < 3 ? 3 - s.size() : 0, '0') + s;
}

/// Graph under construction on integer ids.
struct Builder {
    int n = 0;
    std::vector<std::pair<int, int>> arcs;
    int add_vertex() { return n++; }
    void add(int a, int b) { arcs.push_back({a, b}); }
    bool has(int a, int b) const { return std::find(arcs.begin(), arcs.end(), std::pair{a, b}) != arcs.end(); }
};

/// Names vertices through a random permutation so that id order carries no structure.
inline Generated finish(const Builder& b, SplitMix64& rng, const std::vector<int>& cycle = {},
                        const std::vector<std::vector<int>>& blocks = {}, int faces = 0) {
    std::vector<int> perm(b.n);
    for (int i = 0; i < b.n; ++i) perm[i] = i;
    rng.shuffle(perm);
    std::vector<VertexName> names;
    for (int i = 0; i < b.n; ++i) names.push_back(vname(perm[i]));
    std::vector<EdgeName> es;
    for (auto [x, y] : b.arcs) es.push_back({names[x], names[y]});
    Generated g;
    g.dag = build_dag(names, es);
    for (int v : cycle) g.cert.outer_cycle.push_back(names[v]);
    for (const auto& bl : blocks) {
        std::vector<VertexName> vs;
        for (int v : bl) vs.push_back(names[v]);
        std::sort(vs.begin(), vs.end());
        g.cert.blocks.push_back(vs);
    }
    g.cert.inner_faces = faces;
    if (g.dag.is_st_dag()) {
        g.cert.source = g.dag.name(g.dag.sources()[0]);
        g.cert.sink = g.dag.name(g.dag.sinks()[0]);
    }
    if (g.dag.vertex_count() > 0 && g.dag.connected() && is_outerplanar(g.dag)) g.embedding = recover_outer_embedding(g.dag);
    return g;
}

inline void insert_after(std::vector<int>& cyc, int a, int b, int w) {
    // insert w between cyclically adjacent a and b
    const int n = static_cast<int>(cyc.size());
    for (int i = 0; i < n; ++i) {
        int x = cyc[i], y = cyc[(i + 1) % n];
        if ((x == a && y == b) || (x == b && y == a)) {
            cyc.insert(cyc.begin() + i + 1, w);
            return;
        }
    }
    invariant(false, "attach edge not on the outer cycle");
}

/// Random non-crossing forward chords inside the polygon ids[lo..hi].
inline void random_chords(Builder& b, const std::vector<int>& ids, int lo, int hi, int pct, SplitMix64& rng) {
    if (hi - lo < 2) return;
    int k = rng.uniform(lo + 1, hi - 1);
    if (k - lo >= 2 && rng.chance(pct)) b.add(ids[lo], ids[k]);
    if (hi - k >= 2 && rng.chance(pct)) b.add(ids[k], ids[hi]);
    random_chords(b, ids, lo, k, pct, rng);
    random_chords(b, ids, k, hi, pct, rng);
}

struct StState {
    Builder b;
    std::vector<int> cycle;
    int source = 0, sink = 0;
};

/// Grows an st-outerpath triangle by triangle on a free edge of the last face.
inline StState grow_st_outerpath(int n, SplitMix64& rng, bool allow_new_source, int* faces) {
    StState st;
    int s = st.b.add_vertex(), a = st.b.add_vertex(), t = st.b.add_vertex();
    st.b.add(s, a);
    st.b.add(a, t);
    st.b.add(s, t);
    st.cycle = {s, a, t};
    st.source = s;
    st.sink = t;
    std::vector<std::pair<int, int>> free{{s, a}, {a, t}, {s, t}};
    *faces = 1;
    while (st.b.n < n) {
        auto [p, q] = free[rng.below(free.size())];
        int w = st.b.add_vertex();
        std::vector<int> opts{0};
        if (allow_new_source && p == st.source) opts.push_back(1);
        if (q == st.sink) opts.push_back(2);
        int o = opts[rng.below(opts.size())];
        if (o == 0) { st.b.add(p, w); st.b.add(w, q); }
        if (o == 1) { st.b.add(w, p); st.b.add(w, q); st.source = w; }
        if (o == 2) { st.b.add(p, w); st.b.add(q, w); st.sink = w; }
        insert_after(st.cycle, p, q, w);
        free = {o == 1 ? std::pair{w, p} : std::pair{p, w}, o == 2 ? std::pair{q, w} : std::pair{w, q}};
        ++*faces;
    }
    return st;
}

inline bool acyclic_with(const Builder& b) {
    std::vector<std::vector<int>> out(b.n);
    std::vector<int> indeg(b.n, 0);
    for (auto [x, y] : b.arcs) { out[x].push_back(y); ++indeg[y]; }
    std::vector<int> q;
    for (int v = 0; v < b.n; ++v) if (!indeg[v]) q.push_back(v);
    int seen = 0;
    while (!q.empty()) {
        int v = q.back();
        q.pop_back();
        ++seen;
        for (int w : out[v]) if (--indeg[w] == 0) q.push_back(w);
    }
    return seen == b.n;
}

inline bool upward_ok(const Builder& b) {
    std::vector<VertexName> names;
    for (int i = 0; i < b.n; ++i) names.push_back(vname(i));
    std::vector<EdgeName> es;
    for (auto [x, y] : b.arcs) es.push_back({names[x], names[y]});
    return is_upward_outerplanar_biconnected(build_dag(names, es));
}

inline std::optional<StState> grow_upward_outerpath(int n, SplitMix64& rng, int* faces) {
    StState st;
    int a = st.b.add_vertex(), b = st.b.add_vertex(), c = st.b.add_vertex();
    st.b.add(a, b);
    st.b.add(b, c);
    st.b.add(a, c);
    st.cycle = {a, b, c};
    std::vector<std::pair<int, int>> free{{a, b}, {b, c}, {a, c}};
    *faces = 1;
    while (st.b.n < n) {
        rng.shuffle(free);
        bool placed = false;
        for (auto [p, q] : free) {
            std::vector<int> orient{0, 1, 2, 3};
            rng.shuffle(orient);
            for (int o : orient) {
                Builder tr = st.b;
                int w = tr.add_vertex();
                if (o & 1) tr.add(p, w); else tr.add(w, p);
                if (o & 2) tr.add(w, q); else tr.add(q, w);
                if (!acyclic_with(tr)) continue;
                if (!upward_ok(tr)) continue;
                st.b = tr;
                insert_after(st.cycle, p, q, w);
                free = {{p, w}, {w, q}};
                placed = true;
                break;
            }
            if (placed) break;
        }
        if (!placed) return std::nullopt;
        ++*faces;
    }
    return st;
}

/// Biconnected st-outerplanar graph grown by ears on arbitrary outer edges.
inline StState grow_biconnected_st(int n, SplitMix64& rng, int max_ear, int* faces) {
    StState st;
    int s = st.b.add_vertex(), a = st.b.add_vertex(), t = st.b.add_vertex();
    st.b.add(s, a);
    st.b.add(a, t);
    st.b.add(s, t);
    st.cycle = {s, a, t};
    st.source = s;
    st.sink = t;
    *faces = 1;
    while (st.b.n < n) {
        const int len = std::min(rng.uniform(1, max_ear), n - st.b.n);
        const int m = static_cast<int>(st.cycle.size());
        int i = static_cast<int>(rng.below(m));
        int x = st.cycle[i], y = st.cycle[(i + 1) % m];
        int p = st.b.has(x, y) ? x : y, q = p == x ? y : x;
        std::vector<int> opts{0};
        if (p == st.source) opts.push_back(1);
        if (q == st.sink) opts.push_back(2);
        int o = opts[rng.below(opts.size())];
        std::vector<int> chain;
        for (int k = 0; k < len; ++k) chain.push_back(st.b.add_vertex());
        for (int k = 0; k + 1 < len; ++k) st.b.add(chain[k], chain[k + 1]);
        if (o == 0) { st.b.add(p, chain.front()); st.b.add(chain.back(), q); }
        if (o == 1) { st.b.add(chain.front(), p); st.b.add(chain.back(), q); st.source = chain.front(); }
        if (o == 2) { st.b.add(p, chain.front()); st.b.add(q, chain.back()); st.sink = chain.back(); }
        // place chain between p and q on the cycle
        int after = p, before = q;
        for (int w : chain) {
            insert_after(st.cycle, after, before, w);
            after = w;
        }
        ++*faces;
    }
    return st;
}

inline std::vector<int> polygon(int n) {
    std::vector<int> c(n);
    for (int i = 0; i < n; ++i) c[i] = i;
    return c;
}

/// Acyclic orientation of a cycle on `len` vertices with a random shape.
inline void random_cycle_arcs(Builder& b, const std::vector<int>& cyc, SplitMix64& rng) {
    const int n = static_cast<int>(cyc.size());
    while (true) {
        std::vector<int> dir(n);
        for (int i = 0; i < n; ++i) dir[i] = static_cast<int>(rng.below(2));
        if (std::all_of(dir.begin(), dir.end(), [&](int d) { return d == dir[0]; })) continue;
        for (int i = 0; i < n; ++i) {
            int x = cyc[i], y = cyc[(i + 1) % n];
            if (dir[i]) b.add(x, y); else b.add(y, x);
        }
        return;
    }
}

} // namespace detail

/// Deterministic random member of a family.
inline Generated generate(const GenSpec& spec) {
    SplitMix64 rng(spec.seed * 0x2545f4914f6cdd1dULL + static_cast<std::uint64_t>(spec.family) * 7919 + static_cast<std::uint64_t>(spec.n));
    const int n = spec.n;
    auto need = [&](int lo) {
        if (n < lo) fail(Errc::infeasible_spec, family_name(spec.family) + " needs n >= " + std::to_string(lo));
    };
    switch (spec.family) {
    case Family::one_sided: {
        need(2);
        detail::Builder b;
        auto ids = detail::polygon(n);
        b.n = n;
        for (int i = 0; i + 1 < n; ++i) b.add(i, i + 1);
        if (n > 2) b.add(0, n - 1);
        detail::random_chords(b, ids, 0, n - 1, spec.extra("chord_pct", 70), rng);
        int faces = static_cast<int>(b.arcs.size()) - n + 1;
        return detail::finish(b, rng, n > 2 ? ids : std::vector<int>{}, {}, faces);
    }
    case Family::st_fan: {
        need(3);
        detail::Builder b;
        b.n = n;
        int j = rng.uniform(1, n - 1);
        for (int i = 1; i < n; ++i) b.add(0, i);
        for (int i = 1; i + 1 < n; ++i) {
            if (i + 1 <= j) b.add(i, i + 1); else b.add(i + 1, i);
        }
        return detail::finish(b, rng, detail::polygon(n), {}, n - 2);
    }
    case Family::primary_outerpath:
    case Family::st_outerpath: {
        need(3);
        int faces = 0;
        auto st = detail::grow_st_outerpath(n, rng, spec.family == Family::st_outerpath, &faces);
        return detail::finish(st.b, rng, st.cycle, {}, faces);
    }
    case Family::upward_outerpath: {
        need(3);
        for (int attempt = 0; attempt < 50; ++attempt) {
            int faces = 0;
            auto st = detail::grow_upward_outerpath(n, rng, &faces);
            if (st) return detail::finish(st->b, rng, st->cycle, {}, faces);
        }
        fail(Errc::infeasible_spec, "upward outerpath growth kept failing");
    }
    case Family::biconnected_st_outerplanar: {
        need(3);
        int faces = 0;
        auto st = detail::grow_biconnected_st(n, rng, spec.extra("max_ear", 3), &faces);
        return detail::finish(st.b, rng, st.cycle, {}, faces);
    }
    case Family::cycle: {
        need(3);
        detail::Builder b;
        b.n = n;
        detail::random_cycle_arcs(b, detail::polygon(n), rng);
        return detail::finish(b, rng, detail::polygon(n), {}, 1);
    }
    case Family::st_blocks:
    case Family::cactus: {
        need(1);
        const bool cactus = spec.family == Family::cactus;
        detail::Builder b;
        b.add_vertex();
        std::vector<std::vector<int>> blocks;
        std::vector<int> internal_count(1, 0);
        int faces = 0;
        const int trivial_pct = spec.extra("trivial_pct", 25);
        while (b.n < n) {
            int c = static_cast<int>(rng.below(b.n));
            int room = n - b.n;
            int size = (room == 1 || rng.chance(trivial_pct)) ? 2 : rng.uniform(3, std::min(room + 1, cactus ? 6 : 7));
            detail::Builder blk;
            std::vector<std::pair<int, int>> arcs;
            if (size == 2) {
                blk.n = 2;
                blk.add(0, 1);
            } else if (cactus) {
                blk.n = size;
                detail::random_cycle_arcs(blk, detail::polygon(size), rng);
            } else {
                int f = 0;
                SplitMix64 sub = rng.split();
                blk = detail::grow_biconnected_st(size, sub, 2, &f).b;
                faces += f;
            }
            if (cactus && size > 2) ++faces;
            // choose the vertex of the new block glued onto c
            std::vector<int> in(blk.n, 0), out(blk.n, 0);
            for (auto [x, y] : blk.arcs) { ++out[x]; ++in[y]; }
            std::vector<int> cand;
            for (int v = 0; v < blk.n; ++v) {
                bool internal = in[v] && out[v];
                if (!internal || internal_count[c] < 2) cand.push_back(v);
            }
            int anchor = cand[rng.below(cand.size())];
            std::vector<int> map(blk.n);
            std::vector<int> members;
            for (int v = 0; v < blk.n; ++v) {
                if (v == anchor) {
                    map[v] = c;
                } else {
                    map[v] = b.add_vertex();
                    internal_count.push_back(0);
                }
                members.push_back(map[v]);
            }
            for (auto [x, y] : blk.arcs) b.add(map[x], map[y]);
            if (in[anchor] && out[anchor]) ++internal_count[c];
            for (int v = 0; v < blk.n; ++v)
                if (v != anchor && in[v] && out[v]) ++internal_count[map[v]];
            blocks.push_back(members);
        }
        return detail::finish(b, rng, {}, blocks, faces);
    }
    case Family::random_dag: {
        need(1);
        detail::Builder b;
        b.n = n;
        int pct = spec.extra("edge_pct", 30);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (rng.chance(pct)) b.add(i, j);
        return detail::finish(b, rng);
    }
    }
    fail(Errc::infeasible_spec, "unsupported family");
}

// ---------------------------------------------------------------------------
// Exhaustive small corpus

/// Whether a DAG belongs to a family (recognition-based, used by the enumerator).
inline bool in_family(const Dag& g, Family f) {
    if (f == Family::random_dag) return true;
    if (g.vertex_count() == 0 || !g.connected()) return false;
    auto oe_or = [&]() -> std::optional<OuterEmbedding> {
        try {
            return recover_outer_embedding(g);
        } catch (const Error&) {
            return std::nullopt;
        }
    };
    auto oe = oe_or();
    if (!oe) return false;
    switch (f) {
    case Family::one_sided: {
        if (!g.is_st_dag()) return false;
        auto e = EdgeName{g.name(g.sources()[0]), g.name(g.sinks()[0])};
        return g.has_edge(e) && (g.vertex_count() == 2 || (oe->biconnected && is_outer_edge_of(*oe, e)));
    }
    case Family::st_fan:
        try {
            fan_shape(g);
            return true;
        } catch (const Error&) {
            return false;
        }
    case Family::st_outerpath:
    case Family::primary_outerpath:
        if (!g.is_st_dag() || !oe->is_outerpath() || !oe->internally_triangulated()) return false;
        return f == Family::st_outerpath || is_primary(*oe, g.sources()[0]);
    case Family::upward_outerpath:
        return oe->is_outerpath() && oe->internally_triangulated() && upward_outerplanar_biconnected(*oe).ok;
    case Family::biconnected_st_outerplanar:
        return g.is_st_dag() && oe->biconnected && g.vertex_count() >= 3;
    case Family::cycle:
        return oe->biconnected && g.edge_count() == g.vertex_count() && g.vertex_count() >= 3;
    case Family::cactus: {
        BcTree t = build_bc_tree(g);
        for (int b = 0; b < t.block_count(); ++b)
            if (!t.trivial(b) && t.blocks[b].size() != t.block_vertices[b].size()) return false;
        return check_bimodality_at_cuts(g, t).ok;
    }
    case Family::st_blocks: {
        BcTree t = build_bc_tree(g);
        for (int b = 0; b < t.block_count(); ++b)
            if (!t.block_dag(g, b).is_st_dag()) return false;
        return check_bimodality_at_cuts(g, t).ok;
    }
    case Family::random_dag:
        return true;
    }
    return false;
}

/// All members of a biconnected family on n polygon vertices, one per
/// isomorphism class (dihedral canonical form), in a deterministic order.
inline std::vector<Dag> enumerate_small(Family f, int n) {
    if (n > 8) fail(Errc::too_large, "exhaustive enumeration supports n <= 8");
    if (f == Family::st_blocks || f == Family::cactus || f == Family::random_dag)
        fail(Errc::infeasible_spec, "enumeration covers biconnected families only");
    if (n < 3) fail(Errc::infeasible_spec, "biconnected families need n >= 3");
    const bool triangulated = f == Family::st_fan || f == Family::st_outerpath || f == Family::primary_outerpath ||
                              f == Family::upward_outerpath;
    std::vector<std::pair<int, int>> diag;
    for (int i = 0; i < n; ++i)
        for (int j = i + 2; j < n; ++j)
            if (!(i == 0 && j == n - 1)) diag.push_back({i, j});
    std::vector<std::vector<std::pair<int, int>>> chord_sets;
    std::vector<std::pair<int, int>> cur;
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (k == diag.size()) {
            if (f == Family::cycle && !cur.empty()) return;
            if (triangulated && static_cast<int>(cur.size()) != n - 3) return;
            chord_sets.push_back(cur);
            return;
        }
        rec(k + 1);
        for (auto c : cur)
            if (spans_cross(c.first, c.second, diag[k].first, diag[k].second)) return;
        cur.push_back(diag[k]);
        rec(k + 1);
        cur.pop_back();
    };
    rec(0);

    std::set<std::vector<std::pair<int, int>>> seen;
    std::vector<Dag> out;
    std::vector<VertexName> names;
    for (int i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
    for (const auto& chords : chord_sets) {
        std::vector<std::pair<int, int>> und;
        for (int i = 0; i < n; ++i) und.push_back({i, (i + 1) % n});
        und.insert(und.end(), chords.begin(), chords.end());
        const int m = static_cast<int>(und.size());
        for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
            std::vector<std::pair<int, int>> arcs;
            for (int e = 0; e < m; ++e) {
                auto [a, b] = und[e];
                arcs.push_back((mask >> e) & 1 ? std::pair{b, a} : std::pair{a, b});
            }
            detail::Builder bl;
            bl.n = n;
            bl.arcs = arcs;
            if (!detail::acyclic_with(bl)) continue;
            std::vector<std::pair<int, int>> best;
            for (int r = 0; r < n; ++r)
                for (int refl = 0; refl < 2; ++refl) {
                    std::vector<std::pair<int, int>> t;
                    for (auto [a, b] : arcs) {
                        int x = refl ? (r - a + n) % n : (r + a) % n, y = refl ? (r - b + n) % n : (r + b) % n;
                        t.push_back({x, y});
                    }
                    std::sort(t.begin(), t.end());
                    if (best.empty() || t < best) best = t;
                }
            if (seen.count(best)) continue;
            std::vector<EdgeName> es;
            for (auto [a, b] : best) es.push_back({names[a], names[b]});
            Dag d = build_dag(names, es);
            if (!in_family(d, f)) continue;
            seen.insert(best);
            out.push_back(d);
        }
    }
    return out;
}

} // namespace ube
