#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dag.hpp"
#include "exact.hpp"
#include "layout.hpp"

namespace ube {

/// Neighbourhood in the cover, in cover order; true marks an arc from the
/// cover vertex into the typed vertex.
using TypeSignature = std::vector<std::pair<VertexName, bool>>;

inline std::string type_string(const TypeSignature& t) {
    std::string s = "{";
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) s += ",";
        s += t[i].second ? t[i].first + ">" : "<" + t[i].first;
    }
    return s + "}";
}

struct CoverContext {
    std::vector<VertexName> cover; // c_1..c_tau in vertex-id order
    std::map<TypeSignature, std::vector<VertexName>> types;
    int tau() const { return static_cast<int>(cover.size()); }
};

struct Removal {
    VertexName vertex;
    TypeSignature type;
    VertexName representative;
};

struct KernelInstance {
    Dag reduced;
    std::vector<Removal> removed;
    int k = 0;
    Dag original;
    CoverContext context;
};

/// Minimum vertex cover by degree-one reduction and max-degree branching.
inline std::optional<CoverContext> vertex_cover(const Dag& g, int taumax) {
    if (taumax < 0) return std::nullopt;
    const int n = g.vertex_count();
    std::vector<char> taken(n, 0);
    std::vector<int> deg(n);
    for (int v = 0; v < n; ++v) deg[v] = g.degree(v);
    auto take = [&](int v) {
        taken[v] = 1;
        for (int w : g.neighbors(v))
            if (!taken[w]) --deg[w];
    };
    auto untake = [&](int v) {
        taken[v] = 0;
        for (int w : g.neighbors(v))
            if (!taken[w]) ++deg[w];
    };
    std::function<bool(int)> solve = [&](int budget) -> bool {
        int best = -1, leaf = -1;
        for (int v = 0; v < n; ++v) {
            if (taken[v] || deg[v] == 0) continue;
            if (best < 0 || deg[v] > deg[best]) best = v;
            if (deg[v] == 1 && leaf < 0) leaf = v;
        }
        if (best < 0) return true;
        if (budget == 0) return false;
        if (leaf >= 0) {
            int w = -1;
            for (int x : g.neighbors(leaf))
                if (!taken[x]) w = x;
            take(w);
            if (solve(budget - 1)) return true;
            untake(w);
            return false;
        }
        take(best);
        if (solve(budget - 1)) return true;
        untake(best);
        std::vector<int> nb;
        for (int w : g.neighbors(best))
            if (!taken[w]) nb.push_back(w);
        if (static_cast<int>(nb.size()) > budget) return false;
        for (int w : nb) take(w);
        if (solve(budget - static_cast<int>(nb.size()))) return true;
        for (auto it = nb.rbegin(); it != nb.rend(); ++it) untake(*it);
        return false;
    };
    for (int t = 0; t <= std::min(taumax, n); ++t) {
        if (!solve(t)) continue;
        CoverContext ctx;
        for (int v = 0; v < n; ++v)
            if (taken[v]) ctx.cover.push_back(g.name(v));
        return ctx;
    }
    return std::nullopt;
}

namespace detail {

inline void require_cover(const Dag& g, const CoverContext& ctx) {
    std::set<VertexName> c(ctx.cover.begin(), ctx.cover.end());
    for (const auto& v : ctx.cover)
        if (!g.contains(v)) fail(Errc::domain_mismatch, "cover vertex " + v + " not in graph");
    for (const auto& [t, h] : g.edge_names())
        if (!c.count(t) && !c.count(h)) fail(Errc::precondition_violated, "edge " + edge_key(t, h) + " is uncovered");
}

inline std::map<VertexName, int> cover_index(const CoverContext& ctx) {
    std::map<VertexName, int> idx;
    for (int i = 0; i < ctx.tau(); ++i) idx[ctx.cover[i]] = i + 1;
    return idx;
}

inline TypeSignature signature(const Dag& g, const CoverContext& ctx, const VertexName& v) {
    TypeSignature t;
    int x = g.index(v);
    for (const auto& c : ctx.cover) {
        int ci = g.index(c);
        if (g.has_arc(ci, x)) t.push_back({c, true});
        else if (g.has_arc(x, ci)) t.push_back({c, false});
    }
    return t;
}

inline EdgeName typed_edge(const VertexName& v, const std::pair<VertexName, bool>& s) {
    return s.second ? EdgeName{s.first, v} : EdgeName{v, s.first};
}

} // namespace detail

/// Partition of the non-cover vertices by signature.
inline CoverContext compute_types(const Dag& g, CoverContext ctx) {
    detail::require_cover(g, ctx);
    std::set<VertexName> c(ctx.cover.begin(), ctx.cover.end());
    ctx.types.clear();
    for (const auto& v : g.names())
        if (!c.count(v)) ctx.types[detail::signature(g, ctx, v)].push_back(v);
    return ctx;
}

/// Any topological order; page i holds the edges from c_i to non-cover
/// vertices and to earlier cover vertices.
inline BookEmbedding tau_page_embedding(const Dag& g, const CoverContext& ctx) {
    detail::require_cover(g, ctx);
    auto idx = detail::cover_index(ctx);
    BookEmbedding b;
    for (int v : g.topological_order()) b.order.push_back(g.name(v));
    for (const auto& [t, h] : g.edge_names()) {
        int it = idx.count(t) ? idx[t] : 0, ih = idx.count(h) ? idx[h] : 0;
        b.pages[{t, h}] = std::max(it, ih);
    }
    b.recount();
    return b;
}

/// 2 k^tau + 1, or nullopt once it passes 2^31.
inline std::optional<std::int64_t> class_cap(int k, int tau) {
    std::int64_t p = 1;
    for (int i = 0; i < tau; ++i) {
        p *= k;
        if (p > (std::int64_t{1} << 31)) return std::nullopt;
    }
    return 2 * p + 1;
}

/// Shrinks every type class above the cap to the cap, dropping largest ids first.
inline KernelInstance kernelize(const Dag& g, const CoverContext& ctx_in, int k) {
    CoverContext ctx = compute_types(g, ctx_in);
    if (k < 0) fail(Errc::invalid_k, "k must be non-negative");
    KernelInstance ki;
    ki.k = k;
    ki.original = g;
    auto cap = class_cap(k, ctx.tau());
    std::set<VertexName> keep(g.names().begin(), g.names().end());
    if (cap) {
        for (auto& [sig, members] : ctx.types) {
            while (static_cast<std::int64_t>(members.size()) > *cap) {
                ki.removed.push_back({members.back(), sig, members.front()});
                keep.erase(members.back());
                members.pop_back();
            }
        }
    }
    ki.reduced = g.induced(keep);
    ki.context = ctx;
    return ki;
}

/// Reinserts removed vertices next to a page-equivalent same-type vertex.
inline BookEmbedding lift_embedding(const KernelInstance& ki, const BookEmbedding& reduced) {
    BookEmbedding b = reduced;
    std::map<TypeSignature, std::vector<VertexName>> present = ki.context.types;
    for (const auto& r : ki.removed) {
        auto& m = present[r.type];
        m.erase(std::remove(m.begin(), m.end(), r.vertex), m.end());
    }
    for (auto it = ki.removed.rbegin(); it != ki.removed.rend(); ++it) {
        auto& members = present[it->type];
        std::map<std::vector<int>, std::vector<VertexName>> buckets;
        std::optional<VertexName> u1;
        for (const auto& u : members) {
            std::vector<int> pv;
            for (const auto& s : it->type) pv.push_back(b.page(detail::typed_edge(u, s)));
            auto& bucket = buckets[pv];
            bucket.push_back(u);
            if (bucket.size() == 3) {
                u1 = bucket.front();
                break;
            }
        }
        if (!u1)
            fail(Errc::no_page_equivalent_triple,
                 "no three page-equivalent vertices of type " + type_string(it->type) + " for " + it->vertex);
        auto at = std::find(b.order.begin(), b.order.end(), *u1);
        b.order.insert(at + 1, it->vertex);
        for (const auto& s : it->type) b.pages[detail::typed_edge(it->vertex, s)] = b.page(detail::typed_edge(*u1, s));
        members.insert(std::upper_bound(members.begin(), members.end(), it->vertex), it->vertex);
    }
    b.recount();
    return b;
}

struct FptResult {
    bool yes = false;
    std::optional<BookEmbedding> witness;
    int tau = 0;
    std::optional<int> kernel_vertices; // set when the kernel was built
    std::uint64_t nodes_explored = 0;
};

inline constexpr std::uint64_t default_fpt_node_budget = 50'000'000;

/// Decides whether at most k pages suffice.
inline FptResult fpt_decide(const Dag& g, int k, std::uint64_t node_budget = default_fpt_node_budget) {
    if (k < 0) fail(Errc::invalid_k, "k must be non-negative");
    FptResult r;
    if (auto small = vertex_cover(g, k)) {
        auto ctx = compute_types(g, *small);
        r.yes = true;
        r.tau = ctx.tau();
        r.witness = tau_page_embedding(g, ctx);
        return r;
    }
    auto ctx = compute_types(g, *vertex_cover(g, g.vertex_count()));
    r.tau = ctx.tau();
    if (k == 0) return r;
    auto ki = kernelize(g, ctx, k);
    r.kernel_vertices = ki.reduced.vertex_count();
    auto ex = exact_ubt(ki.reduced, k, node_budget);
    r.nodes_explored = ex.nodes_explored;
    if (!ex.ubt) return r;
    r.yes = true;
    r.witness = lift_embedding(ki, *ex.witness);
    if (!validate(g, *r.witness, k).valid()) fail(Errc::internal_invariant, "lifted embedding failed validation");
    return r;
}

} // namespace ube
