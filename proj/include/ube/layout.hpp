#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dag.hpp"

namespace ube {

/// A vertex ordering (spine order). Element 0 is leftmost.
using Order = std::vector<VertexName>;

/// Total vertex order plus a page (1-based) for every edge.
struct BookEmbedding {
    Order order;
    std::map<EdgeName, int> pages;
    int num_pages = 0;

    int page(const EdgeName& e) const {
        auto it = pages.find(e);
        return it == pages.end() ? 0 : it->second;
    }
    int max_page() const {
        int m = 0;
        for (const auto& [e, p] : pages) m = std::max(m, p);
        return m;
    }
    /// Number of distinct pages that carry at least one edge.
    int pages_used() const {
        std::set<int> s;
        for (const auto& [e, p] : pages) s.insert(p);
        return static_cast<int>(s.size());
    }
    void recount() { num_pages = max_page(); }
    bool operator==(const BookEmbedding&) const = default;
};

inline std::unordered_map<VertexName, int> positions(const Order& order) {
    std::unordered_map<VertexName, int> pos;
    pos.reserve(order.size() * 2);
    for (std::size_t i = 0; i < order.size(); ++i) pos.emplace(order[i], static_cast<int>(i));
    return pos;
}

// ---------------------------------------------------------------------------
// Ordering algebra

inline Order concat(const std::vector<Order>& parts) {
    Order r;
    std::set<VertexName> seen;
    for (const auto& p : parts)
        for (const auto& v : p) {
            if (!seen.insert(v).second) fail(Errc::overlapping_supports, v);
            r.push_back(v);
        }
    return r;
}

inline Order concat(const Order& a, const Order& b) { return concat(std::vector<Order>{a, b}); }

struct SplitOrder {
    Order prefix;
    Order suffix;
};

/// order = prefix ∘ ⟨u⟩ ∘ suffix
inline SplitOrder split_at(const Order& order, const VertexName& u) {
    auto it = std::find(order.begin(), order.end(), u);
    if (it == order.end()) fail(Errc::vertex_absent, u);
    return {Order(order.begin(), it), Order(it + 1, order.end())};
}

/// Merge of `pi` and `pi_prime` along the pair {u,v}: u,v must be consecutive
/// in pi and be the first and last vertex of pi_prime, and the supports may
/// intersect only in {u,v}. Returns pi_{u-} ∘ pi_prime ∘ pi_{v+}.
inline Order merge(const Order& pi, const Order& pi_prime) {
    if (pi_prime.size() < 2) fail(Errc::precondition_violated, "second ordering needs at least two vertices");
    const VertexName& u = pi_prime.front();
    const VertexName& v = pi_prime.back();
    auto pos = positions(pi);
    auto iu = pos.find(u), iv = pos.find(v);
    if (iu == pos.end() || iv == pos.end())
        fail(Errc::precondition_violated, "first/last vertex of second ordering missing from first ordering");
    if (iv->second != iu->second + 1)
        fail(Errc::precondition_violated, "u and v are not consecutive in the first ordering");
    for (std::size_t i = 1; i + 1 < pi_prime.size(); ++i)
        if (pos.count(pi_prime[i]))
            fail(Errc::precondition_violated, "supports intersect outside {u,v} at " + pi_prime[i]);
    Order r(pi.begin(), pi.begin() + iu->second);
    r.insert(r.end(), pi_prime.begin(), pi_prime.end());
    r.insert(r.end(), pi.begin() + iv->second + 1, pi.end());
    return r;
}

/// Replaces the consecutive pair u,v of `pi` by the whole of `inner`, which
/// must contain u before v and share no other vertex with `pi`. Generalises
/// merge to the case where u,v are not the extremes of `inner`.
inline Order splice(const Order& pi, const VertexName& u, const VertexName& v, const Order& inner) {
    auto pos = positions(pi);
    auto iu = pos.find(u), iv = pos.find(v);
    if (iu == pos.end() || iv == pos.end()) fail(Errc::precondition_violated, "splice pair missing");
    if (iv->second != iu->second + 1) fail(Errc::precondition_violated, "splice pair not consecutive: " + u + "," + v);
    auto ipos = positions(inner);
    if (!ipos.count(u) || !ipos.count(v) || ipos[u] > ipos[v])
        fail(Errc::precondition_violated, "inner ordering must contain u before v");
    for (const auto& x : inner)
        if (x != u && x != v && pos.count(x)) fail(Errc::precondition_violated, "supports intersect at " + x);
    Order r(pi.begin(), pi.begin() + iu->second);
    r.insert(r.end(), inner.begin(), inner.end());
    r.insert(r.end(), pi.begin() + iv->second + 1, pi.end());
    return r;
}

/// True iff every pair of `small` keeps its relative order in `big`.
inline bool extends(const Order& big, const Order& small) {
    auto pos = positions(big);
    int last = -1;
    for (const auto& v : small) {
        auto it = pos.find(v);
        if (it == pos.end() || it->second <= last) return false;
        last = it->second;
    }
    return true;
}

inline Order reversed(Order o) {
    std::reverse(o.begin(), o.end());
    return o;
}

// ---------------------------------------------------------------------------
// Validation

struct Crossing {
    EdgeName first;
    EdgeName second;
    int page = 0;
};

struct ValidationReport {
    bool topological_ok = true;
    std::vector<EdgeName> backward_edges;
    std::vector<Crossing> crossings;
    int pages_used = 0;
    int max_page = 0;
    std::map<int, int> per_page_edge_counts;
    bool within_page_limit = true;

    bool valid() const { return topological_ok && crossings.empty() && within_page_limit; }
};

/// Strict interleaving of two spans on the spine; shared endpoints never cross.
inline bool spans_cross(int a1, int b1, int a2, int b2) {
    if (a1 > b1) std::swap(a1, b1);
    if (a2 > b2) std::swap(a2, b2);
    return (a1 < a2 && a2 < b1 && b1 < b2) || (a2 < a1 && a1 < b2 && b2 < b1);
}

inline ValidationReport validate(const Dag& d, const BookEmbedding& b, std::optional<int> max_pages = std::nullopt) {
    if (static_cast<int>(b.order.size()) != d.vertex_count())
        fail(Errc::domain_mismatch, "order has " + std::to_string(b.order.size()) + " vertices, graph has " +
                                        std::to_string(d.vertex_count()));
    auto pos = positions(b.order);
    if (static_cast<int>(pos.size()) != d.vertex_count()) fail(Errc::domain_mismatch, "order repeats a vertex");
    for (const auto& v : d.names())
        if (!pos.count(v)) fail(Errc::domain_mismatch, "vertex " + v + " missing from order");
    if (static_cast<int>(b.pages.size()) != d.edge_count())
        fail(Errc::domain_mismatch, "page map has " + std::to_string(b.pages.size()) + " edges, graph has " +
                                        std::to_string(d.edge_count()));

    ValidationReport r;
    struct Span { int lo, hi, page; EdgeName e; };
    std::map<int, std::vector<Span>> by_page;
    for (const auto& [e, p] : b.pages) {
        if (!d.has_edge(e)) fail(Errc::domain_mismatch, "unknown edge " + edge_key(e));
        if (p < 1) fail(Errc::domain_mismatch, "page index must be >= 1 for " + edge_key(e));
        int pt = pos[e.first], ph = pos[e.second];
        if (pt >= ph) {
            r.topological_ok = false;
            r.backward_edges.push_back(e);
        }
        by_page[p].push_back({std::min(pt, ph), std::max(pt, ph), p, e});
        ++r.per_page_edge_counts[p];
        r.max_page = std::max(r.max_page, p);
    }
    r.pages_used = static_cast<int>(by_page.size());
    for (auto& [p, spans] : by_page) {
        std::sort(spans.begin(), spans.end(), [](const Span& x, const Span& y) { return x.lo < y.lo || (x.lo == y.lo && x.hi < y.hi); });
        for (std::size_t i = 0; i < spans.size(); ++i)
            for (std::size_t j = i + 1; j < spans.size() && spans[j].lo < spans[i].hi; ++j)
                if (spans[i].lo < spans[j].lo && spans[j].hi > spans[i].hi)
                    r.crossings.push_back({spans[i].e, spans[j].e, p});
    }
    if (max_pages && r.max_page > *max_pages) r.within_page_limit = false;
    return r;
}

struct ConsecutiveReport {
    bool ok = true;
    std::vector<std::string> reasons;
};

/// The three-clause uv-consecutive property: u,v adjacent on the spine, all
/// s-edges on one page, all t-edges on at most two pages.
inline ConsecutiveReport check_uv_consecutive(const Dag& d, const BookEmbedding& b, const EdgeName& uv,
                                              const VertexName& s, const VertexName& t) {
    ConsecutiveReport r;
    auto pos = positions(b.order);
    auto iu = pos.find(uv.first), iv = pos.find(uv.second);
    if (iu == pos.end() || iv == pos.end() || std::abs(iu->second - iv->second) != 1) {
        r.ok = false;
        r.reasons.push_back("(i) " + uv.first + " and " + uv.second + " are not consecutive");
    }
    std::set<int> sp, tp;
    for (const auto& e : d.edge_names()) {
        if (e.first == s || e.second == s) sp.insert(b.page(e));
        if (e.first == t || e.second == t) tp.insert(b.page(e));
    }
    if (sp.size() > 1) {
        r.ok = false;
        r.reasons.push_back("(ii) edges at " + s + " use " + std::to_string(sp.size()) + " pages");
    }
    if (tp.size() > 2) {
        r.ok = false;
        r.reasons.push_back("(iii) edges at " + t + " use " + std::to_string(tp.size()) + " pages");
    }
    return r;
}

/// Restricts an embedding to the vertices and edges of `d`.
inline BookEmbedding restrict_to(const BookEmbedding& b, const Dag& d) {
    BookEmbedding r;
    for (const auto& v : b.order)
        if (d.contains(v)) r.order.push_back(v);
    for (const auto& e : d.edge_names()) {
        auto it = b.pages.find(e);
        if (it == b.pages.end()) fail(Errc::internal_invariant, "no page for " + edge_key(e));
        r.pages.emplace(e, it->second);
    }
    r.recount();
    return r;
}

/// Relabels pages so that used pages become 1..p in increasing order.
inline BookEmbedding compact_pages(BookEmbedding b) {
    std::set<int> used;
    for (const auto& [e, p] : b.pages) used.insert(p);
    std::map<int, int> remap;
    int next = 1;
    for (int p : used) remap[p] = next++;
    for (auto& [e, p] : b.pages) p = remap[p];
    b.recount();
    return b;
}

} // namespace ube
