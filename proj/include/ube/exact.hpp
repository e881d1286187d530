#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "dag.hpp"
#include "layout.hpp"

namespace ube {

struct ExactResult {
    std::optional<int> ubt; // nullopt: more than kmax pages needed
    std::optional<BookEmbedding> witness;
    std::uint64_t nodes_explored = 0;
    bool too_large = false; // above the recommended size; the search still ran
};

struct OrderPages {
    int pages = 0;
    std::map<EdgeName, int> assignment;
};

inline constexpr int exact_size_threshold = 16;

/// Fewest pages for a fixed topological order: exact coloring of the edge
/// crossing graph, highest conflict degree first.
inline OrderPages min_pages_for_order(const Dag& g, const Order& order) {
    if (static_cast<int>(order.size()) != g.vertex_count()) fail(Errc::domain_mismatch, "order size differs from vertex count");
    auto pos = positions(order);
    if (static_cast<int>(pos.size()) != g.vertex_count()) fail(Errc::domain_mismatch, "order repeats a vertex");
    for (const auto& v : g.names())
        if (!pos.count(v)) fail(Errc::domain_mismatch, "order misses " + v);
    const int m = g.edge_count();
    std::vector<std::pair<int, int>> span(m);
    for (int e = 0; e < m; ++e) {
        auto [t, h] = g.edge_name(e);
        if (pos[t] > pos[h]) fail(Errc::not_topological, edge_key(t, h) + " points backward");
        span[e] = {pos[t], pos[h]};
    }
    std::vector<std::vector<int>> adj(m);
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b)
            if (spans_cross(span[a].first, span[a].second, span[b].first, span[b].second)) {
                adj[a].push_back(b);
                adj[b].push_back(a);
            }
    std::vector<int> idx(m);
    for (int e = 0; e < m; ++e) idx[e] = e;
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return adj[a].size() > adj[b].size(); });
    std::vector<int> color(m, 0);
    OrderPages r;
    if (m == 0) return r;
    for (int k = 1;; ++k) {
        std::fill(color.begin(), color.end(), 0);
        std::function<bool(int, int)> go = [&](int i, int used) {
            if (i == m) return true;
            int e = idx[i];
            for (int c = 1; c <= std::min(k, used + 1); ++c) {
                bool ok = true;
                for (int f : adj[e])
                    if (color[f] == c) { ok = false; break; }
                if (!ok) continue;
                color[e] = c;
                if (go(i + 1, std::max(used, c))) return true;
                color[e] = 0;
            }
            return false;
        };
        if (go(0, 0)) {
            r.pages = k;
            for (int e = 0; e < m; ++e) r.assignment[g.edge_name(e)] = color[e];
            return r;
        }
    }
}

namespace detail {

/// Depth-first search over topological orders; the incoming edges of each
/// newly placed vertex take pages immediately.
class UbeSearch {
public:
    UbeSearch(const Dag& g, int k, std::optional<std::uint64_t> max_nodes)
        : g_(g), n_(g.vertex_count()), k_(k), max_nodes_(max_nodes) {
        pos_.assign(n_, -1);
        missing_.assign(n_, 0);
        for (int v = 0; v < n_; ++v) missing_[v] = g.in_degree(v);
        span_.assign(k_ + 1, std::vector<int>(n_ + 1, 0));
        page_.assign(g.edge_count(), 0);
        in_arcs_.assign(n_, {});
        for (int e = 0; e < g.edge_count(); ++e) in_arcs_[g.arc(e).head].push_back(e);
        // twins: same in- and out-neighbourhoods; placed in id order
        std::map<std::pair<std::vector<int>, std::vector<int>>, int> cls;
        twin_prev_.assign(n_, -1);
        for (int v = 0; v < n_; ++v) {
            auto [it, fresh] = cls.emplace(std::make_pair(g.in(v), g.out(v)), v);
            if (!fresh) {
                twin_prev_[v] = it->second;
                it->second = v;
            }
        }
    }

    bool run() { return place(0, 0); }
    std::uint64_t nodes() const { return nodes_; }

    BookEmbedding witness() const {
        BookEmbedding b;
        b.order.resize(n_);
        for (int v = 0; v < n_; ++v) b.order[pos_[v]] = g_.name(v);
        for (int e = 0; e < g_.edge_count(); ++e) b.pages[g_.edge_name(e)] = page_[e];
        b.recount();
        return b;
    }

private:
    // Future feasibility depends only on the placed set, the page count in
    // use, and the blocked pages at each placed vertex with unplaced heads.
    std::string state_key(int used) const {
        std::string key(static_cast<std::size_t>(n_), '\0');
        key.append(reinterpret_cast<const char*>(&used), sizeof used);
        std::vector<int> open;
        for (int v = 0; v < n_; ++v) {
            if (pos_[v] < 0) continue;
            key[v] = 1;
            for (int w : g_.out(v))
                if (pos_[w] < 0) {
                    open.push_back(v);
                    break;
                }
        }
        std::sort(open.begin(), open.end(), [&](int a, int b) { return pos_[a] < pos_[b]; });
        for (int v : open) {
            key.append(reinterpret_cast<const char*>(&v), sizeof v);
            for (int p = 1; p <= k_; ++p) key.push_back(span_[p][pos_[v]] > 0 ? '1' : '0');
        }
        return key;
    }

    bool place(int depth, int used) {
        if (depth == n_) return true;
        std::string key = state_key(used);
        if (failed_.count(key)) return false;
        for (int v = 0; v < n_; ++v) {
            if (pos_[v] >= 0 || missing_[v] > 0) continue;
            if (twin_prev_[v] >= 0 && pos_[twin_prev_[v]] < 0) continue;
            if (++nodes_, max_nodes_ && nodes_ > *max_nodes_)
                fail(Errc::resource_limit, "exact search exceeded " + std::to_string(*max_nodes_) + " nodes");
            pos_[v] = depth;
            for (int w : g_.out(v)) --missing_[w];
            if (assign(v, in_arcs_[v], 0, used)) return true;
            for (int w : g_.out(v)) ++missing_[w];
            pos_[v] = -1;
        }
        if (failed_.size() < memo_cap) failed_.insert(std::move(key));
        return false;
    }

    bool assign(int v, const std::vector<int>& in, std::size_t i, int used) {
        const int y = pos_[v];
        if (i == in.size()) {
            // spans of sibling edges share the head, so they are applied together
            shift(in, y, +1);
            if (place(y + 1, used)) return true;
            shift(in, y, -1);
            return false;
        }
        const int e = in[i];
        const int x = pos_[g_.arc(e).tail];
        for (int p = 1; p <= std::min(k_, used + 1); ++p) {
            if (span_[p][x] > 0) continue;
            page_[e] = p;
            if (assign(v, in, i + 1, std::max(used, p))) return true;
        }
        page_[e] = 0;
        return false;
    }

    void shift(const std::vector<int>& in, int y, int d) {
        for (int e : in)
            for (int j = pos_[g_.arc(e).tail] + 1; j < y; ++j) span_[page_[e]][j] += d;
    }

    const Dag& g_;
    int n_, k_;
    std::optional<std::uint64_t> max_nodes_;
    std::uint64_t nodes_ = 0;
    std::vector<int> pos_, missing_, twin_prev_, page_;
    static constexpr std::size_t memo_cap = 4'000'000;
    std::unordered_set<std::string> failed_;
    std::vector<std::vector<int>> in_arcs_;
    std::vector<std::vector<int>> span_; // span_[p][i]: page-p edges strictly over position i
};

} // namespace detail

/// Smallest k <= kmax admitting a k-page UBE, with a witness.
inline ExactResult exact_ubt(const Dag& g, int kmax, std::optional<std::uint64_t> max_nodes = std::nullopt) {
    if (kmax < 1) fail(Errc::invalid_k, "kmax must be at least 1");
    ExactResult r;
    r.too_large = g.vertex_count() > exact_size_threshold;
    for (int k = g.edge_count() > 0 ? 1 : 0; k <= kmax; ++k) {
        std::optional<std::uint64_t> left;
        if (max_nodes) left = *max_nodes - std::min(*max_nodes, r.nodes_explored);
        detail::UbeSearch s(g, k, left);
        bool ok;
        try {
            ok = s.run();
        } catch (const Error&) {
            r.nodes_explored += s.nodes();
            throw;
        }
        r.nodes_explored += s.nodes();
        if (ok) {
            r.ubt = k;
            r.witness = s.witness();
            return r;
        }
    }
    return r;
}

/// Size of a minimum dominating set of the underlying undirected graph.
inline int domination_number(const Dag& g, int bound) {
    const int n = g.vertex_count();
    if (n == 0) return 0;
    std::vector<std::uint64_t> closed(n, 0);
    if (n > 64) fail(Errc::too_large, "domination search supports at most 64 vertices");
    for (int v = 0; v < n; ++v) {
        closed[v] |= std::uint64_t{1} << v;
        for (int w : g.neighbors(v)) closed[v] |= std::uint64_t{1} << w;
    }
    const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    std::function<bool(int, int, std::uint64_t)> go = [&](int from, int left, std::uint64_t dom) {
        if (dom == all) return true;
        if (left == 0) return false;
        for (int v = from; v < n; ++v)
            if (go(v + 1, left - 1, dom | closed[v])) return true;
        return false;
    };
    for (int s = 1; s <= std::min(bound, n); ++s)
        if (go(0, s, 0)) return s;
    fail(Errc::exceeds_bound, "domination number exceeds " + std::to_string(bound));
}

} // namespace ube
