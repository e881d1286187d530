#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fan.hpp"

namespace ube {

inline EdgeName flip(const EdgeName& e) { return {e.second, e.first}; }

/// Four-page e-consecutive embedding of a primary st-outerpath, fan by fan.
/// e lies in the last fan, or in the first fan where both e and the first
/// shared edge can be kept consecutive.
inline BookEmbedding embed_primary_outerpath(const Dag& g, const FanDecomposition& fd, const EdgeName& e,
                                             bool sink_on_one_page = false) {
    const int k = fd.size();
    invariant(k > 0, "empty fan decomposition");
    const Fan& first = fd.fans.front();
    const Fan& last = fd.fans.back();
    OuterEmbedding oe = recover_outer_embedding(g);
    const bool in_last = last.g.has_edge(e) && e != EdgeName{last.s, last.t};
    const bool in_first = k > 1 && first.g.has_edge(e) && e != EdgeName{first.s, first.t};
    if (!is_outer_edge_of(oe, e) || (!in_last && !in_first))
        fail(Errc::ineligible_edge, edge_key(e) + " is not an outer edge of an extreme fan other than its st edge");
    auto any_outer = [](const Fan& F) {
        FanShape sh = fan_shape(F.g);
        return EdgeName{sh.s, sh.left.empty() ? sh.right.front() : sh.left.front()};
    };
    auto target = [&](int i) { return i + 1 < k ? fd.shared[i] : in_last ? e : any_outer(last); };
    std::optional<EdgeName> also;
    if (!in_last) also = e;

    BookEmbedding b;
    try {
        b = embed_st_fan(first.g, target(0), {1, 2}, sink_on_one_page, also);
    } catch (const Error& err) {
        if (err.code() != Errc::precondition_violated) throw;
        fail(Errc::ineligible_edge, err.what());
    }
    for (int i = 1; i < k; ++i) {
        const Fan& F = fd.fans[i];
        const EdgeName& prev = fd.shared[i - 1];
        if (prev == EdgeName{F.s, F.t}) {
            BookEmbedding h = embed_one_sided(F.g, F.s, F.t);
            b.order = merge(b.order, h.order);
            int p = b.page(prev);
            for (const auto& x : F.g.edge_names()) b.pages[x] = p;
        } else {
            const VertexName& tp = fd.fans[i - 1].t;
            invariant(prev == EdgeName{F.s, tp}, "shared edge is not s_k t_{k-1}");
            const auto n = b.order.size();
            invariant(n >= 2 && b.order[n - 2] == F.s && b.order[n - 1] == tp, "s_k and t_{k-1} are not the last two vertices");
            std::set<int> used;
            for (const auto& [x, p] : b.pages)
                if (x.first == tp || x.second == tp) used.insert(p);
            std::vector<int> fresh;
            for (int p = 1; p <= 4 && fresh.size() < 2; ++p)
                if (!used.count(p)) fresh.push_back(p);
            invariant(fresh.size() == 2, "sink of previous fan uses more than two pages");
            BookEmbedding h = embed_st_fan(F.g, target(i), {fresh[0], fresh[1]}, sink_on_one_page);
            b.order = concat(split_at(b.order, F.s).prefix, h.order);
            for (const auto& [x, p] : h.pages) b.pages[x] = p;
        }
    }
    b.recount();
    auto pos = positions(b.order);
    if (pos.at(e.second) != pos.at(e.first) + 1) fail(Errc::ineligible_edge, edge_key(e) + " is not kept consecutive");
    return b;
}

/// Inserts one-sided u_i v_i-outerplanar graphs, each on the page of its attach edge.
inline BookEmbedding insert_one_sided(BookEmbedding b, const std::vector<std::pair<Dag, EdgeName>>& components) {
    std::set<EdgeName> attach;
    for (const auto& [h, uv] : components) {
        if (!attach.insert(uv).second) fail(Errc::attach_edge_conflict, "two components attach at " + edge_key(uv));
        if (!b.pages.count(uv)) fail(Errc::precondition_violated, "attach edge " + edge_key(uv) + " not embedded");
        BookEmbedding one = embed_one_sided(h, uv.first, uv.second);
        auto pos = positions(b.order);
        for (std::size_t i = 1; i + 1 < one.order.size(); ++i)
            if (pos.count(one.order[i])) fail(Errc::precondition_violated, "component shares vertex " + one.order[i]);
        if (pos[uv.second] == pos[uv.first] + 1) {
            b.order = merge(b.order, one.order);
        } else {
            auto [pre, suf] = split_at(b.order, uv.first);
            Order mid(one.order.begin(), one.order.end() - 1);
            b.order = concat({pre, mid, suf});
        }
        int p = b.page(uv);
        for (const auto& x : h.edge_names()) b.pages[x] = p;
    }
    b.recount();
    return b;
}

struct AppendageSplit {
    Dag primary;
    std::optional<Dag> appendage; // one-sided uv-outerpath sharing only uv with `primary`
    EdgeName attach;
};

inline OuterEmbedding require_st_outerpath(const Dag& g) {
    if (!g.is_st_dag()) fail(Errc::not_st_outerpath, "graph has several sources or sinks");
    OuterEmbedding oe;
    try {
        oe = recover_outer_embedding(g);
    } catch (const Error& e) {
        fail(Errc::not_st_outerpath, e.what());
    }
    if (!oe.is_outerpath()) fail(Errc::not_st_outerpath, "weak dual is not a path");
    if (!oe.internally_triangulated()) fail(Errc::not_st_outerpath, "not internally triangulated");
    return oe;
}

/// Every way of splitting off the appendage at an outer edge of the source fan.
/// A primary graph yields a single split without appendage.
inline std::vector<AppendageSplit> appendage_splits(const Dag& g) {
    OuterEmbedding oe = require_st_outerpath(g);
    int s = g.sources()[0], t = g.sinks()[0];
    if (is_primary(oe, s)) return {{g, std::nullopt, {}}};
    auto path = oe.dual_path(oe.dual_ends().first);
    const int h = static_cast<int>(path.size());
    int a = -1, b = -1;
    for (int i = 0; i < h; ++i)
        if (oe.face_has_vertex(path[i], s)) {
            if (a < 0) a = i;
            b = i;
        }
    invariant(a > 0 && b < h - 1, "source fan touches an extreme face");
    struct Side { std::vector<int> part, rest; int sep; };
    std::vector<Side> sides;
    sides.push_back({{path.begin(), path.begin() + a}, {path.begin() + a, path.end()}, shared_arc(oe, path[a - 1], path[a])});
    sides.push_back({{path.begin() + b + 1, path.end()}, {path.begin(), path.begin() + b + 1}, shared_arc(oe, path[b], path[b + 1])});
    std::vector<AppendageSplit> r;
    for (const auto& sd : sides) {
        FaceSetInfo hi = face_set_info(oe, sd.part), ri = face_set_info(oe, sd.rest);
        const Arc& sep = g.arc(sd.sep);
        if (!hi.st || hi.source != sep.tail || hi.sink != sep.head) continue;
        if (!ri.st || ri.source != s || ri.sink != t) continue;
        r.push_back({g.arc_subgraph(ri.arcs), g.arc_subgraph(hi.arcs), g.edge_name(sd.sep)});
    }
    if (r.empty()) fail(Errc::internal_invariant, "no separation edge splits off a one-sided appendage");
    return r;
}

inline AppendageSplit split_appendage(const Dag& g) { return appendage_splits(g).front(); }

namespace detail {

inline std::optional<BookEmbedding> embed_st_outerpath_direct(const Dag& g, const EdgeName& e, bool sink_on_one_page) {
    for (const auto& sp : appendage_splits(g)) {
        if (sp.appendage && e == sp.attach) continue;
        if (!sp.primary.has_edge(e)) continue;
        FanDecomposition fd = fan_decomposition(sp.primary);
        BookEmbedding b;
        try {
            b = embed_primary_outerpath(sp.primary, fd, e, sink_on_one_page);
        } catch (const Error& err) {
            if (err.code() != Errc::ineligible_edge) throw;
            continue;
        }
        if (sp.appendage) b = insert_one_sided(b, {{*sp.appendage, sp.attach}});
        return b;
    }
    return std::nullopt;
}

inline bool is_e_consecutive(const Dag& g, const BookEmbedding& b, const EdgeName& e) {
    const VertexName s = g.name(g.sources()[0]), t = g.name(g.sinks()[0]);
    return validate(g, b, 4).valid() && check_uv_consecutive(g, b, e, s, t).ok;
}

} // namespace detail

/// Four-page e-consecutive embedding of an st-outerpath; e must lie in the
/// last fan of the primary part, or in the appendage / first fan (handled by
/// reversing every edge).
inline BookEmbedding embed_st_outerpath(const Dag& g, const EdgeName& e) {
    OuterEmbedding oe = require_st_outerpath(g);
    if (!g.has_edge(e)) fail(Errc::ineligible_edge, edge_key(e) + " is not an edge");
    const VertexName s = g.name(g.sources()[0]), t = g.name(g.sinks()[0]);
    if (is_outer_edge_of(oe, {s, t})) {
        if (e == EdgeName{s, t}) fail(Errc::edge_is_st, edge_key(e));
        if (!is_outer_edge_of(oe, e)) fail(Errc::ineligible_edge, edge_key(e) + " is not an outer edge");
        return embed_one_sided(g, s, t);
    }
    if (auto b = detail::embed_st_outerpath_direct(g, e, false); b && detail::is_e_consecutive(g, *b, e)) return *b;
    if (auto b = detail::embed_st_outerpath_direct(g.reversed(), flip(e), true)) {
        BookEmbedding r;
        r.order = reversed(b->order);
        for (const auto& [x, p] : b->pages) r.pages[flip(x)] = p;
        r.recount();
        if (detail::is_e_consecutive(g, r, e)) return r;
    }
    fail(Errc::ineligible_edge, edge_key(e) + " lies in neither extreme part of the outerpath");
}

/// Outer edges of g other than st for which embed_st_outerpath succeeds.
inline std::vector<EdgeName> eligible_edges(const Dag& g) {
    OuterEmbedding oe = require_st_outerpath(g);
    std::vector<EdgeName> r;
    for (int e = 0; e < g.edge_count(); ++e) {
        if (!oe.is_outer_arc(e)) continue;
        try {
            embed_st_outerpath(g, g.edge_name(e));
            r.push_back(g.edge_name(e));
        } catch (const Error& err) {
            if (err.code() != Errc::ineligible_edge && err.code() != Errc::edge_is_st) throw;
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// Outerpath decomposition

struct OuterpathPart {
    Dag g;
    VertexName s, t;
    std::vector<int> faces; // face ids of the decomposed graph, in dual order
    bool proper = false;    // not a single st-fan
};

struct Bundle {
    int first = 0, last = 0; // inclusive range of part indices
    bool vertex_shared = false;
    VertexName vertex;       // common vertex when vertex_shared
};

struct OuterpathDecomposition {
    std::vector<OuterpathPart> paths;
    std::vector<EdgeName> shared; // shared[i] joins paths[i] and paths[i+1]
    std::vector<Bundle> bundles;
    int repairs = 0;
    int size() const { return static_cast<int>(paths.size()); }
};

inline OuterEmbedding require_upward_outerpath(const Dag& g) {
    OuterEmbedding oe;
    try {
        oe = recover_outer_embedding(g);
    } catch (const Error& e) {
        fail(Errc::not_outerpath, e.what());
    }
    if (!oe.is_outerpath()) fail(Errc::not_outerpath, "weak dual is not a path");
    if (!oe.internally_triangulated()) fail(Errc::not_triangulated, "an inner face is not a triangle");
    return oe;
}

/// Dual path read from the extreme face with the lexicographically smaller vertex set.
inline std::vector<int> canonical_dual_path(const OuterEmbedding& oe) {
    auto [a, b] = oe.dual_ends();
    return oe.dual_path(vertex_ids_sorted(oe, a) <= vertex_ids_sorted(oe, b) ? a : b);
}

inline std::vector<std::string> check_outerpath_decomposition(const OuterEmbedding& oe, const OuterpathDecomposition& d) {
    std::vector<std::string> bad;
    const int m = d.size();
    std::vector<std::set<EdgeName>> es(m);
    for (int i = 0; i < m; ++i) {
        auto v = d.paths[i].g.edge_names();
        es[i].insert(v.begin(), v.end());
        if (!d.paths[i].g.is_st_dag()) bad.push_back("part " + std::to_string(i + 1) + " is not an st-outerpath");
    }
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            int c = 0;
            for (const auto& e : es[j]) c += es[i].count(e);
            if (j == i + 1 && (c != 1 || !es[i].count(d.shared[i])))
                bad.push_back("(ii) parts " + std::to_string(i + 1) + "," + std::to_string(j + 1) + " share " + std::to_string(c) + " edges");
            if (j > i + 1 && c) bad.push_back("(ii) parts " + std::to_string(i + 1) + "," + std::to_string(j + 1) + " share an edge");
        }
    std::set<EdgeName> all;
    for (const auto& s : es) all.insert(s.begin(), s.end());
    if (static_cast<int>(all.size()) != oe.dag.edge_count()) bad.push_back("(iii) parts do not cover the graph");
    for (int i = 0; i + 1 < m; ++i) {
        auto runs = greedy_fan_runs(oe, d.paths[i].faces);
        FaceSetInfo fi = face_set_info(oe, runs.back());
        if (fi.st && d.shared[i] == EdgeName{oe.dag.name(fi.source), oe.dag.name(fi.sink)})
            bad.push_back("(i) e_" + std::to_string(i + 1) + " is the st edge of the last fan of its part");
    }
    return bad;
}

/// Bundles: maximal runs of consecutive parts with a common vertex; consecutive bundles share one part.
inline std::vector<Bundle> compute_bundles(const std::vector<OuterpathPart>& paths) {
    std::vector<Bundle> r;
    const int m = static_cast<int>(paths.size());
    auto vset = [&](int i) { return std::set<VertexName>(paths[i].g.names().begin(), paths[i].g.names().end()); };
    int a = 0;
    while (a + 1 < m) {
        std::set<VertexName> common = vset(a), nxt = vset(a + 1), tmp;
        std::set_intersection(common.begin(), common.end(), nxt.begin(), nxt.end(), std::inserter(tmp, tmp.end()));
        common = tmp;
        int b = a + 1;
        while (b + 1 < m) {
            auto vs = vset(b + 1);
            std::set<VertexName> c2;
            std::set_intersection(common.begin(), common.end(), vs.begin(), vs.end(), std::inserter(c2, c2.end()));
            if (c2.empty()) break;
            common = c2;
            ++b;
        }
        Bundle bu{a, b, b - a + 1 >= 3, {}};
        if (bu.vertex_shared) bu.vertex = *common.begin();
        r.push_back(bu);
        a = b;
    }
    return r;
}

inline OuterpathDecomposition outerpath_decomposition(const Dag& g) {
    OuterEmbedding oe = require_upward_outerpath(g);
    auto path = canonical_dual_path(oe);
    std::vector<std::vector<int>> runs;
    std::vector<int> cur;
    for (int f : path) {
        cur.push_back(f);
        if (cur.size() > 1 && !face_set_info(oe, cur).st) {
            cur.pop_back();
            runs.push_back(cur);
            cur = {f};
        }
    }
    runs.push_back(cur);

    OuterpathDecomposition d;
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t j = 0; j + 1 < runs.size(); ++j) {
            auto fans = greedy_fan_runs(oe, runs[j]);
            FaceSetInfo fi = face_set_info(oe, fans.back());
            int ej = shared_arc(oe, runs[j].back(), runs[j + 1].front());
            if (ej != oe.dag.arc_index(fi.source, fi.sink)) continue;
            invariant(fans.size() >= 2, "repair would empty an outerpath");
            runs[j].resize(runs[j].size() - fans.back().size());
            runs[j + 1].insert(runs[j + 1].begin(), fans.back().begin(), fans.back().end());
            invariant(face_set_info(oe, runs[j + 1]).st, "repaired outerpath has several sources or sinks");
            ++d.repairs;
            changed = true;
            break;
        }
    }
    for (const auto& r : runs) {
        FaceSetInfo fi = face_set_info(oe, r);
        invariant(fi.st, "decomposition part is not single-source single-sink");
        d.paths.push_back({g.arc_subgraph(fi.arcs), g.name(fi.source), g.name(fi.sink), r, !is_fan_faces(oe, r)});
    }
    for (std::size_t i = 0; i + 1 < runs.size(); ++i)
        d.shared.push_back(g.edge_name(shared_arc(oe, runs[i].back(), runs[i + 1].front())));
    d.bundles = compute_bundles(d.paths);
    auto bad = check_outerpath_decomposition(oe, d);
    if (!bad.empty()) fail(Errc::internal_invariant, "outerpath decomposition: " + bad.front());
    return d;
}

// ---------------------------------------------------------------------------
// Sixteen-page embedding of internally triangulated upward outerpaths

struct OuterpathEmbeddingStats {
    int parts = 0;
    int bundles = 0;
    int scheme_fallbacks = 0; // parts whose preferred page set conflicted
};

namespace detail {

/// Assigns global pages to each part's local page classes, preferring the
/// given page groups and falling back to any conflict-free pages.
class PagePlanner {
public:
    PagePlanner(const Order& order, int max_pages) : pos_(positions(order)), max_pages_(max_pages) {}

    /// Returns the global page of every local class or an empty map on failure.
    std::map<int, int> try_group(const std::map<int, std::vector<EdgeName>>& classes, const std::vector<int>& group) const {
        std::vector<int> locals;
        for (const auto& [l, es] : classes) locals.push_back(l);
        if (locals.size() > group.size()) return {};
        std::vector<int> perm(group.size());
        for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
        do {
            std::map<int, int> m;
            bool ok = true;
            for (std::size_t i = 0; i < locals.size() && ok; ++i) {
                int p = group[perm[i]];
                ok = fits(classes.at(locals[i]), p);
                m[locals[i]] = p;
            }
            if (ok) return m;
        } while (std::next_permutation(perm.begin(), perm.end()));
        return {};
    }

    std::map<int, int> greedy(const std::map<int, std::vector<EdgeName>>& classes) const {
        std::map<int, int> m;
        std::set<int> taken;
        for (const auto& [l, es] : classes) {
            int p = 1;
            while (taken.count(p) || !fits(es, p)) ++p;
            m[l] = p;
            taken.insert(p);
        }
        return m;
    }

    void commit(const std::map<int, std::vector<EdgeName>>& classes, const std::map<int, int>& m) {
        for (const auto& [l, es] : classes)
            for (const auto& e : es) {
                by_page_[m.at(l)].push_back(span(e));
                page_of_[e] = m.at(l);
            }
    }

    const std::map<EdgeName, int>& pages() const { return page_of_; }
    int max_pages() const { return max_pages_; }

private:
    std::pair<int, int> span(const EdgeName& e) const { return {pos_.at(e.first), pos_.at(e.second)}; }
    bool fits(const std::vector<EdgeName>& es, int p) const {
        auto it = by_page_.find(p);
        if (it == by_page_.end()) return true;
        for (const auto& e : es) {
            auto [a, b] = span(e);
            for (auto [c, d] : it->second)
                if (spans_cross(a, b, c, d)) return false;
        }
        return true;
    }

    std::unordered_map<VertexName, int> pos_;
    int max_pages_;
    std::map<int, std::vector<std::pair<int, int>>> by_page_;
    std::map<EdgeName, int> page_of_;
};

inline std::vector<int> block_pages(int blk) { return {4 * blk + 1, 4 * blk + 2, 4 * blk + 3, 4 * blk + 4}; }

} // namespace detail

/// Embeds an internally triangulated upward outerpath on at most 16 pages.
inline BookEmbedding embed_upward_outerpath(const Dag& g, OuterpathEmbeddingStats* stats = nullptr) {
    OuterpathDecomposition d = outerpath_decomposition(g);
    const int m = d.size();
    std::vector<BookEmbedding> local(m);
    for (int i = 0; i < m; ++i) {
        if (i + 1 < m) {
            local[i] = embed_st_outerpath(d.paths[i].g, d.shared[i]);
            continue;
        }
        OuterEmbedding oe = recover_outer_embedding(d.paths[i].g);
        bool done = false;
        for (int e = 0; e < d.paths[i].g.edge_count() && !done; ++e) {
            if (!oe.is_outer_arc(e)) continue;
            try {
                local[i] = embed_st_outerpath(d.paths[i].g, d.paths[i].g.edge_name(e));
                done = true;
            } catch (const Error& err) {
                if (err.code() != Errc::ineligible_edge && err.code() != Errc::edge_is_st) throw;
            }
        }
        invariant(done, "last outerpath has no eligible outer edge");
    }
    Order order = local[0].order;
    for (int i = 1; i < m; ++i) order = splice(order, d.shared[i - 1].first, d.shared[i - 1].second, local[i].order);

    // preferred 4-page block (0..3) or half-block for every part
    std::vector<std::vector<int>> pref(m);
    std::vector<int> block(m, -1);
    auto other_blocks = [](std::vector<int> avoid) {
        std::vector<int> r;
        for (int b = 0; b < 4; ++b)
            if (std::find(avoid.begin(), avoid.end(), b) == avoid.end()) r.push_back(b);
        return r;
    };

    detail::PagePlanner planner(order, 16);
    OuterpathEmbeddingStats st;
    st.parts = m;
    st.bundles = static_cast<int>(d.bundles.size());
    std::vector<char> placed(m, 0);
    auto place = [&](int i, const std::vector<std::vector<int>>& groups) {
        std::map<int, std::vector<EdgeName>> classes;
        for (const auto& [e, p] : local[i].pages)
            if (!planner.pages().count(e)) classes[p].push_back(e);
        std::map<int, int> m2;
        bool first_choice = true;
        for (const auto& grp : groups) {
            m2 = planner.try_group(classes, grp);
            if (!m2.empty() || classes.empty()) break;
            first_choice = false;
        }
        if (m2.empty() && !classes.empty()) {
            m2 = planner.greedy(classes);
            first_choice = false;
        }
        if (!first_choice) ++st.scheme_fallbacks;
        planner.commit(classes, m2);
        int lo = 1 << 20;
        for (auto [l, p] : m2) lo = std::min(lo, p);
        block[i] = classes.empty() ? 0 : (lo - 1) / 4;
        placed[i] = 1;
    };
    auto groups_for_blocks = [](const std::vector<int>& blocks) {
        std::vector<std::vector<int>> r;
        for (int b : blocks) r.push_back(detail::block_pages(b));
        return r;
    };

    place(0, groups_for_blocks({0, 1, 2, 3}));
    for (const auto& bu : d.bundles) {
        int X = block[bu.first];
        if (!bu.vertex_shared) {
            place(bu.last, groups_for_blocks(other_blocks({X})));
            continue;
        }
        auto rest = other_blocks({X});
        int Y = rest[0], Z = rest[1], W = rest[2];
        int proper_seen = 0, fan_seen = 0;
        for (int i = bu.first + 1; i <= bu.last; ++i) {
            if (placed[i]) continue;
            if (!d.paths[i].proper) {
                auto zp = detail::block_pages(Z);
                std::vector<int> h1{zp[0], zp[1]}, h2{zp[2], zp[3]};
                if (fan_seen++ % 2) std::swap(h1, h2);
                place(i, {h1, h2});
                continue;
            }
            ++proper_seen;
            int want = proper_seen == 1 ? Y : proper_seen == 2 ? X : W;
            auto alts = other_blocks({want});
            alts.insert(alts.begin(), want);
            place(i, groups_for_blocks(alts));
        }
    }
    for (int i = 0; i < m; ++i)
        if (!placed[i]) place(i, groups_for_blocks({0, 1, 2, 3}));

    BookEmbedding b;
    b.order = order;
    b.pages = planner.pages();
    b.recount();
    if (stats) *stats = st;
    return b;
}

} // namespace ube
