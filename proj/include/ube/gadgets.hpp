#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "dag.hpp"
#include "layout.hpp"

namespace ube {

struct Gadget {
    Dag h;
    Dag g_prime;
    int k = 0;
    std::map<std::string, VertexName> roles;       // role -> vertex of G'
    std::map<VertexName, VertexName> original;     // vertex of G -> vertex of G'
    std::vector<VertexName> path1, path2;          // the two directed paths of H
};

namespace detail {

inline std::string indexed(const char* p, int i) { return p + std::to_string(i); }

inline std::vector<VertexName> gadget_path(const char* lo, const std::vector<const char*>& mid, const char* hi, int k) {
    std::vector<VertexName> p;
    for (int i = 1; i <= k; ++i) p.push_back(indexed(lo, i));
    for (const char* m : mid) p.push_back(m);
    for (int i = 1; i <= k; ++i) p.push_back(indexed(hi, i));
    return p;
}

struct AuxParts {
    std::vector<VertexName> p1, p2;
    std::vector<EdgeName> edges;
};

inline AuxParts auxiliary_parts(int k) {
    if (k < 1) fail(Errc::invalid_k, "k must be at least 1");
    AuxParts a;
    a.p1 = gadget_path("u", {"a", "b", "c", "d"}, "v", k);
    a.p2 = gadget_path("w", {"e", "f", "g", "h"}, "z", k);
    for (const auto* p : {&a.p1, &a.p2})
        for (std::size_t i = 0; i + 1 < p->size(); ++i) a.edges.push_back({(*p)[i], (*p)[i + 1]});
    for (int i = 1; i <= k; ++i) {
        a.edges.push_back({indexed("u", i), indexed("v", i)});
        a.edges.push_back({indexed("w", i), indexed("z", i)});
    }
    const VertexName vk = indexed("v", k), w1 = "w1";
    a.edges.insert(a.edges.end(), {{"a", "e"}, {"b", w1}, {"d", "h"}, {vk, w1}, {vk, "g"}});
    return a;
}

} // namespace detail

/// The auxiliary st-DAG whose vertices lie on one directed path.
inline Dag build_auxiliary(int k) {
    auto a = detail::auxiliary_parts(k);
    std::vector<VertexName> vs = a.p1;
    vs.insert(vs.end(), a.p2.begin(), a.p2.end());
    return build_dag(vs, a.edges);
}

/// G joined to the auxiliary graph through c -> v -> f for every vertex v of G.
inline Gadget build_reduction(const Dag& g, int k) {
    auto a = detail::auxiliary_parts(k);
    Gadget gd;
    gd.k = k;
    gd.path1 = a.p1;
    gd.path2 = a.p2;
    std::vector<VertexName> vs = a.p1;
    vs.insert(vs.end(), a.p2.begin(), a.p2.end());
    gd.h = build_dag(vs, a.edges);
    for (const auto& v : vs) gd.roles[v] = v;
    std::set<VertexName> taken(vs.begin(), vs.end());
    bool clash = std::any_of(g.names().begin(), g.names().end(), [&](const VertexName& v) { return taken.count(v) > 0; });
    std::vector<EdgeName> es = a.edges;
    for (const auto& v : g.names()) {
        VertexName x = clash ? "g:" + v : v;
        gd.original[v] = x;
        vs.push_back(x);
        es.push_back({"c", x});
        es.push_back({x, "f"});
    }
    for (const auto& [t, h] : g.edge_names()) es.push_back({gd.original[t], gd.original[h]});
    gd.g_prime = build_dag(vs, es);
    return gd;
}

/// (k+2)-page embedding of G' built from a k-page embedding of G.
inline BookEmbedding forward_embedding(const Gadget& gd, const BookEmbedding& bg) {
    const int k = gd.k;
    BookEmbedding b;
    b.order = gd.path1;
    for (const auto& v : bg.order) b.order.push_back(gd.original.at(v));
    b.order.insert(b.order.end(), gd.path2.begin(), gd.path2.end());
    for (const auto& [e, p] : bg.pages) {
        if (p > k) fail(Errc::precondition_violated, "embedding of G uses more than k pages");
        b.pages[{gd.original.at(e.first), gd.original.at(e.second)}] = p;
    }
    for (const auto* path : {&gd.path1, &gd.path2})
        for (std::size_t i = 0; i + 1 < path->size(); ++i) b.pages[{(*path)[i], (*path)[i + 1]}] = 1;
    for (int i = 1; i <= k; ++i) {
        b.pages[{detail::indexed("u", i), detail::indexed("v", i)}] = i;
        b.pages[{detail::indexed("w", i), detail::indexed("z", i)}] = i;
    }
    const VertexName vk = detail::indexed("v", k);
    b.pages[{"a", "e"}] = b.pages[{"b", "w1"}] = k + 1;
    b.pages[{"d", "h"}] = b.pages[{vk, "g"}] = k + 2;
    b.pages[{vk, "w1"}] = 1;
    for (const auto& [v, x] : gd.original) {
        b.pages[{"c", x}] = k + 1;
        b.pages[{x, "f"}] = k + 2;
    }
    b.recount();
    return b;
}

struct GadgetReport {
    bool valid = false;        // witness is a UBE of G' with at most k+2 pages
    bool same_page_pairs = false;  // ae with b w_1, and d h with v_k g
    bool originals_inside = false; // every vertex of G between v_k and w_1
    std::vector<std::string> problems;
    bool ok() const { return valid && same_page_pairs && originals_inside; }
};

inline GadgetReport check_gadget_properties(const Gadget& gd, const BookEmbedding& w) {
    GadgetReport r;
    auto rep = validate(gd.g_prime, w, gd.k + 2);
    r.valid = rep.valid();
    if (!r.valid) r.problems.push_back("witness is not a valid UBE of G' within k+2 pages");
    const VertexName vk = detail::indexed("v", gd.k);
    r.same_page_pairs = w.page({"a", "e"}) == w.page({"b", "w1"}) && w.page({"d", "h"}) == w.page({vk, "g"});
    if (!r.same_page_pairs) r.problems.push_back("paired auxiliary edges on different pages");
    auto pos = positions(w.order);
    r.originals_inside = pos.count(vk) && pos.count("w1");
    for (const auto& [v, x] : gd.original) {
        if (!r.originals_inside) break;
        if (!pos.count(x) || pos[x] < pos[vk] || pos[x] > pos["w1"]) {
            r.originals_inside = false;
            r.problems.push_back(x + " lies outside v_k..w_1");
        }
    }
    return r;
}

/// Every third vertex of each path (starting at the second) plus c.
inline std::vector<VertexName> gadget_dominating_set(const Gadget& gd) {
    std::vector<VertexName> d;
    for (const auto* path : {&gd.path1, &gd.path2}) {
        for (std::size_t i = 1; i < path->size(); i += 3) d.push_back((*path)[i]);
        if (path->size() % 3 == 1) d.push_back(path->back());
    }
    d.push_back("c");
    std::sort(d.begin(), d.end());
    d.erase(std::unique(d.begin(), d.end()), d.end());
    return d;
}

} // namespace ube
