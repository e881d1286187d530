#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "outerplanar.hpp"

namespace ube {

struct UpwardReport {
    bool ok = false;
    bool bimodal = false;
    std::string reason;
};

/// Upward planarity of a biconnected DAG in its outerplanar embedding: bimodality plus
/// an assignment of every source and sink to one face where it forms a switch angle,
/// giving each inner face n_f - 1 and the outer face n_f + 1 large angles
/// (2 n_f = number of switch angles on the face).
inline UpwardReport upward_outerplanar_biconnected(const OuterEmbedding& oe) {
    const Dag& g = oe.dag;
    const int n = g.vertex_count();
    UpwardReport r;
    if (!oe.biconnected || n < 3) {
        r.reason = "requires a biconnected graph";
        return r;
    }
    std::vector<int> pos(n);
    for (int i = 0; i < n; ++i) pos[oe.outer_cycle[i]] = i;
    for (int v = 0; v < n; ++v) {
        auto nb = g.neighbors(v);
        std::sort(nb.begin(), nb.end(), [&](int a, int b) { return (pos[a] - pos[v] + n) % n < (pos[b] - pos[v] + n) % n; });
        int changes = 0;
        for (std::size_t i = 0; i < nb.size(); ++i) {
            bool a = g.has_arc(v, nb[i]), b = g.has_arc(v, nb[(i + 1) % nb.size()]);
            if (a != b) ++changes;
        }
        if (changes > 2) {
            r.reason = "vertex " + g.name(v) + " is not bimodal";
            return r;
        }
    }
    r.bimodal = true;

    // faces: inner faces then the outer face
    std::vector<std::vector<int>> faces = oe.inner_faces;
    faces.push_back(oe.outer_cycle);
    const int F = static_cast<int>(faces.size());
    std::vector<int> cap(F);
    std::vector<std::vector<int>> options(n); // faces where v forms a switch angle
    for (int f = 0; f < F; ++f) {
        const auto& c = faces[f];
        const int k = static_cast<int>(c.size());
        int switches = 0;
        for (int i = 0; i < k; ++i) {
            int v = c[i], a = c[(i + k - 1) % k], b = c[(i + 1) % k];
            bool ina = g.has_arc(a, v), inb = g.has_arc(b, v);
            if (ina == inb) {
                ++switches;
                if (g.is_source(v) || g.is_sink(v)) options[v].push_back(f);
            }
        }
        int nf = switches / 2;
        cap[f] = f + 1 == F ? nf + 1 : nf - 1;
        if (cap[f] < 0) {
            r.reason = "face without switches";
            return r;
        }
    }
    std::vector<int> sw;
    for (int v = 0; v < n; ++v)
        if (g.is_source(v) || g.is_sink(v)) sw.push_back(v);
    int total = 0;
    for (int c : cap) total += c;
    if (total != static_cast<int>(sw.size())) {
        r.reason = "large-angle count mismatch";
        return r;
    }
    // bipartite b-matching by augmenting paths
    std::vector<int> load(F, 0), match(n, -1);
    std::vector<std::vector<int>> holders(F);
    auto augment = [&](auto&& self, int v, std::vector<char>& seen) -> bool {
        for (int f : options[v]) {
            if (seen[f]) continue;
            seen[f] = 1;
            if (load[f] < cap[f]) {
                ++load[f];
                holders[f].push_back(v);
                match[v] = f;
                return true;
            }
            for (std::size_t i = 0; i < holders[f].size(); ++i) {
                int w = holders[f][i];
                holders[f].erase(holders[f].begin() + static_cast<long>(i));
                if (self(self, w, seen)) {
                    holders[f].push_back(v);
                    match[v] = f;
                    return true;
                }
                holders[f].insert(holders[f].begin() + static_cast<long>(i), w);
            }
        }
        return false;
    };
    for (int v : sw) {
        std::vector<char> seen(F, 0);
        if (!augment(augment, v, seen)) {
            r.reason = "no consistent assignment of large angles";
            return r;
        }
    }
    r.ok = true;
    return r;
}

inline bool is_upward_outerplanar_biconnected(const Dag& g) {
    if (g.vertex_count() < 3) return g.vertex_count() >= 1;
    try {
        auto oe = recover_outer_embedding(g);
        return upward_outerplanar_biconnected(oe).ok;
    } catch (const Error& e) {
        if (e.code() == Errc::not_outerplanar) return false;
        throw;
    }
}

} // namespace ube
