#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "ube/generators.hpp"
#include "ube/upward.hpp"

using namespace ube;

namespace {

// Exhaustive large-angle assignment: every source and sink picks one incident
// face; inner faces need (switches/2 - 1) picks, the outer face (switches/2 + 1).
bool brute_upward(const Dag& g) {
    if (g.vertex_count() < 3) return true;
    OuterEmbedding oe = recover_outer_embedding(g);
    for (int v = 0; v < g.vertex_count(); ++v) {
        // bimodality: cyclic rotation at v follows the outer cycle
        std::vector<int> order;
        const int n = g.vertex_count();
        int at = static_cast<int>(std::find(oe.outer_cycle.begin(), oe.outer_cycle.end(), v) - oe.outer_cycle.begin());
        for (int k = 1; k < n; ++k) {
            int w = oe.outer_cycle[(at + k) % n];
            if (g.adjacent(v, w)) order.push_back(w);
        }
        int flips = 0;
        for (std::size_t i = 0; i < order.size(); ++i)
            flips += g.has_arc(v, order[i]) != g.has_arc(v, order[(i + 1) % order.size()]);
        if (flips > 2) return false;
    }
    auto faces = oe.inner_faces;
    faces.push_back(oe.outer_cycle);
    const int F = static_cast<int>(faces.size());
    std::vector<int> need(F);
    for (int f = 0; f < F; ++f) {
        int sw = 0;
        const auto& c = faces[f];
        for (std::size_t i = 0; i < c.size(); ++i) {
            int a = c[(i + c.size() - 1) % c.size()], v = c[i], b = c[(i + 1) % c.size()];
            sw += g.has_arc(a, v) == g.has_arc(b, v);
        }
        need[f] = f + 1 == F ? sw / 2 + 1 : sw / 2 - 1;
    }
    std::vector<int> ext;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (g.is_source(v) || g.is_sink(v)) ext.push_back(v);
    std::vector<std::vector<int>> opts(ext.size());
    for (std::size_t i = 0; i < ext.size(); ++i)
        for (int f = 0; f < F; ++f)
            if (std::find(faces[f].begin(), faces[f].end(), ext[i]) != faces[f].end()) opts[i].push_back(f);
    std::vector<int> load(F, 0);
    std::function<bool(std::size_t)> go = [&](std::size_t i) {
        if (i == ext.size()) return load == need;
        for (int f : opts[i]) {
            if (load[f] >= need[f]) continue;
            ++load[f];
            if (go(i + 1)) return true;
            --load[f];
        }
        return false;
    };
    return go(0);
}

// Canonical form under all vertex relabelings.
std::vector<std::pair<int, int>> iso_canon(const Dag& g) {
    const int n = g.vertex_count();
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::pair<int, int>> best;
    do {
        std::vector<std::pair<int, int>> t;
        for (int e = 0; e < g.edge_count(); ++e) t.push_back({p[g.arc(e).tail], p[g.arc(e).head]});
        std::sort(t.begin(), t.end());
        if (best.empty() || t < best) best = t;
    } while (std::next_permutation(p.begin(), p.end()));
    return best;
}

bool acyclic(const std::vector<EdgeName>& es) {
    try {
        Dag::from_edges(es);
        return true;
    } catch (const Error&) {
        return false;
    }
}

bool same_cycle(std::vector<VertexName> a, std::vector<VertexName> b) {
    if (a.size() != b.size()) return false;
    for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t r = 0; r < a.size(); ++r) {
            std::rotate(a.begin(), a.begin() + 1, a.end());
            if (a == b) return true;
        }
        std::reverse(a.begin(), a.end());
    }
    return false;
}

} // namespace

TEST(Generate, Deterministic) {
    for (const auto& [f, name] : family_names()) {
        GenSpec s{f, 12, 99, {}};
        auto a = generate(s), b = generate(s);
        EXPECT_EQ(a.dag, b.dag) << name;
        EXPECT_EQ(a.dag.edge_names(), b.dag.edge_names()) << name;
    }
}

TEST(Generate, FamilyMembership) {
    for (const auto& [f, name] : family_names()) {
        for (std::uint64_t seed = 1; seed <= 25; ++seed) {
            int n = 4 + static_cast<int>(seed % 30);
            auto g = generate({f, n, seed, {}});
            EXPECT_TRUE(in_family(g.dag, f)) << name << " seed " << seed;
            if (f != Family::st_blocks && f != Family::cactus && f != Family::random_dag) {
                EXPECT_EQ(g.dag.vertex_count(), n) << name;
            }
        }
    }
}

TEST(Generate, FanExample) {
    auto g = generate({Family::st_fan, 5, 7, {}});
    FanShape f = fan_shape(g.dag);
    EXPECT_EQ(f.left.size() + f.right.size(), 3u);
    ASSERT_TRUE(g.embedding);
    EXPECT_TRUE(same_cycle(g.cert.outer_cycle, g.embedding->outer_cycle_names()));
}

TEST(Generate, CertificateAgreesWithRecovery) {
    for (Family f : {Family::one_sided, Family::st_fan, Family::st_outerpath, Family::upward_outerpath,
                     Family::biconnected_st_outerplanar, Family::cycle}) {
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            auto g = generate({f, 5 + static_cast<int>(seed % 20), seed, {}});
            ASSERT_TRUE(g.embedding);
            EXPECT_TRUE(same_cycle(g.cert.outer_cycle, g.embedding->outer_cycle_names())) << family_name(f) << seed;
            EXPECT_EQ(g.cert.inner_faces, g.embedding->face_count()) << family_name(f) << seed;
        }
    }
}

TEST(Generate, BlockCertificates) {
    for (Family f : {Family::st_blocks, Family::cactus}) {
        for (std::uint64_t seed = 1; seed <= 30; ++seed) {
            auto g = generate({f, 6 + static_cast<int>(seed % 40), seed, {}});
            if (g.dag.vertex_count() < 2) continue;
            BcTree t = build_bc_tree(g.dag);
            std::vector<std::vector<VertexName>> got;
            for (int b = 0; b < t.block_count(); ++b) {
                std::vector<VertexName> vs;
                for (int v : t.block_vertices[b]) vs.push_back(g.dag.name(v));
                got.push_back(vs);
            }
            auto want = g.cert.blocks;
            std::sort(got.begin(), got.end());
            std::sort(want.begin(), want.end());
            EXPECT_EQ(got, want) << family_name(f) << seed;
            EXPECT_TRUE(check_bimodality_at_cuts(g.dag, t).ok);
        }
    }
}

TEST(Generate, CactusSingleVertex) {
    auto g = generate({Family::cactus, 1, 3, {}});
    EXPECT_EQ(g.dag.vertex_count(), 1);
    EXPECT_EQ(g.dag.edge_count(), 0);
}

TEST(Generate, UpwardOuterpathExample) {
    auto g = generate({Family::upward_outerpath, 20, 1, {}});
    ASSERT_TRUE(g.embedding);
    EXPECT_TRUE(g.embedding->is_outerpath());
    EXPECT_TRUE(g.embedding->internally_triangulated());
    EXPECT_EQ(g.embedding->face_count(), 18);
    EXPECT_TRUE(is_upward_outerplanar_biconnected(g.dag));
}

TEST(Generate, InfeasibleSpec) {
    try {
        generate({Family::st_fan, 1, 1, {}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::infeasible_spec);
    }
}

TEST(Upward, AgreesWithBruteForce) {
    int yes = 0, no = 0;
    for (int n = 3; n <= 7; ++n)
        for (const Dag& g : enumerate_small(Family::cycle, n)) {
            bool want = brute_upward(g);
            EXPECT_EQ(is_upward_outerplanar_biconnected(g), want);
            (want ? yes : no)++;
        }
    std::mt19937 rng(11);
    for (int iter = 0; iter < 1500; ++iter) {
        const int n = 4 + iter % 5;
        std::vector<std::pair<int, int>> und;
        for (int i = 0; i < n; ++i) und.push_back({i, (i + 1) % n});
        std::vector<std::pair<int, int>> diag;
        for (int i = 0; i < n; ++i)
            for (int j = i + 2; j < n; ++j)
                if (!(i == 0 && j == n - 1)) diag.push_back({i, j});
        std::shuffle(diag.begin(), diag.end(), rng);
        for (auto d : diag) {
            bool ok = rng() % 2 == 0;
            for (std::size_t k = static_cast<std::size_t>(n); k < und.size() && ok; ++k)
                ok = !spans_cross(und[k].first, und[k].second, d.first, d.second);
            if (ok) und.push_back(d);
        }
        std::vector<EdgeName> es;
        for (auto [x, y] : und) {
            if (rng() % 2) std::swap(x, y);
            es.push_back({"v" + std::to_string(x), "v" + std::to_string(y)});
        }
        if (!acyclic(es)) continue;
        Dag g = Dag::from_edges(es);
        bool want = brute_upward(g);
        EXPECT_EQ(is_upward_outerplanar_biconnected(g), want) << iter;
        (want ? yes : no)++;
    }
    EXPECT_GT(yes, 100);
    EXPECT_GT(no, 20);
}

TEST(EnumerateSmall, CountsMatchIsomorphismClasses) {
    // independent count: all orientations of each skeleton, canonicalized over every relabeling
    for (int n = 3; n <= 6; ++n) {
        std::set<std::vector<std::pair<int, int>>> want;
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
            std::vector<EdgeName> es;
            for (int i = 0; i < n; ++i) {
                auto a = "v" + std::to_string(i), b = "v" + std::to_string((i + 1) % n);
                es.push_back((mask >> i) & 1 ? EdgeName{b, a} : EdgeName{a, b});
            }
            try {
                want.insert(iso_canon(Dag::from_edges(es)));
            } catch (const Error&) {
            }
        }
        EXPECT_EQ(enumerate_small(Family::cycle, n).size(), want.size()) << n;
    }
    EXPECT_EQ(enumerate_small(Family::cycle, 4).size(), 3u);
}

TEST(EnumerateSmall, FansOnFourVertices) {
    auto fans = enumerate_small(Family::st_fan, 4);
    std::set<std::vector<std::pair<int, int>>> classes;
    for (const Dag& g : fans) {
        EXPECT_NO_THROW(fan_shape(g));
        EXPECT_EQ(g.edge_count(), 5);
        classes.insert(iso_canon(g));
    }
    EXPECT_EQ(classes.size(), fans.size());
    EXPECT_FALSE(fans.empty());
}

TEST(EnumerateSmall, MembersBelongToFamily) {
    for (Family f : {Family::st_outerpath, Family::upward_outerpath, Family::biconnected_st_outerplanar}) {
        for (int n = 3; n <= 6; ++n)
            for (const Dag& g : enumerate_small(f, n)) EXPECT_TRUE(in_family(g, f));
    }
}

TEST(EnumerateSmall, Limits) {
    try {
        enumerate_small(Family::cycle, 9);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::too_large);
    }
    EXPECT_THROW(enumerate_small(Family::cactus, 5), Error);
}
