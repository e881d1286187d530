#include <gtest/gtest.h>

#include <algorithm>
#include <functional>

#include "ube/blocks.hpp"
#include "ube/exact.hpp"
#include "ube/generators.hpp"

using namespace ube;

namespace {

Errc code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return Errc::internal_invariant;
}

Dag random_dag(int n, std::uint64_t seed, int pct) {
    GenSpec s;
    s.family = Family::random_dag;
    s.n = n;
    s.seed = seed;
    s.extras["edge_pct"] = pct;
    return generate(s).dag;
}

// Tries every k^m page assignment for increasing k.
int naive_pages(const Dag& g, const Order& order) {
    auto pos = positions(order);
    const int m = g.edge_count();
    if (m == 0) return 0;
    std::vector<std::pair<int, int>> sp;
    for (const auto& [t, h] : g.edge_names()) sp.push_back({pos[t], pos[h]});
    for (int k = 1;; ++k) {
        std::vector<int> a(m, 0);
        while (true) {
            bool ok = true;
            for (int i = 0; i < m && ok; ++i)
                for (int j = i + 1; j < m && ok; ++j)
                    if (a[i] == a[j] && spans_cross(sp[i].first, sp[i].second, sp[j].first, sp[j].second)) ok = false;
            if (ok) return k;
            int i = 0;
            while (i < m && ++a[i] == k) a[i++] = 0;
            if (i == m) break;
        }
    }
}

bool topological(const Dag& g, const Order& order) {
    auto pos = positions(order);
    for (const auto& [t, h] : g.edge_names())
        if (pos[t] > pos[h]) return false;
    return true;
}

// Minimum over all permutations of the naive page count.
int naive_ubt(const Dag& g) {
    Order o = g.names();
    int best = 1 << 30;
    do {
        if (topological(g, o)) best = std::min(best, naive_pages(g, o));
    } while (std::next_permutation(o.begin(), o.end()));
    return best;
}

Dag twisted(int k) {
    std::vector<EdgeName> es;
    for (int i = 1; i <= k; ++i) es.push_back({"u" + std::to_string(i), "v" + std::to_string(i)});
    return Dag::from_edges(es);
}

Order twisted_order(int k) {
    Order o;
    for (int i = 1; i <= k; ++i) o.push_back("u" + std::to_string(i));
    for (int i = 1; i <= k; ++i) o.push_back("v" + std::to_string(i));
    return o;
}

void expect_witness(const Dag& g, const ExactResult& r) {
    ASSERT_TRUE(r.ubt.has_value());
    ASSERT_TRUE(r.witness.has_value());
    auto rep = validate(g, *r.witness);
    EXPECT_TRUE(rep.valid());
    EXPECT_EQ(r.witness->pages_used(), *r.ubt);
}

} // namespace

TEST(MinPagesForOrder, PathIsOnePage) {
    auto g = Dag::from_edges({{"a", "b"}, {"b", "c"}});
    EXPECT_EQ(min_pages_for_order(g, {"a", "b", "c"}).pages, 1);
}

TEST(MinPagesForOrder, InterleavedPairIsTwoPages) {
    auto r = min_pages_for_order(twisted(2), twisted_order(2));
    EXPECT_EQ(r.pages, 2);
    EXPECT_NE(r.assignment.at({"u1", "v1"}), r.assignment.at({"u2", "v2"}));
}

TEST(MinPagesForOrder, TwistedMatchingOfFour) {
    EXPECT_EQ(min_pages_for_order(twisted(4), twisted_order(4)).pages, 4);
}

TEST(MinPagesForOrder, Errors) {
    auto g = Dag::from_edges({{"a", "b"}});
    EXPECT_EQ(code_of([&] { min_pages_for_order(g, {"b", "a"}); }), Errc::not_topological);
    EXPECT_EQ(code_of([&] { min_pages_for_order(g, {"a"}); }), Errc::domain_mismatch);
    EXPECT_EQ(code_of([&] { min_pages_for_order(g, {"a", "a"}); }), Errc::domain_mismatch);
}

TEST(MinPagesForOrder, MatchesNaiveAssignmentOracle) {
    int checked = 0;
    for (std::uint64_t seed = 1; checked < 150 && seed < 2000; ++seed) {
        auto g = random_dag(6 + static_cast<int>(seed % 3), seed, 40);
        if (g.edge_count() == 0 || g.edge_count() > 8) continue;
        std::vector<int> t = g.topological_order();
        Order o;
        for (int v : t) o.push_back(g.name(v));
        auto r = min_pages_for_order(g, o);
        EXPECT_EQ(r.pages, naive_pages(g, o)) << "seed " << seed;
        BookEmbedding b;
        b.order = o;
        b.pages = r.assignment;
        b.recount();
        EXPECT_TRUE(validate(g, b).valid());
        ++checked;
    }
    EXPECT_EQ(checked, 150);
}

TEST(ExactUbt, DirectedPathIsOnePage) {
    auto g = Dag::from_edges({{"a", "b"}, {"b", "c"}, {"c", "d"}});
    auto r = exact_ubt(g, 3);
    EXPECT_EQ(r.ubt, 1);
    expect_witness(g, r);
    EXPECT_GT(r.nodes_explored, 0u);
}

TEST(ExactUbt, DiamondIsTwoPages) {
    auto g = Dag::from_edges({{"s", "a"}, {"s", "b"}, {"a", "t"}, {"b", "t"}});
    auto r = exact_ubt(g, 3);
    EXPECT_EQ(r.ubt, 2);
    expect_witness(g, r);
    EXPECT_FALSE(exact_ubt(g, 1).ubt.has_value());
}

TEST(ExactUbt, CyclesNeedAtMostTwo) {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        GenSpec s;
        s.family = Family::cycle;
        s.n = 3 + static_cast<int>(seed % 8);
        s.seed = seed;
        auto g = generate(s).dag;
        auto r = exact_ubt(g, 2);
        ASSERT_TRUE(r.ubt.has_value()) << "seed " << seed;
        EXPECT_LE(*r.ubt, 2);
        expect_witness(g, r);
    }
}

TEST(ExactUbt, EdgelessGraphNeedsNoPage) {
    auto g = build_dag({"a", "b", "c"}, {});
    auto r = exact_ubt(g, 1);
    EXPECT_EQ(r.ubt, 0);
    expect_witness(g, r);
}

TEST(ExactUbt, ForcedTwistedMatching) {
    // Hamiltonian path fixes the order u1..u4 v1..v4.
    std::vector<EdgeName> es = twisted(4).edge_names();
    auto o = twisted_order(4);
    for (std::size_t i = 0; i + 1 < o.size(); ++i) es.push_back({o[i], o[i + 1]});
    auto g = Dag::from_edges(es);
    auto r = exact_ubt(g, 5);
    EXPECT_EQ(r.ubt, 4);
    expect_witness(g, r);
}

TEST(ExactUbt, MatchesPermutationOracle) {
    int checked = 0;
    for (std::uint64_t seed = 1; checked < 60 && seed < 3000; ++seed) {
        auto g = random_dag(5 + static_cast<int>(seed % 2), seed, 50);
        if (g.edge_count() == 0 || g.edge_count() > 8) continue;
        auto r = exact_ubt(g, 8);
        EXPECT_EQ(r.ubt, naive_ubt(g)) << "seed " << seed;
        expect_witness(g, r);
        ++checked;
    }
    EXPECT_EQ(checked, 60);
}

TEST(ExactUbt, MonotoneUnderEdgeRemoval) {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        auto g = random_dag(8, seed, 45);
        if (g.edge_count() == 0) continue;
        int full = *exact_ubt(g, 8).ubt;
        auto es = g.edge_names();
        for (std::size_t drop = 0; drop < es.size(); drop += 3) {
            auto rest = es;
            rest.erase(rest.begin() + static_cast<long>(drop));
            auto h = build_dag(g.names(), rest);
            auto r = exact_ubt(h, 8);
            ASSERT_TRUE(r.ubt.has_value());
            EXPECT_LE(*r.ubt, full) << "seed " << seed;
        }
    }
}

TEST(ExactUbt, NeverAboveConstructions) {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        for (Family f : {Family::biconnected_st_outerplanar, Family::cactus, Family::st_blocks}) {
            GenSpec s;
            s.family = f;
            s.n = 5 + static_cast<int>(seed % 5);
            s.seed = seed;
            auto g = generate(s).dag;
            BookEmbedding b = f == Family::cactus                      ? embed_cactus(g).embedding
                              : f == Family::st_blocks                 ? embed_st_blocks(g).embedding
                                                                       : embed_biconnected_st_outerplanar(g);
            auto r = exact_ubt(g, 8);
            ASSERT_TRUE(r.ubt.has_value());
            EXPECT_LE(*r.ubt, b.pages_used()) << family_name(f) << " seed " << seed;
        }
    }
}

TEST(ExactUbt, WitnessAlwaysValidates) {
    for (std::uint64_t seed = 100; seed < 140; ++seed) {
        auto g = random_dag(9, seed, 35);
        expect_witness(g, exact_ubt(g, 9));
    }
}

TEST(ExactUbt, DeterministicCounters) {
    auto g = random_dag(9, 7, 40);
    auto a = exact_ubt(g, 9), b = exact_ubt(g, 9);
    EXPECT_EQ(a.nodes_explored, b.nodes_explored);
    EXPECT_EQ(a.witness, b.witness);
}

TEST(ExactUbt, LargeInputsFlaggedButSolved) {
    std::vector<EdgeName> es;
    for (int i = 0; i < 20; ++i) es.push_back({"p" + std::to_string(100 + i), "p" + std::to_string(101 + i)});
    auto g = Dag::from_edges(es);
    auto r = exact_ubt(g, 2);
    EXPECT_TRUE(r.too_large);
    EXPECT_EQ(r.ubt, 1);
}

TEST(ExactUbt, NodeBudget) {
    auto g = random_dag(10, 3, 50);
    EXPECT_EQ(code_of([&] { exact_ubt(g, 9, 3); }), Errc::resource_limit);
    EXPECT_EQ(code_of([&] { exact_ubt(g, 0); }), Errc::invalid_k);
}

TEST(Domination, StarIsOne) {
    std::vector<EdgeName> es;
    for (int i = 1; i <= 5; ++i) es.push_back({"c", "l" + std::to_string(i)});
    EXPECT_EQ(domination_number(Dag::from_edges(es), 3), 1);
}

TEST(Domination, PathOfFourIsTwo) {
    auto g = Dag::from_edges({{"a", "b"}, {"b", "c"}, {"c", "d"}});
    EXPECT_EQ(domination_number(g, 3), 2);
    EXPECT_EQ(code_of([&] { domination_number(g, 1); }), Errc::exceeds_bound);
}

TEST(Domination, IsolatedVerticesCount) {
    EXPECT_EQ(domination_number(build_dag({"a", "b", "c"}, {{"a", "b"}}), 3), 2);
}
