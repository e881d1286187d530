#include <gtest/gtest.h>

#include <functional>

#include "ube/generators.hpp"
#include "ube/parameterized.hpp"
#include "ube/rng.hpp"

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

Dag star(int leaves, bool outward = true) {
    std::vector<EdgeName> es;
    for (int i = 0; i < leaves; ++i) {
        VertexName x = "x" + std::to_string(10 + i);
        es.push_back(outward ? EdgeName{"c", x} : EdgeName{x, "c"});
    }
    return Dag::from_edges(es);
}

Dag diamond() { return Dag::from_edges({{"s", "a"}, {"s", "b"}, {"a", "t"}, {"b", "t"}}); }

int brute_cover(const Dag& g) {
    const int n = g.vertex_count();
    int best = n;
    for (std::uint32_t s = 0; s < (1u << n); ++s) {
        bool ok = true;
        for (const auto& a : g.arcs())
            if (!(s >> a.tail & 1) && !(s >> a.head & 1)) ok = false;
        if (ok) best = std::min(best, __builtin_popcount(s));
    }
    return best;
}

// Cover-shaped DAG: tau hubs, the rest attach to hubs with a few signatures,
// oriented by rank (hubs odd, others even) so that the result is acyclic.
Dag hubbed(int tau, int others, int kinds, std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<EdgeName> es;
    std::vector<VertexName> hubs;
    for (int i = 0; i < tau; ++i) hubs.push_back("h" + std::to_string(i));
    for (int i = 0; i + 1 < tau; ++i)
        if (rng.chance(50)) es.push_back({hubs[i], hubs[i + 1]});
    std::vector<std::pair<std::uint32_t, int>> sigs;
    for (int j = 0; j < kinds; ++j) {
        std::uint32_t mask = 1 + static_cast<std::uint32_t>(rng.below((1u << tau) - 1));
        sigs.push_back({mask, static_cast<int>(rng.below(2 * tau + 1))});
    }
    std::vector<VertexName> names = hubs;
    for (int i = 0; i < others; ++i) {
        VertexName x = "y" + std::to_string(100 + i);
        names.push_back(x);
        auto [mask, r] = sigs[rng.below(sigs.size())];
        for (int h = 0; h < tau; ++h)
            if (mask >> h & 1) es.push_back(r < 2 * h + 1 ? EdgeName{x, hubs[h]} : EdgeName{hubs[h], x});
    }
    return build_dag(names, es);
}

} // namespace

TEST(VertexCover, SmallExamples) {
    auto e = vertex_cover(Dag::from_edges({{"a", "b"}}), 3);
    ASSERT_TRUE(e);
    EXPECT_EQ(e->tau(), 1);
    auto tri = vertex_cover(Dag::from_edges({{"a", "b"}, {"b", "c"}, {"a", "c"}}), 3);
    ASSERT_TRUE(tri);
    EXPECT_EQ(tri->tau(), 2);
    auto s = vertex_cover(star(4), 3);
    ASSERT_TRUE(s);
    EXPECT_EQ(s->cover, std::vector<VertexName>{"c"});
    EXPECT_FALSE(vertex_cover(diamond(), 1));
    EXPECT_FALSE(vertex_cover(diamond(), -1));
}

TEST(VertexCover, MatchesSubsetOracle) {
    for (std::uint64_t seed = 1; seed <= 80; ++seed) {
        GenSpec s;
        s.family = Family::random_dag;
        s.n = 4 + static_cast<int>(seed % 9);
        s.seed = seed;
        s.extras["edge_pct"] = 35;
        auto g = generate(s).dag;
        auto c = vertex_cover(g, g.vertex_count());
        ASSERT_TRUE(c);
        EXPECT_EQ(c->tau(), brute_cover(g)) << "seed " << seed;
        EXPECT_NO_THROW(compute_types(g, *c));
    }
}

TEST(TauPages, StarIsOnePage) {
    auto g = star(5);
    auto ctx = compute_types(g, *vertex_cover(g, 2));
    auto b = tau_page_embedding(g, ctx);
    EXPECT_TRUE(validate(g, b).valid());
    EXPECT_EQ(b.pages_used(), 1);
}

TEST(TauPages, TriangleTwoPages) {
    auto g = Dag::from_edges({{"a", "b"}, {"b", "c"}, {"a", "c"}});
    CoverContext ctx;
    ctx.cover = {"a", "b"};
    auto b = tau_page_embedding(g, ctx);
    EXPECT_TRUE(validate(g, b).valid());
    EXPECT_EQ(b.pages_used(), 2);
}

TEST(TauPages, GeneratedDagsStayWithinTau) {
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        GenSpec s;
        s.family = Family::random_dag;
        s.n = 10 + static_cast<int>(seed % 21);
        s.seed = seed;
        s.extras["edge_pct"] = 12;
        auto g = generate(s).dag;
        auto c = vertex_cover(g, g.vertex_count());
        ASSERT_TRUE(c);
        auto b = tau_page_embedding(g, *c);
        EXPECT_TRUE(validate(g, b).valid()) << "seed " << seed;
        EXPECT_LE(b.pages_used(), c->tau());
        // every page is a star
        std::map<int, std::map<VertexName, int>> touch;
        std::map<int, int> size;
        for (const auto& [e, p] : b.pages) {
            ++touch[p][e.first];
            ++touch[p][e.second];
            ++size[p];
        }
        for (const auto& [p, t] : touch) {
            bool hub = false;
            for (const auto& [v, d] : t) hub = hub || d == size[p];
            EXPECT_TRUE(hub) << "page " << p << " seed " << seed;
        }
    }
}

TEST(TauPages, UncoveredEdgeRejected) {
    CoverContext ctx;
    ctx.cover = {"s"};
    EXPECT_EQ(code_of([&] { tau_page_embedding(diamond(), ctx); }), Errc::precondition_violated);
}

TEST(Types, OrientationSeparates) {
    auto g = Dag::from_edges({{"c", "x"}, {"c", "z"}, {"y", "c"}});
    CoverContext ctx;
    ctx.cover = {"c"};
    ctx = compute_types(g, ctx);
    ASSERT_EQ(ctx.types.size(), 2u);
    EXPECT_EQ(ctx.types.at(TypeSignature{{"c", true}}), (std::vector<VertexName>{"x", "z"}));
    EXPECT_EQ(ctx.types.at(TypeSignature{{"c", false}}), std::vector<VertexName>{"y"});
}

TEST(Types, CountAndDegreeBounds) {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        auto g = hubbed(3, 25, 6, seed);
        auto ctx = compute_types(g, *vertex_cover(g, g.vertex_count()));
        EXPECT_LE(ctx.types.size(), std::size_t{1} << (2 * ctx.tau()));
        std::size_t total = ctx.cover.size();
        for (const auto& [sig, vs] : ctx.types) {
            total += vs.size();
            for (const auto& v : vs) EXPECT_EQ(g.degree(g.index(v)), static_cast<int>(sig.size()));
        }
        EXPECT_EQ(total, static_cast<std::size_t>(g.vertex_count()));
    }
}

TEST(Kernel, FixpointWhenClassesSmall) {
    auto g = diamond();
    auto ctx = *vertex_cover(g, 4);
    auto ki = kernelize(g, ctx, 1);
    EXPECT_TRUE(ki.removed.empty());
    EXPECT_EQ(ki.reduced, g);
}

TEST(Kernel, StarOfTenCapsAtThree) {
    auto g = star(10);
    auto ki = kernelize(g, *vertex_cover(g, 1), 1);
    EXPECT_EQ(ki.removed.size(), 7u);
    EXPECT_EQ(ki.reduced.vertex_count(), 4);
    for (const auto& r : ki.removed) EXPECT_EQ(r.representative, "x10");
}

TEST(Kernel, StarOfTenLiftsBack) {
    auto g = star(10);
    auto ki = kernelize(g, *vertex_cover(g, 1), 1);
    auto r = exact_ubt(ki.reduced, 1);
    ASSERT_EQ(r.ubt, 1);
    auto b = lift_embedding(ki, *r.witness);
    EXPECT_TRUE(validate(g, b).valid());
    EXPECT_EQ(b.pages_used(), 1);
}

TEST(Kernel, InvalidKAndOverflowGuard) {
    EXPECT_EQ(code_of([&] { kernelize(star(4), *vertex_cover(star(4), 2), -1); }), Errc::invalid_k);
    EXPECT_FALSE(class_cap(1000, 40).has_value());
    EXPECT_EQ(class_cap(2, 3), 17);
    EXPECT_EQ(class_cap(0, 3), 1);
}

TEST(Kernel, SizeBoundOnRandomInputs) {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        auto g = hubbed(3, 40, 4, seed);
        auto ctx = *vertex_cover(g, g.vertex_count());
        for (int k = 1; k < ctx.tau(); ++k) {
            auto ki = kernelize(g, ctx, k);
            auto cap = *class_cap(k, ctx.tau());
            EXPECT_LE(ki.reduced.vertex_count(), cap * (std::int64_t{1} << (2 * ctx.tau())) + ctx.tau());
            auto again = compute_types(ki.reduced, ctx);
            for (const auto& [sig, vs] : again.types) EXPECT_LE(static_cast<std::int64_t>(vs.size()), cap);
        }
    }
}

TEST(Kernel, EmptyRemovalLiftIsIdentity) {
    auto g = diamond();
    auto ki = kernelize(g, *vertex_cover(g, 4), 1);
    auto b = *exact_ubt(g, 2).witness;
    EXPECT_EQ(lift_embedding(ki, b), b);
}

TEST(Kernel, SafeAtDeskScale) {
    int shrunk = 0;
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        int tau = 2 + static_cast<int>(seed % 2);
        auto g = hubbed(tau, 12 - tau, 2, seed);
        auto ctx = *vertex_cover(g, g.vertex_count());
        auto full = exact_ubt(g, 6);
        ASSERT_TRUE(full.ubt);
        for (int k = 1; k < std::min(ctx.tau(), 4); ++k) {
            auto ki = kernelize(g, ctx, k);
            if (!ki.removed.empty()) ++shrunk;
            auto red = exact_ubt(ki.reduced, k);
            EXPECT_EQ(*full.ubt <= k, red.ubt.has_value()) << "seed " << seed << " k " << k;
            if (red.ubt) {
                auto b = lift_embedding(ki, *red.witness);
                EXPECT_TRUE(validate(g, b, k).valid()) << "seed " << seed;
                EXPECT_LE(b.pages_used(), red.witness->pages_used());
            }
        }
    }
    EXPECT_GT(shrunk, 5);
}

TEST(Kernel, InvalidEmbeddingHasNoTriple) {
    auto g = star(10);
    auto ki = kernelize(g, *vertex_cover(g, 1), 1);
    auto b = *exact_ubt(ki.reduced, 1).witness;
    int p = 0;
    for (auto& [e, pg] : b.pages) pg = ++p;
    EXPECT_EQ(code_of([&] { lift_embedding(ki, b); }), Errc::no_page_equivalent_triple);
}

TEST(Fpt, SmallExamples) {
    auto p4 = Dag::from_edges({{"a", "b"}, {"b", "c"}, {"c", "d"}});
    auto r = fpt_decide(p4, 1);
    EXPECT_TRUE(r.yes);
    ASSERT_TRUE(r.witness);
    EXPECT_TRUE(validate(p4, *r.witness, 1).valid());

    auto no = fpt_decide(diamond(), 1);
    EXPECT_FALSE(no.yes);
    EXPECT_FALSE(no.witness);
    EXPECT_EQ(no.tau, 2);

    auto yes = fpt_decide(diamond(), 2);
    EXPECT_TRUE(yes.yes);
    ASSERT_TRUE(yes.witness);
    EXPECT_TRUE(validate(diamond(), *yes.witness, 2).valid());

    EXPECT_FALSE(fpt_decide(diamond(), 0).yes);
    EXPECT_TRUE(fpt_decide(build_dag({"a", "b"}, {}), 0).yes);
    EXPECT_EQ(code_of([&] { fpt_decide(diamond(), -1); }), Errc::invalid_k);
}

TEST(Fpt, AgreesWithExactSolver) {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        auto g = hubbed(3, 9, 3, seed + 500);
        int ubt = *exact_ubt(g, 8).ubt;
        for (int k = 1; k <= 3; ++k) {
            auto r = fpt_decide(g, k);
            EXPECT_EQ(r.yes, ubt <= k) << "seed " << seed << " k " << k;
            if (r.yes) {
            EXPECT_TRUE(validate(g, *r.witness, k).valid());
        }
        }
    }
}

TEST(Fpt, ResourceLimitReported) {
    GenSpec s;
    s.family = Family::random_dag;
    s.n = 12;
    s.seed = 4;
    s.extras["edge_pct"] = 60;
    auto g = generate(s).dag;
    EXPECT_EQ(code_of([&] { fpt_decide(g, 2, 10); }), Errc::resource_limit);
}
