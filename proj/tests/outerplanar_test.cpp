#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "ube/outerplanar.hpp"

using namespace ube;

namespace {

// Brute-force oracle for biconnected graphs: some Hamiltonian cycle of real
// edges leaves all other edges as pairwise non-crossing chords.
bool brute_outerplanar_biconnected(const Dag& d) {
    int n = d.vertex_count();
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    do {
        if (perm[0] != 0) break;
        bool cyc = true;
        for (int i = 0; i < n && cyc; ++i) cyc = d.adjacent(perm[i], perm[(i + 1) % n]);
        if (!cyc) continue;
        std::vector<int> pos(n);
        for (int i = 0; i < n; ++i) pos[perm[i]] = i;
        bool ok = true;
        for (int e = 0; e < d.edge_count() && ok; ++e)
            for (int f = e + 1; f < d.edge_count() && ok; ++f)
                ok = !spans_cross(pos[d.arc(e).tail], pos[d.arc(e).head], pos[d.arc(f).tail], pos[d.arc(f).head]);
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

Dag random_dag(std::mt19937& rng, int n, int pct) {
    std::vector<std::string> vs;
    for (int i = 0; i < n; ++i) vs.push_back(std::string(1, static_cast<char>('a' + i)));
    std::vector<EdgeName> es;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (static_cast<int>(rng() % 100) < pct) es.push_back({vs[i], vs[j]});
    return build_dag(vs, es);
}

} // namespace

TEST(OuterEmbedding, Triangle) {
    Dag d = Dag::from_edges({{"s", "a"}, {"s", "t"}, {"a", "t"}});
    auto oe = recover_outer_embedding(d);
    EXPECT_EQ(oe.outer_cycle_names(), (std::vector<std::string>{"a", "s", "t"}));
    EXPECT_EQ(oe.face_count(), 1);
    EXPECT_EQ(oe.dual_edge_count(), 0);
    EXPECT_TRUE(oe.is_outerpath());
}

TEST(OuterEmbedding, TwoTrianglesSharingEdge) {
    Dag d = Dag::from_edges({{"s", "a"}, {"a", "t"}, {"s", "t"}, {"a", "b"}, {"b", "t"}});
    auto oe = recover_outer_embedding(d);
    EXPECT_EQ(oe.face_count(), 2);
    EXPECT_EQ(oe.dual_edge_count(), 1);
    int at = d.arc_index(d.index("a"), d.index("t"));
    EXPECT_TRUE(oe.is_inner_arc(at));
}

TEST(OuterEmbedding, K23Rejected) {
    Dag d = Dag::from_edges({{"a", "x"}, {"a", "y"}, {"a", "z"}, {"b", "x"}, {"b", "y"}, {"b", "z"}});
    try {
        recover_outer_embedding(d);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::not_outerplanar);
    }
}

TEST(OuterEmbedding, K4Rejected) {
    Dag d = Dag::from_edges({{"a", "b"}, {"a", "c"}, {"a", "d"}, {"b", "c"}, {"b", "d"}, {"c", "d"}});
    EXPECT_FALSE(is_outerplanar(d));
}

TEST(OuterEmbedding, InnerTriangleOfChords) {
    // hexagon with chords forming a central triangle
    Dag d = Dag::from_edges({{"a", "b"}, {"b", "c"}, {"c", "d"}, {"d", "e"}, {"e", "f"}, {"a", "f"},
                             {"a", "c"}, {"c", "e"}, {"a", "e"}});
    auto oe = recover_outer_embedding(d);
    EXPECT_EQ(oe.face_count(), 4);
    EXPECT_FALSE(oe.is_outerpath());
    EXPECT_TRUE(oe.internally_triangulated());
}

TEST(OuterEmbedding, NonBiconnectedVisitsEveryVertexOnce) {
    Dag d = Dag::from_edges({{"a", "b"}, {"b", "c"}, {"a", "c"}, {"c", "d"}, {"d", "e"}, {"e", "f"}, {"d", "f"}});
    auto oe = recover_outer_embedding(d);
    auto names = oe.outer_cycle_names();
    std::sort(names.begin(), names.end());
    EXPECT_EQ(names, d.names());
    EXPECT_EQ(oe.face_count(), 2);
    EXPECT_FALSE(oe.biconnected);
}

TEST(OuterEmbedding, AgreesWithBruteForceAndCountsFaces) {
    std::mt19937 rng(3);
    int checked = 0;
    for (int it = 0; it < 3000 && checked < 400; ++it) {
        int n = 3 + static_cast<int>(rng() % 5);
        Dag d = random_dag(rng, n, 35 + static_cast<int>(rng() % 50));
        if (!d.connected() || build_bc_tree(d).block_count() != 1) continue;
        ++checked;
        bool expect = brute_outerplanar_biconnected(d);
        ASSERT_EQ(is_outerplanar(d), expect);
        if (!expect) continue;
        auto oe = recover_outer_embedding(d);
        EXPECT_EQ(oe.face_count(), d.edge_count() - d.vertex_count() + 1);
        EXPECT_EQ(oe.dual_edge_count(), oe.face_count() - 1);
        for (int e = 0; e < d.edge_count(); ++e) {
            int pa = static_cast<int>(std::find(oe.outer_cycle.begin(), oe.outer_cycle.end(), d.arc(e).tail) - oe.outer_cycle.begin());
            int pb = static_cast<int>(std::find(oe.outer_cycle.begin(), oe.outer_cycle.end(), d.arc(e).head) - oe.outer_cycle.begin());
            int gap = std::abs(pa - pb);
            bool on_cycle = gap == 1 || gap == n - 1;
            EXPECT_EQ(oe.arc_faces[e].size(), on_cycle ? 1u : 2u);
        }
    }
    EXPECT_GT(checked, 100);
}
