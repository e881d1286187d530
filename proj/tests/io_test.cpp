#include <gtest/gtest.h>

#include <functional>

#include "ube/blocks.hpp"
#include "ube/generators.hpp"
#include "ube/io.hpp"

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

Dag diamond() { return Dag::from_edges({{"s", "a"}, {"s", "b"}, {"a", "t"}, {"b", "t"}}); }

} // namespace

TEST(GraphDocument, RoundTrip) {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        for (Family f : {Family::cactus, Family::biconnected_st_outerplanar, Family::random_dag}) {
            GenSpec s;
            s.family = f;
            s.n = 12;
            s.seed = seed;
            auto g = generate(s);
            GraphDocument doc{g.dag, std::nullopt};
            if (!g.cert.outer_cycle.empty()) doc.outer_face = g.cert.outer_cycle;
            auto text = dump_json(graph_to_json(doc));
            auto back = graph_from_json(Json::parse(text));
            EXPECT_EQ(back, doc);
            EXPECT_EQ(dump_json(graph_to_json(back)), text);
        }
    }
}

TEST(GraphDocument, OuterFaceUpToRotationAndReflection) {
    Json j = graph_to_json(diamond());
    j["outer_face"] = {"a", "t", "b", "s"};
    EXPECT_NO_THROW(graph_from_json(j));
    j["outer_face"] = {"s", "b", "t", "a"};
    EXPECT_NO_THROW(graph_from_json(j));
    j["outer_face"] = {"s", "t", "a", "b"};
    EXPECT_EQ(code_of([&] { graph_from_json(j); }), Errc::parse_error);
    j["outer_face"] = {"s", "a", "t"};
    EXPECT_EQ(code_of([&] { graph_from_json(j); }), Errc::parse_error);
}

TEST(GraphDocument, MalformedInput) {
    EXPECT_EQ(code_of([] { graph_from_json(Json::array()); }), Errc::parse_error);
    EXPECT_EQ(code_of([] { graph_from_json(Json{{"vertices", {"a"}}}); }), Errc::parse_error);
    EXPECT_EQ(code_of([] { graph_from_json(Json::parse(R"({"vertices":["a"],"edges":[["a"]]})")); }), Errc::parse_error);
    EXPECT_EQ(code_of([] { graph_from_json(Json::parse(R"({"vertices":["a","b"],"edges":[["a","c"]]})")); }),
              Errc::unknown_vertex);
    EXPECT_EQ(code_of([] { graph_from_json(Json::parse(R"({"vertices":["a","b"],"edges":[["a","b"],["b","a"]]})")); }),
              Errc::cycle_detected);
    EXPECT_EQ(code_of([] { parse_json_text("{", "inline"); }), Errc::parse_error);
}

TEST(EmbeddingDocument, RoundTripWithSeparation) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        GenSpec s;
        s.family = Family::cactus;
        s.n = 20;
        s.seed = seed;
        auto ps = embed_cactus(generate(s).dag);
        EmbeddingDocument doc{ps.embedding, {"cactus", 6, ps.block_pages}};
        auto text = dump_json(embedding_to_json(doc));
        auto back = embedding_from_json(Json::parse(text));
        EXPECT_EQ(back, doc);
        EXPECT_EQ(dump_json(embedding_to_json(back)), text);
    }
}

TEST(EmbeddingDocument, EdgeKeysWithArrowsInNames) {
    std::set<VertexName> vs{"a->b", "c", "a", "b->c"};
    EXPECT_EQ(parse_edge_key("a->b->c", {"a->b", "c"}), (EdgeName{"a->b", "c"}));
    EXPECT_EQ(code_of([&] { parse_edge_key("a->b->c", vs); }), Errc::parse_error);
    EXPECT_EQ(code_of([&] { parse_edge_key("x->y", vs); }), Errc::parse_error);
}

TEST(EmbeddingDocument, KeysAreSorted) {
    BookEmbedding b;
    b.order = {"s", "a", "b", "t"};
    b.pages = {{{"s", "b"}, 1}, {{"a", "t"}, 2}, {{"s", "a"}, 1}, {{"b", "t"}, 1}};
    b.recount();
    auto text = dump_json(embedding_to_json({b, {"manual", std::nullopt, std::nullopt}}));
    EXPECT_LT(text.find("\"a->t\""), text.find("\"b->t\""));
    EXPECT_LT(text.find("\"b->t\""), text.find("\"s->a\""));
    EXPECT_LT(text.find("\"meta\""), text.find("\"num_pages\""));
}

TEST(Files, MissingFileIsIoFailure) {
    EXPECT_EQ(code_of([] { load_graph("/nonexistent/graph.json"); }), Errc::io_failure);
    EXPECT_EQ(code_of([] { write_text("/nonexistent/dir/out.json", "x"); }), Errc::io_failure);
}

TEST(Dot, SpineOrderAndPageColours) {
    BookEmbedding b;
    b.order = {"s", "b", "a", "t"};
    b.pages = {{{"s", "a"}, 1}, {{"s", "b"}, 1}, {{"a", "t"}, 1}, {{"b", "t"}, 2}};
    auto dot = to_dot(diamond(), b);
    EXPECT_EQ(dot.rfind("digraph", 0), 0u);
    EXPECT_EQ(dot.back(), '\n');
    EXPECT_LT(dot.find("\"s\";"), dot.find("\"b\";"));
    EXPECT_LT(dot.find("\"b\";"), dot.find("\"a\";"));
    EXPECT_NE(dot.find("\"b\" -> \"t\" [color=red"), std::string::npos);
    EXPECT_NE(dot.find("\"s\" -> \"a\" [color=black"), std::string::npos);
    EXPECT_EQ(std::count(dot.begin(), dot.end(), '{'), std::count(dot.begin(), dot.end(), '}'));
}

TEST(Dot, QuotesNames) {
    auto g = Dag::from_edges({{"a\"b", "c"}});
    auto dot = to_dot(g);
    EXPECT_NE(dot.find("\"a\\\"b\""), std::string::npos);
}
