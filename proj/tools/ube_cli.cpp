#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ube/ube.hpp"

using namespace ube;

namespace {

enum Exit { ok = 0, invalid = 1, mismatch = 2, io = 3, internal = 4, resource = 5 };

struct ClassInfo {
    int bound;
    const char* algorithm;
};

const std::map<std::string, ClassInfo>& classes() {
    static const std::map<std::string, ClassInfo> m{
        {"one-sided", {1, "one_sided"}},      {"fan", {2, "st_fan"}},
        {"st-outerpath", {4, "st_outerpath"}}, {"outerpath", {16, "upward_outerpath"}},
        {"st-outerplanar", {4, "biconnected_st_outerplanar"}},
        {"st-blocks", {8, "st_blocks"}},      {"cactus", {6, "cactus"}},
    };
    return m;
}

EdgeName parse_pair(const std::string& s) {
    auto comma = s.find(',');
    if (comma == std::string::npos) fail(Errc::parse_error, "expected u,v but got " + s);
    return {s.substr(0, comma), s.substr(comma + 1)};
}

VertexName only(const Dag& g, const std::vector<int>& vs, const char* what) {
    if (vs.size() != 1) fail(Errc::multi_source_sink, std::string("graph has no unique ") + what);
    return g.name(vs[0]);
}

EmbeddingDocument embed_class(const std::string& cls, const Dag& g, const std::optional<std::string>& edge) {
    EmbeddingDocument doc;
    const auto& info = classes().at(cls);
    doc.meta.algorithm = info.algorithm;
    doc.meta.bound = info.bound;
    if (cls == "one-sided") {
        doc.embedding = embed_one_sided(g, only(g, g.sources(), "source"), only(g, g.sinks(), "sink"));
    } else if (cls == "fan") {
        EdgeName uv;
        if (edge) {
            uv = parse_pair(*edge);
        } else {
            auto f = fan_shape(g);
            uv = {f.s, f.left.empty() ? f.right.front() : f.left.front()};
        }
        doc.embedding = embed_st_fan(g, uv);
    } else if (cls == "st-outerpath") {
        EdgeName e;
        if (edge) {
            e = parse_pair(*edge);
        } else {
            auto el = eligible_edges(g);
            if (el.empty()) fail(Errc::ineligible_edge, "no eligible outer edge");
            e = el.front();
        }
        doc.embedding = embed_st_outerpath(g, e);
    } else if (cls == "outerpath") {
        doc.embedding = embed_upward_outerpath(g);
    } else if (cls == "st-outerplanar") {
        doc.embedding = embed_biconnected_st_outerplanar(g);
    } else {
        auto ps = cls == "st-blocks" ? embed_st_blocks(g) : embed_cactus(g);
        doc.embedding = ps.embedding;
        doc.meta.page_separation = ps.block_pages;
    }
    return doc;
}

Json report_json(const ValidationReport& r) {
    Json j;
    j["valid"] = r.valid();
    j["topological"] = r.topological_ok;
    Json back = Json::array();
    for (const auto& e : r.backward_edges) back.push_back(edge_key(e));
    j["backward_edges"] = back;
    Json cr = Json::array();
    for (const auto& c : r.crossings) cr.push_back({{"first", edge_key(c.first)}, {"second", edge_key(c.second)}, {"page", c.page}});
    j["crossings"] = cr;
    j["pages_used"] = r.pages_used;
    j["max_page"] = r.max_page;
    j["within_page_limit"] = r.within_page_limit;
    return j;
}

Json type_json(const TypeSignature& t) {
    Json a = Json::array();
    for (const auto& [c, into] : t) a.push_back({{"cover", c}, {"direction", into ? "from_cover" : "to_cover"}});
    return a;
}

std::uint64_t default_seed() {
    if (const char* s = std::getenv("UBE_SEED")) return std::strtoull(s, nullptr, 10);
    return 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Upward book embeddings of outerplanar DAGs"};
    app.require_subcommand(1);

    std::string in, out, graph_file, emb_file, cls, family;
    std::optional<std::string> edge, consecutive, source, sink, emb_opt;
    std::optional<int> max_pages_opt;
    std::optional<std::uint64_t> max_nodes, seed;
    int k = 0, max_pages = 0, n = 0;
    std::vector<std::string> extras;
    std::vector<std::string> class_names;
    for (const auto& [name, info] : classes()) class_names.push_back(name);

    auto* embed = app.add_subcommand("embed", "Embed a graph of a recognised class");
    embed->add_option("--class", cls, "Input class")->required()->check(CLI::IsMember(class_names));
    embed->add_option("--in", in, "Graph document")->required();
    embed->add_option("--out", out, "Embedding document")->required();
    embed->add_option("--edge", edge, "Edge u,v to keep consecutive");

    auto* verify = app.add_subcommand("verify", "Validate an embedding against a graph");
    verify->add_option("--graph", graph_file, "Graph document")->required();
    verify->add_option("--embedding", emb_file, "Embedding document")->required();
    verify->add_option("--max-pages", max_pages_opt, "Page limit");
    verify->add_option("--consecutive", consecutive, "Edge u,v that must be consecutive");
    verify->add_option("--source", source, "Source for the consecutiveness check");
    verify->add_option("--sink", sink, "Sink for the consecutiveness check");

    auto* exact = app.add_subcommand("exact", "Exact upward book thickness");
    exact->add_option("--in", in, "Graph document")->required();
    exact->add_option("--max-pages", max_pages, "Largest page count to try")->required();
    exact->add_option("--out", out, "Witness embedding document");
    exact->add_option("--max-nodes", max_nodes, "Search node budget");

    auto* gadget = app.add_subcommand("gadget", "Build the reduction graph for a given k");
    gadget->add_option("--in", in, "Graph document")->required();
    gadget->add_option("--k", k, "Page parameter")->required();
    gadget->add_option("--out", out, "Graph document of the reduction")->required();

    auto* kernel = app.add_subcommand("kernel", "Vertex-cover kernel for a given k");
    kernel->add_option("--in", in, "Graph document")->required();
    kernel->add_option("--k", k, "Page parameter")->required();
    kernel->add_option("--out", out, "Kernel document")->required();

    auto* decide = app.add_subcommand("decide", "Decide whether k pages suffice");
    decide->add_option("--in", in, "Graph document")->required();
    decide->add_option("--k", k, "Page parameter")->required();
    decide->add_option("--out", out, "Witness embedding document");
    decide->add_option("--max-nodes", max_nodes, "Search node budget for the kernel");

    auto* gen = app.add_subcommand("gen", "Generate a seeded instance");
    gen->add_option("--family", family, "Family name")->required();
    gen->add_option("--n", n, "Vertex count")->required();
    gen->add_option("--seed", seed, "Seed (default: UBE_SEED or 1)");
    gen->add_option("--set", extras, "Family knob key=value");
    gen->add_option("--out", out, "Graph document")->required();

    auto* dot = app.add_subcommand("dot", "Graphviz export");
    dot->add_option("--graph", graph_file, "Graph document")->required();
    dot->add_option("--embedding", emb_opt, "Embedding document");
    dot->add_option("--out", out, "DOT file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*embed) {
            auto g = load_graph(in).dag;
            EmbeddingDocument doc;
            try {
                doc = embed_class(cls, g, edge);
            } catch (const Error& e) {
                if (e.code() == Errc::internal_invariant) throw;
                std::cerr << e.what() << "\n";
                return mismatch;
            }
            auto rep = validate(g, doc.embedding, *doc.meta.bound);
            if (!rep.valid()) {
                std::cerr << "InternalInvariant: embedding failed validation\n";
                return internal;
            }
            save_embedding(out, doc);
            std::cout << "class=" << cls << " pages=" << doc.embedding.pages_used() << " bound=" << *doc.meta.bound << "\n";
            return ok;
        }
        if (*verify) {
            auto g = load_graph(graph_file).dag;
            auto doc = load_embedding(emb_file);
            Json j;
            bool good;
            try {
                auto rep = validate(g, doc.embedding, max_pages_opt);
                j = report_json(rep);
                good = rep.valid();
            } catch (const Error& e) {
                if (e.code() != Errc::domain_mismatch) throw;
                j["valid"] = false;
                j["error"] = e.what();
                good = false;
            }
            if (consecutive && good) {
                auto uv = parse_pair(*consecutive);
                VertexName s = source ? *source : only(g, g.sources(), "source");
                VertexName t = sink ? *sink : only(g, g.sinks(), "sink");
                auto c = check_uv_consecutive(g, doc.embedding, uv, s, t);
                j["consecutive"] = {{"ok", c.ok}, {"reasons", c.reasons}};
                good = good && c.ok;
            }
            j["valid"] = good;
            std::cout << dump_json(j);
            return good ? ok : invalid;
        }
        if (*exact) {
            auto g = load_graph(in).dag;
            auto r = exact_ubt(g, max_pages, max_nodes);
            if (r.too_large)
                std::cerr << "TooLarge: " << g.vertex_count() << " vertices exceeds the recommended " << exact_size_threshold << "\n";
            if (r.ubt) {
                std::cout << "ubt=" << *r.ubt << "\n";
                if (!out.empty()) save_embedding(out, {*r.witness, {"exact", std::nullopt, std::nullopt}});
            } else {
                std::cout << "ubt>" << max_pages << "\n";
            }
            std::cout << "nodes=" << r.nodes_explored << "\n";
            return ok;
        }
        if (*gadget) {
            auto g = load_graph(in).dag;
            auto gd = build_reduction(g, k);
            save_graph(out, {gd.g_prime, std::nullopt});
            std::cout << "vertices=" << gd.g_prime.vertex_count() << " edges=" << gd.g_prime.edge_count()
                      << " target_pages=" << k + 2 << "\n";
            return ok;
        }
        if (*kernel) {
            auto g = load_graph(in).dag;
            auto ctx = *vertex_cover(g, g.vertex_count());
            auto ki = kernelize(g, ctx, k);
            Json j;
            j["k"] = k;
            j["tau"] = ki.context.tau();
            j["cover"] = ki.context.cover;
            j["reduced"] = graph_to_json(ki.reduced);
            Json rem = Json::array();
            for (const auto& r : ki.removed)
                rem.push_back({{"vertex", r.vertex}, {"type", type_json(r.type)}, {"representative", r.representative}});
            j["removed"] = rem;
            write_text(out, dump_json(j));
            std::cout << "tau=" << ki.context.tau() << " removed=" << ki.removed.size()
                      << " kernel_vertices=" << ki.reduced.vertex_count() << "\n";
            return ok;
        }
        if (*decide) {
            auto g = load_graph(in).dag;
            auto r = max_nodes ? fpt_decide(g, k, *max_nodes) : fpt_decide(g, k);
            std::cout << (r.yes ? "yes" : "no") << "\ntau=" << r.tau << "\n";
            if (r.kernel_vertices) std::cout << "kernel_vertices=" << *r.kernel_vertices << "\n";
            if (r.yes && !out.empty()) save_embedding(out, {*r.witness, {"fpt", k, std::nullopt}});
            return ok;
        }
        if (*gen) {
            GenSpec s;
            std::string f = family;
            std::replace(f.begin(), f.end(), '-', '_');
            s.family = parse_family(f);
            s.n = n;
            s.seed = seed ? *seed : default_seed();
            for (const auto& kv : extras) {
                auto eq = kv.find('=');
                if (eq == std::string::npos) fail(Errc::parse_error, "expected key=value but got " + kv);
                s.extras[kv.substr(0, eq)] = std::stoi(kv.substr(eq + 1));
            }
            auto g = generate(s);
            GraphDocument doc{g.dag, std::nullopt};
            if (!g.cert.outer_cycle.empty()) doc.outer_face = g.cert.outer_cycle;
            save_graph(out, doc);
            std::cout << "family=" << family_name(s.family) << " n=" << g.dag.vertex_count() << " m=" << g.dag.edge_count()
                      << " seed=" << s.seed << "\n";
            return ok;
        }
        if (*dot) {
            auto g = load_graph(graph_file).dag;
            std::optional<BookEmbedding> b;
            if (emb_opt) b = load_embedding(*emb_opt).embedding;
            write_text(out, to_dot(g, b));
            return ok;
        }
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        switch (e.code()) {
        case Errc::io_failure:
        case Errc::parse_error: return io;
        case Errc::internal_invariant: return internal;
        case Errc::resource_limit: return resource;
        default: return mismatch;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return io;
    }
    return ok;
}
