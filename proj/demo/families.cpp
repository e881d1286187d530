// Embeds one generated instance per family and prints pages against bound.
#include <cstdio>

#include "ube/ube.hpp"

using namespace ube;

int main() {
    struct Row {
        Family family;
        int bound;
    };
    const Row rows[] = {{Family::one_sided, 1},         {Family::st_fan, 2},
                        {Family::st_outerpath, 4},      {Family::upward_outerpath, 16},
                        {Family::biconnected_st_outerplanar, 4}, {Family::st_blocks, 8},
                        {Family::cactus, 6}};
    std::printf("%-28s %4s %4s %6s %6s %5s\n", "family", "n", "m", "pages", "bound", "valid");
    for (const auto& [f, bound] : rows) {
        GenSpec spec;
        spec.family = f;
        spec.n = 40;
        spec.seed = 7;
        Dag g = generate(spec).dag;
        const VertexName s = g.name(g.sources()[0]), t = g.name(g.sinks()[0]);
        BookEmbedding b;
        switch (f) {
        case Family::one_sided: b = embed_one_sided(g, s, t); break;
        case Family::st_fan: {
            OuterEmbedding oe = recover_outer_embedding(g);
            for (int e = 0; e < g.edge_count(); ++e)
                if (oe.is_outer_arc(e) && g.edge_name(e) != EdgeName{s, t}) {
                    b = embed_st_fan(g, g.edge_name(e));
                    break;
                }
            break;
        }
        case Family::st_outerpath: b = embed_st_outerpath(g, eligible_edges(g).front()); break;
        case Family::upward_outerpath: b = embed_upward_outerpath(g); break;
        case Family::biconnected_st_outerplanar: b = embed_biconnected_st_outerplanar(g); break;
        case Family::st_blocks: b = embed_st_blocks(g).embedding; break;
        default: b = embed_cactus(g).embedding; break;
        }
        std::printf("%-28s %4d %4d %6d %6d %5s\n", family_name(f).c_str(), g.vertex_count(), g.edge_count(),
                    b.pages_used(), bound, validate(g, b, bound).valid() ? "yes" : "no");
    }
}
