// Exact thickness, the three-page reduction and the vertex-cover kernel on small inputs.
#include <cstdio>

#include "ube/ube.hpp"

using namespace ube;

namespace {

int ubt(const Dag& g, int kmax) {
    auto r = exact_ubt(g, kmax);
    return r.ubt ? *r.ubt : -1;
}

} // namespace

int main() {
    const Dag path = Dag::from_edges({{"x", "y"}, {"y", "z"}});
    const Dag diamond = Dag::from_edges({{"s", "a"}, {"s", "b"}, {"a", "t"}, {"b", "t"}});
    std::printf("ubt(path)=%d ubt(diamond)=%d\n", ubt(path, 3), ubt(diamond, 3));

    for (int k = 1; k <= 2; ++k) std::printf("ubt(H_%d)=%d\n", k, ubt(build_auxiliary(k), k + 4));
    for (const auto& [name, g] : {std::pair{"path", path}, std::pair{"diamond", diamond}}) {
        Gadget gd = build_reduction(g, 1);
        auto r = exact_ubt(gd.g_prime, 4);
        std::printf("G' of %s: %d vertices, ubt=%d, three pages %s\n", name, gd.g_prime.vertex_count(), r.ubt ? *r.ubt : -1,
                    r.ubt == 3 ? "suffice" : "do not suffice");
    }

    GenSpec spec;
    spec.family = Family::random_dag;
    spec.n = 9;
    spec.seed = 11;
    Dag g = generate(spec).dag;
    auto ctx = vertex_cover(g, g.vertex_count());
    std::printf("random DAG: n=%d m=%d tau=%d\n", g.vertex_count(), g.edge_count(), ctx->tau());
    for (int k = 1; k <= 3; ++k) {
        KernelInstance ki = kernelize(g, *ctx, k);
        FptResult d = fpt_decide(g, k);
        std::printf("  k=%d kernel=%d vertices, ubt<=k: %s\n", k, ki.reduced.vertex_count(), d.yes ? "yes" : "no");
    }
}
