#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rydopt/embedding.hpp"
#include "rydopt/rng.hpp"
#include "support/fixtures.hpp"

using namespace rydopt;
using namespace rydopt::testing;

namespace {

double mean_center_leaf_distance(const Register& reg) {
    double total = 0.0;
    for (int leaf = 1; leaf < reg.size(); ++leaf)
        total += distance(reg.positions_um[0], reg.positions_um[leaf]);
    return total / (reg.size() - 1);
}

}  // namespace

TEST_CASE("fr layout basics") {
    SUBCASE("single node stays at the origin") {
        const auto fr = fr_layout(make_graph(1, {}), {}, LayoutParams{});
        REQUIRE(fr.positions.size() == 1);
        CHECK(fr.positions[0].x == 0.0);
        CHECK(fr.positions[0].y == 0.0);
    }
    SUBCASE("K2 settles near the natural spring length k") {
        const Graph k2 = make_graph(2, {{0, 1}});
        const double k = std::sqrt(1.0 / 2.0);
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            LayoutParams p;
            p.seed = seed;
            const auto fr = fr_layout(k2, {}, p);
            const double r = distance(fr.positions[0], fr.positions[1]);
            CHECK(std::abs(r - k) / k < 0.05);
        }
    }
    SUBCASE("deterministic per seed") {
        const Graph g = gen_erdos_renyi(8, 0.4, 5);
        LayoutParams p;
        p.seed = 31;
        const auto a = fr_layout(g, {}, p);
        const auto b = fr_layout(g, {}, p);
        REQUIRE(a.positions.size() == b.positions.size());
        for (std::size_t i = 0; i < a.positions.size(); ++i) {
            CHECK(a.positions[i].x == b.positions[i].x);
            CHECK(a.positions[i].y == b.positions[i].y);
        }
    }
    SUBCASE("energy magnitude shrinks toward equilibrium in aggregate") {
        // The repulsive part of the total energy is negative, so from a
        // crowded random start the signed energy rises toward its
        // equilibrium value; what cooling buys is a shrinking magnitude.
        double first_sum = 0.0, final_sum = 0.0;
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            const Graph g = gen_erdos_renyi(8, 0.35, 300 + seed);
            LayoutParams p;
            p.seed = seed;
            const auto fr = fr_layout(g, {}, p);
            REQUIRE(!fr.energy_trace.empty());
            first_sum += std::abs(fr.energy_trace.front());
            final_sum += std::abs(fr.energy_trace.back());
        }
        CHECK(final_sum <= first_sum);
    }
    SUBCASE("translation invariant after centering") {
        const Graph g = gen_erdos_renyi(7, 0.5, 8);
        Rng rng(2);
        std::vector<Vec2> init(7), shifted(7);
        for (int i = 0; i < 7; ++i) {
            init[i] = {rng.uniform(), rng.uniform()};
            shifted[i] = {init[i].x + 100.0, init[i].y - 50.0};
        }
        LayoutParams p;
        const auto a = fr_layout(g, {}, p, init);
        const auto b = fr_layout(g, {}, p, shifted);
        const auto center = [](std::vector<Vec2> pos) {
            Register r;
            r.positions_um = std::move(pos);
            const Vec2 c = r.centroid();
            for (auto& q : r.positions_um) {
                q.x -= c.x;
                q.y -= c.y;
            }
            return r;
        };
        const Register ra = center(a.positions), rb = center(b.positions);
        for (int i = 0; i < 7; ++i) {
            CHECK(std::abs(ra.positions_um[i].x - rb.positions_um[i].x) < 1e-9);
            CHECK(std::abs(ra.positions_um[i].y - rb.positions_um[i].y) < 1e-9);
        }
    }
}

TEST_CASE("layout weights") {
    const Graph g = gen_erdos_renyi(9, 0.5, 12);
    SUBCASE("spring weights are all one") {
        for (double w : layout_weights(g, LayoutKind::Spring, 4)) CHECK(w == 1.0);
    }
    SUBCASE("random weights live in (0.1, 2.0) and reproduce per seed") {
        const auto w1 = layout_weights(g, LayoutKind::RandomWeightSpring, 4);
        const auto w2 = layout_weights(g, LayoutKind::RandomWeightSpring, 4);
        CHECK(w1 == w2);
        for (double w : w1) {
            CHECK(w >= 0.1);
            CHECK(w <= 2.0);
        }
    }
    SUBCASE("inverse weights negate the weighted ones") {
        const auto ww = layout_weights(g, LayoutKind::WeightedSpring, 4);
        const auto wi = layout_weights(g, LayoutKind::InverseWeightSpring, 4);
        REQUIRE(ww.size() == wi.size());
        for (std::size_t e = 0; e < ww.size(); ++e) CHECK(wi[e] == -ww[e]);
    }
    SUBCASE("weighted weights are neighborhood products") {
        const auto ww = layout_weights(g, LayoutKind::WeightedSpring, 4);
        const auto deg = g.degrees();
        for (std::size_t e = 0; e < g.edges.size(); ++e)
            CHECK(ww[e] == static_cast<double>(deg[g.edges[e].first]) * deg[g.edges[e].second]);
    }
}

TEST_CASE("rescale to constraints") {
    SUBCASE("two points one micrometer apart scale to the log midpoint") {
        const std::vector<Vec2> pos = {{0, 0}, {1, 0}};
        const Register reg = rescale_to_constraints(pos);
        // alpha in [4, 100], log midpoint 20
        CHECK(distance(reg.positions_um[0], reg.positions_um[1]) == doctest::Approx(20.0));
        CHECK(reg.min_pairwise_distance() >= 4.0);
    }
    SUBCASE("clustered pair plus far outlier is infeasible") {
        const std::vector<Vec2> pos = {{0, 0}, {0.001, 0}, {100, 0}};
        CHECK_THROWS_AS(rescale_to_constraints(pos), EmbeddingInfeasible);
    }
    SUBCASE("unit-spacing grid is feasible") {
        Register raw = grid3x3_register(1.0);
        const Register reg = rescale_to_constraints(raw.positions_um);
        CHECK(reg.min_pairwise_distance() >= 4.0);
        CHECK(reg.max_centroid_distance() <= 50.0);
    }
    SUBCASE("single atom is centered") {
        const std::vector<Vec2> pos = {{7, 9}};
        const Register reg = rescale_to_constraints(pos);
        CHECK(reg.positions_um[0].x == 0.0);
        CHECK(reg.positions_um[0].y == 0.0);
    }
    SUBCASE("coincident atoms are infeasible") {
        const std::vector<Vec2> pos = {{1, 1}, {1, 1}};
        CHECK_THROWS_AS(rescale_to_constraints(pos), EmbeddingInfeasible);
    }
}

TEST_CASE("make register") {
    SUBCASE("K3 spring register is an equilateral triangle") {
        LayoutParams p;
        p.seed = 3;
        const Register reg = make_register(make_graph(3, {{0, 1}, {1, 2}, {0, 2}}), LayoutKind::Spring, p);
        const double a = distance(reg.positions_um[0], reg.positions_um[1]);
        const double b = distance(reg.positions_um[1], reg.positions_um[2]);
        const double c = distance(reg.positions_um[0], reg.positions_um[2]);
        const double lo = std::min({a, b, c});
        const double hi = std::max({a, b, c});
        CHECK((hi - lo) / lo < 0.02);
    }
    SUBCASE("output satisfies the register invariants or raises") {
        const DeviceConstraints c;
        int produced = 0;
        for (std::uint64_t seed = 0; seed < 12; ++seed) {
            const Graph g = gen_erdos_renyi(8, 0.45, 600 + seed);
            for (LayoutKind kind : kAllLayoutKinds) {
                LayoutParams p;
                p.seed = seed;
                try {
                    const Register reg = make_register(g, kind, p, c);
                    CHECK(reg.min_pairwise_distance() >= c.min_distance_um - 1e-9);
                    CHECK(reg.max_centroid_distance() <= c.max_radius_um + 1e-9);
                    ++produced;
                } catch (const EmbeddingInfeasible&) {
                    // acceptable outcome: the layout cannot be scaled into range
                }
            }
        }
        CHECK(produced > 30);  // infeasibility stays the exception, not the rule
    }
    SUBCASE("random-weight registers reproduce bit-for-bit at the json level") {
        const Graph g = gen_erdos_renyi(7, 0.5, 21);
        LayoutParams p;
        p.seed = 9;
        const Register a = make_register(g, LayoutKind::RandomWeightSpring, p);
        const Register b = make_register(g, LayoutKind::RandomWeightSpring, p);
        CHECK(register_to_string(a) == register_to_string(b));
    }
    SUBCASE("weighted spring pulls star leaves toward the hub") {
        // K_{1,4}: hub vertex 0, leaves 1..4. Weighted layout multiplies the
        // hub edges by N(0)N(leaf) = 4, contracting the raw layout. The
        // comparison runs on the raw positions: the constraint rescale
        // normalizes overall scale away for shapes this symmetric.
        const Graph star = make_graph(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            LayoutParams p;
            p.seed = seed;
            const auto plain = fr_layout(star, layout_weights(star, LayoutKind::Spring, seed), p);
            const auto weighted =
                fr_layout(star, layout_weights(star, LayoutKind::WeightedSpring, seed), p);
            Register rp, rw;
            rp.positions_um = plain.positions;
            rw.positions_um = weighted.positions;
            CHECK(mean_center_leaf_distance(rw) < mean_center_leaf_distance(rp));
        }
    }
}

TEST_CASE("parametrized registers") {
    const auto tmpl = concentric_triangle_template();
    SUBCASE("equal radii put six atoms on one circle plus the center") {
        const double params[2] = {10.0, 10.0};
        const Register reg = parametrized_register(tmpl, params);
        REQUIRE(reg.size() == 7);
        for (int v = 0; v < 6; ++v)
            CHECK(distance(reg.positions_um[v], reg.positions_um[6]) == doctest::Approx(10.0));
        CHECK(reg.positions_um[6].x == doctest::Approx(0.0));
        CHECK(reg.min_pairwise_distance() > 4.0);
    }
    SUBCASE("outer triangle side follows the circumradius geometry") {
        const double params[2] = {16.0, 8.0};
        const Register reg = parametrized_register(tmpl, params);
        const double side = distance(reg.positions_um[3], reg.positions_um[4]);
        CHECK(side == doctest::Approx(16.0 * std::sqrt(3.0)));
    }
    SUBCASE("radii below the min-distance geometry are rejected") {
        const double params[2] = {2.0, 1.0};  // sides below 4 um
        CHECK_THROWS_AS(parametrized_register(tmpl, params), EmbeddingInfeasible);
    }
    SUBCASE("parameter count is validated") {
        const double params[1] = {10.0};
        CHECK_THROWS(parametrized_register(tmpl, params));
    }
}
