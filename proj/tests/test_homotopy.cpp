#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "coarsedeg/coarsedeg.hpp"

using namespace coarsedeg;
using Catch::Approx;

namespace {

std::vector<Window> ladder2(std::initializer_list<std::int64_t> widths) {
    std::vector<Window> out;
    for (const std::int64_t w : widths) out.push_back(make_window(2, w));
    return out;
}

} // namespace

TEST_CASE("linear homotopy endpoints and midpoints") {
    const HomotopyFamily fam = linear_homotopy(translation_map({3.0, 0.0}));
    const WorldPoint x = {7.3, -2.1};

    SECTION("t = 0 is the antipodal map") {
        const WorldPoint y = fam.eval(0.0, x);
        REQUIRE(y[0] == Approx(-7.3).margin(1e-15));
        REQUIRE(y[1] == Approx(2.1).margin(1e-15));
    }
    SECTION("t = 1 is the target map") {
        const WorldPoint y = fam.eval(1.0, x);
        REQUIRE(y[0] == Approx(10.3).margin(1e-15));
        REQUIRE(y[1] == Approx(-2.1).margin(1e-15));
    }
    SECTION("a translation collapses to a constant at t = 1/2") {
        for (const double x0 : {-9.0, -1.25, 0.0, 4.5}) {
            const WorldPoint y = fam.eval(0.5, {x0, x0 / 3.0});
            REQUIRE(y[0] == Approx(1.5).margin(1e-12));
            REQUIRE(y[1] == Approx(0.0).margin(1e-12));
        }
    }
    SECTION("half-space maps are rejected") {
        REQUIRE_THROWS_AS(linear_homotopy(parse_map_text("identity", 2, true)),
                          DomainViolationError);
    }
}

TEST_CASE("generic homotopy interpolation") {
    const HomotopyFamily fam = generic_homotopy(
        {{0.0, antipodal_map(2)}, {1.0, identity_map(2)}});
    const WorldPoint x = {4.0, -6.0};

    SECTION("knot values are hit exactly and t is clamped") {
        REQUIRE(fam.eval(0.0, x)[0] == -4.0);
        REQUIRE(fam.eval(1.0, x)[0] == 4.0);
        REQUIRE(fam.eval(-0.5, x)[0] == -4.0);
        REQUIRE(fam.eval(1.5, x)[0] == 4.0);
    }
    SECTION("the midpoint averages the two knot maps") {
        const WorldPoint y = fam.eval(0.5, x);
        REQUIRE(y[0] == Approx(0.0).margin(1e-12));
        REQUIRE(y[1] == Approx(0.0).margin(1e-12));
    }
    SECTION("interpolation weight is linear between knots") {
        const WorldPoint y = fam.eval(0.25, x);
        REQUIRE(y[0] == Approx(-2.0).margin(1e-12));
        REQUIRE(y[1] == Approx(3.0).margin(1e-12));
    }
    SECTION("validation") {
        REQUIRE_THROWS_AS(generic_homotopy({{0.0, identity_map(2)}}), CoarseError);
        REQUIRE_THROWS_AS(
            generic_homotopy({{0.5, identity_map(2)}, {0.5, antipodal_map(2)}}),
            CoarseError);
        REQUIRE_THROWS_AS(
            generic_homotopy({{0.7, identity_map(2)}, {0.2, antipodal_map(2)}}),
            CoarseError);
        REQUIRE_THROWS_AS(
            generic_homotopy({{0.0, identity_map(2)}, {1.0, identity_map(3)}}),
            CoarseError);
    }
}

TEST_CASE("uniform t-grid") {
    const std::vector<double> g = uniform_t_grid(11);
    REQUIRE(g.size() == 11);
    REQUIRE(g.front() == 0.0);
    REQUIRE(g.back() == 1.0);
    for (std::size_t i = 0; i < g.size(); ++i)
        REQUIRE(g[i] == static_cast<double>(i) / 10.0);
    REQUIRE_THROWS_AS(uniform_t_grid(1), CoarseError);
}

TEST_CASE("uniform bornologous modulus over a family") {
    const Window w = make_window(2, 16);
    const std::vector<double> radii = {1.0, 2.0, 3.0, 4.0};
    const std::vector<double> grid = uniform_t_grid(11);

    SECTION("the antipodal family is an isometry for every t") {
        const HomotopyFamily fam = linear_homotopy(antipodal_map(2));
        const BornologousModulus mod =
            check_uniformly_bornologous(fam, radii, grid, w, 100, 1);
        for (std::size_t i = 0; i < radii.size(); ++i) {
            REQUIRE(mod.s_values[i] >= radii[i] - 1e-9);
            REQUIRE(mod.s_values[i] <= radii[i] + 1e-9);
        }
    }
    SECTION("S is monotone in R even for stretching families") {
        const HomotopyFamily fam = linear_homotopy(scaling_map(2, 3.0));
        const BornologousModulus mod =
            check_uniformly_bornologous(fam, radii, grid, w, 100, 1);
        for (std::size_t i = 1; i < radii.size(); ++i)
            REQUIRE(mod.s_values[i] >= mod.s_values[i - 1]);
        // at t = 1 the family stretches by 3, so S(R) is at least 3R
        REQUIRE(mod.s_values[0] >= 3.0 - 1e-9);
    }
    SECTION("an empty t-grid is rejected") {
        const HomotopyFamily fam = linear_homotopy(antipodal_map(2));
        REQUIRE_THROWS_AS(check_uniformly_bornologous(fam, radii, {}, w, 10, 1),
                          CoarseError);
    }
}

TEST_CASE("uniform properness discriminates the two canonical families") {
    const std::vector<double> grid = uniform_t_grid(11);
    const std::vector<Window> ladder = ladder2({4, 8, 16, 32});

    SECTION("the antipodal family stays proper at scale") {
        const HomotopyFamily fam = linear_homotopy(antipodal_map(2));
        const UniformPropernessReport r = check_uniformly_proper(fam, 2.0, ladder, grid);
        REQUIRE(r.proper_at_scale);
        for (const double m : r.max_preimage_norm) REQUIRE(m <= 2.0 + 1e-9);
    }
    SECTION("the identity family is flagged: H_{1/2} crushes everything") {
        const HomotopyFamily fam = linear_homotopy(identity_map(2));
        const UniformPropernessReport r = check_uniformly_proper(fam, 2.0, ladder, grid);
        REQUIRE_FALSE(r.proper_at_scale);
        const std::size_t k = r.max_preimage_norm.size();
        REQUIRE(r.max_preimage_norm[k - 1] > 1.9 * r.max_preimage_norm[k - 2]);
    }
    SECTION("ladder validation") {
        const HomotopyFamily fam = linear_homotopy(antipodal_map(2));
        REQUIRE_THROWS_AS(check_uniformly_proper(fam, 2.0, {}, grid), CoarseError);
        REQUIRE_THROWS_AS(
            check_uniformly_proper(fam, 2.0, ladder2({8, 8}), grid), CoarseError);
        REQUIRE_THROWS_AS(
            check_uniformly_proper(fam, 2.0, ladder2({16, 8}), grid), CoarseError);
        REQUIRE_THROWS_AS(check_uniformly_proper(fam, 2.0, ladder, {}), CoarseError);
    }
}

TEST_CASE("pseudocontinuity jump measurement") {
    const Window w = make_window(2, 8);
    const std::vector<double> grid = uniform_t_grid(11);

    SECTION("the antipodal family has no jumps beyond rounding") {
        const PseudocontinuityReport r =
            check_pseudocontinuity(linear_homotopy(antipodal_map(2)), grid, w);
        REQUIRE(r.max_jump <= 1e-10);
        REQUIRE(r.refined_max_jump <= 1e-10);
        REQUIRE(r.grid_step == Approx(0.1).margin(1e-12));
        REQUIRE(r.refined_grid_step == Approx(0.05).margin(1e-12));
    }
    SECTION("for the identity family, refining the grid halves the jump") {
        const PseudocontinuityReport r =
            check_pseudocontinuity(linear_homotopy(identity_map(2)), grid, w);
        REQUIRE(r.max_jump > 0.0);
        REQUIRE(r.refined_max_jump < r.max_jump);
        REQUIRE(r.refined_max_jump == Approx(0.5 * r.max_jump).margin(1e-6));
        // worst jump realized at the window corner: 2 * 0.1 * |(8, 8)|
        REQUIRE(r.max_jump == Approx(0.2 * std::sqrt(128.0)).margin(1e-9));
    }
    SECTION("a one-knot grid is rejected") {
        REQUIRE_THROWS_AS(
            check_pseudocontinuity(linear_homotopy(antipodal_map(2)), {0.5}, w),
            CoarseError);
    }
}

TEST_CASE("growth constants of the builtin maps") {
    const Window w = make_window(2, 8);
    REQUIRE(growth_constant(identity_map(2), w) == Approx(1.0).margin(1e-12));
    REQUIRE(growth_constant(antipodal_map(2), w) == Approx(1.0).margin(1e-12));
    REQUIRE(growth_constant(rotation_map(2, kPi / 2.0), w) == Approx(1.0).margin(1e-9));
    REQUIRE(growth_constant(translation_map({5.0, 0.0}), w) == Approx(6.0).margin(1e-12));
    REQUIRE(growth_constant(scaling_map(2, 2.0), w) == Approx(2.0).margin(1e-12));
    REQUIRE(growth_constant(scaling_map(2, 0.25), w) == Approx(0.25).margin(1e-2));
}

TEST_CASE("segment geometry") {
    SECTION("a diameter chord meets every ball around the origin") {
        REQUIRE(segment_meets_ball({-5.0, 0.0}, {5.0, 0.0}, 1.0));
        REQUIRE(segment_meets_ball({-5.0, 0.0}, {5.0, 0.0}, 0.0));
    }
    SECTION("a far radial segment misses the unit ball") {
        REQUIRE_FALSE(segment_meets_ball({3.0, 4.0}, {6.0, 8.0}, 1.0));
        REQUIRE(segment_meets_ball({3.0, 4.0}, {6.0, 8.0}, 5.0));
    }
    SECTION("degenerate segments reduce to a point test") {
        REQUIRE(segment_meets_ball({0.5, 0.0}, {0.5, 0.0}, 1.0));
        REQUIRE_FALSE(segment_meets_ball({2.0, 0.0}, {2.0, 0.0}, 1.0));
    }
    SECTION("negative radii are rejected") {
        REQUIRE_THROWS_AS(segment_meets_ball({0.0, 0.0}, {1.0, 0.0}, -1.0), CoarseError);
    }
    SECTION("closest point on a vertical chord") {
        const WorldPoint p = segment_closest_to_origin({1.0, 1.0}, {1.0, -1.0});
        REQUIRE(p[0] == 1.0);
        REQUIRE(p[1] == 0.0);
    }
    SECTION("closest point clamps to an endpoint") {
        const WorldPoint p = segment_closest_to_origin({3.0, 4.0}, {6.0, 8.0});
        REQUIRE(p[0] == 3.0);
        REQUIRE(p[1] == 4.0);
    }
    SECTION("closest point of a degenerate segment is the point itself") {
        const WorldPoint p = segment_closest_to_origin({2.0, -1.0}, {2.0, -1.0});
        REQUIRE(p[0] == 2.0);
        REQUIRE(p[1] == -1.0);
    }
}

TEST_CASE("triangle bound holds for coarse maps") {
    const Window w = make_window(2, 32);

    SECTION("identity: every long segment through the ball obeys the bound") {
        for (const double T : {1.0, 2.0}) {
            const TriangleBound tb = triangle_bound_check(identity_map(2), T, w, 2000, 5);
            REQUIRE(tb.K == Approx(1.0).margin(1e-9));
            REQUIRE(tb.C == Approx(4.0).margin(1e-8));
            REQUIRE(tb.num_tested > 100);
            REQUIRE(tb.violations.empty());
            REQUIRE(tb.halfdist_violations.empty());
        }
    }
    SECTION("a small zoo of coarse maps produces no violations") {
        const std::vector<MapSpec> zoo = {
            antipodal_map(2),
            reflection_map(2, 0),
            rotation_map(2, kPi / 2.0),
            translation_map({5.0, 0.0}),
            scaling_map(2, 2.0),
        };
        for (const auto& m : zoo)
            for (const double T : {1.0, 2.0}) {
                const TriangleBound tb = triangle_bound_check(m, T, w, 2000, 5);
                REQUIRE(tb.violations.empty());
                REQUIRE(tb.halfdist_violations.empty());
                REQUIRE(tb.C == Approx(2.0 * (1.0 + tb.K)).margin(1e-12));
            }
    }
    SECTION("T must be positive") {
        REQUIRE_THROWS_AS(triangle_bound_check(identity_map(2), 0.0, w, 10, 0),
                          CoarseError);
    }
}
