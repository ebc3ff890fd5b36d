#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "coarsedeg/coarsedeg.hpp"
#include "oracle_helpers.hpp"

using namespace coarsedeg;

TEST_CASE("pushforward") {
    SECTION("identity vertex map leaves chains unchanged") {
        const Chain c = fundamental_cycle(make_window(2, 2));
        const Chain p = pushforward(c, [](const LatticePoint& v) { return v; });
        REQUIRE(p == c);
    }
    SECTION("constant vertex map degenerates tuples; boundary is zero") {
        Chain c = Chain::zero(1, 1);
        c.add_tuple({{0}, {1}}, 1);
        const Chain p =
            pushforward(c, [](const LatticePoint& v) { return LatticePoint(v.size(), 7); });
        REQUIRE(p.terms.size() == 1);
        REQUIRE(p.terms.count({7, 7}) == 1);
        REQUIRE(boundary(p).is_zero());
    }
    SECTION("reflection of the 1-D fundamental cycle keeps vertex order") {
        const Chain c = fundamental_cycle(make_window(1, 2));
        const VertexMap vm = vertex_map(reflection_map(1, 0), 1.0);
        const Chain p = pushforward(c, vm);
        REQUIRE(p.terms.size() == 4);
        REQUIRE(p.terms.at({2, 1}) == 1);
        REQUIRE(p.terms.at({1, 0}) == 1);
        REQUIRE(p.terms.at({0, -1}) == 1);
        REQUIRE(p.terms.at({-1, -2}) == 1);
    }
    SECTION("merging: a 2-to-1 vertex map adds coefficients") {
        Chain c = Chain::zero(1, 1);
        c.add_tuple({{0}, {1}}, 1);
        c.add_tuple({{2}, {3}}, 1);
        const Chain p = pushforward(c, [](const LatticePoint& v) {
            LatticePoint out = v;
            for (auto& x : out) x = x % 2 == 0 ? x % 4 : (x % 4 + 4) % 4; // 0,1,2,3 -> 0,1,2,3
            for (auto& x : out) x = x >= 2 ? x - 2 : x;                   // fold onto {0,1}
            return out;
        });
        REQUIRE(p.terms.size() == 1);
        REQUIRE(p.terms.at({0, 1}) == 2);
    }
}

TEST_CASE("chain-map property on 500 seeded cases") {
    Rng rng(2024);
    for (int trial = 0; trial < 500; ++trial) {
        const int dim = static_cast<int>(rng.uniform_int(1, 3));
        const int q = static_cast<int>(rng.uniform_int(1, 3));
        const Chain c = oracle::random_chain(rng, dim, q, 5, 5);

        // random affine lattice map: v -> A v + b with small integer entries
        std::vector<std::vector<std::int64_t>> a(static_cast<std::size_t>(dim),
                                                 std::vector<std::int64_t>(
                                                     static_cast<std::size_t>(dim)));
        std::vector<std::int64_t> b(static_cast<std::size_t>(dim));
        for (auto& row : a)
            for (auto& x : row) x = rng.uniform_int(-2, 2);
        for (auto& x : b) x = rng.uniform_int(-3, 3);
        const auto vm = [&](const LatticePoint& v) {
            LatticePoint out(v.size(), 0);
            for (std::size_t i = 0; i < v.size(); ++i) {
                for (std::size_t j = 0; j < v.size(); ++j) out[i] += a[i][j] * v[j];
                out[i] += b[i];
            }
            return out;
        };

        REQUIRE(boundary(pushforward(c, vm)) == pushforward(boundary(c), vm));
    }
}

TEST_CASE("covering numbers at hand-picked points") {
    SECTION("1-D fundamental cycle covers interior points once") {
        const Chain c = fundamental_cycle(make_window(1, 4));
        REQUIRE(covering_number(c, {0.5}) == 1);
        REQUIRE(covering_number(c, {-3.5}) == 1);
        REQUIRE(covering_number(c, {4.5}) == 0);
        REQUIRE(oracle::covering_1d(c, 0.5) == 1);
    }
    SECTION("reflected 1-D cycle covers with sign -1") {
        const Chain c = fundamental_cycle(make_window(1, 4));
        const Chain r = pushforward(c, vertex_map(reflection_map(1, 0), 1.0));
        REQUIRE(covering_number(r, {0.5}) == -1);
        REQUIRE(oracle::covering_1d(r, 0.5) == -1);
    }
    SECTION("2-D interior point and far point") {
        const Chain c = fundamental_cycle(make_window(2, 2));
        REQUIRE(covering_number(c, {0.5, 0.25}) == 1);
        REQUIRE(covering_number(c, {10.0, 10.0}) == 0);
        REQUIRE(oracle::covering_2d(c, 0.5, 0.25) == 1);
    }
    SECTION("3-D interior point") {
        const Chain c = fundamental_cycle(make_window(3, 2));
        REQUIRE(covering_number(c, {0.5, 0.25, 0.125}) == 1);
    }
    SECTION("non-generic points are detected, not mis-counted") {
        const Chain c1 = fundamental_cycle(make_window(1, 4));
        REQUIRE_THROWS_AS(covering_number(c1, {1.0}), NonGenericPointError);
        const Chain c2 = fundamental_cycle(make_window(2, 2));
        REQUIRE_THROWS_AS(covering_number(c2, {0.5, 0.5}), NonGenericPointError);
        REQUIRE_THROWS_AS(covering_number(c2, {0.5, 0.5 + 1e-13}), NonGenericPointError);
    }
    SECTION("degree mismatch is rejected") {
        const Chain c = boundary(fundamental_cycle(make_window(2, 2)));
        REQUIRE_THROWS_AS(covering_number(c, {0.5, 0.25}), ChainMismatchError);
    }
    SECTION("degenerate terms contribute zero") {
        Chain c = Chain::zero(2, 2);
        c.add_tuple({{0, 0}, {4, 0}, {2, 0}}, 5); // collinear: zero area
        c.add_tuple({{0, 0}, {4, 0}, {0, 4}}, 1);
        REQUIRE(covering_number(c, {0.5, 0.25}) == 1);
    }
}

TEST_CASE("covering agrees with the planar oracle on random generic points") {
    const Chain c = fundamental_cycle(make_window(2, 3));
    const Chain r = pushforward(c, vertex_map(rotation_map(2, kPi / 2.0), 1.0));
    Rng rng(404);
    int checked = 0;
    for (int k = 0; k < 60; ++k) {
        const double px = rng.uniform(-1.8, 1.8) + 0x1.3p-13;
        const double py = rng.uniform(-1.8, 1.8) + 0x1.1p-14;
        long long lib_c, lib_r;
        try {
            lib_c = covering_number(c, {px, py});
            lib_r = covering_number(r, {px, py});
        } catch (const NonGenericPointError&) {
            continue;
        }
        REQUIRE(lib_c == oracle::covering_2d(c, px, py));
        REQUIRE(lib_r == oracle::covering_2d(r, px, py));
        ++checked;
    }
    REQUIRE(checked >= 55);
}

TEST_CASE("degree anchors") {
    SECTION("identity has degree 1 in dimensions 1..3") {
        for (int n = 1; n <= 3; ++n) {
            const DegreeResult r = degree(identity_map(n), make_window(n, 8), 4, 1);
            REQUIRE(r.stable);
            REQUIRE(r.d);
            REQUIRE(*r.d == 1);
        }
    }
    SECTION("reflections have degree -1 on every axis") {
        for (int n = 1; n <= 3; ++n)
            for (int axis = 0; axis < n; ++axis) {
                const DegreeResult r =
                    degree(reflection_map(n, axis), make_window(n, 8), 4, 1);
                REQUIRE(r.stable);
                REQUIRE(r.d);
                REQUIRE(*r.d == -1);
            }
    }
    SECTION("antipodal has degree (-1)^n") {
        for (int n = 1; n <= 3; ++n) {
            const DegreeResult r = degree(antipodal_map(n), make_window(n, 8), 4, 1);
            REQUIRE(r.stable);
            REQUIRE(r.d);
            REQUIRE(*r.d == (n % 2 == 0 ? 1 : -1));
        }
    }
    SECTION("lattice rotation has degree 1, translation has degree 1") {
        const DegreeResult rot = degree(rotation_map(2, kPi / 2.0), make_window(2, 8), 4, 1);
        REQUIRE(rot.d);
        REQUIRE(*rot.d == 1);
        const DegreeResult tr =
            degree(translation_map({5.0, 0.0}), make_window(2, 32), 4, 1);
        REQUIRE(tr.d);
        REQUIRE(*tr.d == 1);
    }
    SECTION("scaling in and out has degree 1") {
        const DegreeResult up = degree(scaling_map(2, 2.0), make_window(2, 32), 4, 1);
        REQUIRE(up.d);
        REQUIRE(*up.d == 1);
        const DegreeResult down = degree(scaling_map(2, 0.5), make_window(2, 16), 4, 1);
        REQUIRE(down.d);
        REQUIRE(*down.d == 1);
    }
    SECTION("folds have degree 0") {
        const DegreeResult r =
            degree(fold_map(parse_map_text("translate(1)", 2, true)), make_window(2, 16), 4, 1);
        REQUIRE(r.stable);
        REQUIRE(r.d);
        REQUIRE(*r.d == 0);
    }
}

TEST_CASE("degree is multiplicative over the lattice-isometry zoo") {
    struct Entry {
        const char* name;
        MapSpec map;
        long long expected;
    };
    const std::vector<Entry> zoo = {
        {"identity", identity_map(2), 1},
        {"reflect(0)", reflection_map(2, 0), -1},
        {"reflect(1)", reflection_map(2, 1), -1},
        {"antipodal", antipodal_map(2), 1},
        {"rotate(pi/2)", rotation_map(2, kPi / 2.0), 1},
    };
    for (const auto& a : zoo) {
        const DegreeResult ra = degree(a.map, make_window(2, 8), 4, 1);
        REQUIRE(ra.d);
        REQUIRE(*ra.d == a.expected);
        for (const auto& b : zoo) {
            const DegreeResult rc =
                degree(composition_map({a.map, b.map}), make_window(2, 8), 4, 1);
            REQUIRE(rc.stable);
            REQUIRE(rc.d);
            REQUIRE(*rc.d == a.expected * b.expected);
        }
    }
}

TEST_CASE("degree validation errors") {
    REQUIRE_THROWS_AS(degree(parse_map_text("identity", 2, true), make_window(2, 8), 4, 1),
                      DomainViolationError);
    REQUIRE_THROWS_AS(degree(identity_map(3), make_window(2, 8), 4, 1),
                      ChainMismatchError);
    REQUIRE_THROWS_AS(degree(identity_map(2), make_window(2, 1), 4, 1),
                      WindowTooSmallError);
    REQUIRE_THROWS_AS(degree(scaling_map(2, 100.0), make_window(2, 8), 4, 1),
                      WindowTooSmallError);
    // a displacement comparable to the window also leaves no safe region
    REQUIRE_THROWS_AS(degree(translation_map({5.0, 0.0}), make_window(2, 8), 4, 1),
                      WindowTooSmallError);
}

TEST_CASE("degree result carries its evidence") {
    const DegreeResult r = degree(reflection_map(2, 0), make_window(2, 8), 6, 3);
    REQUIRE(r.test_points.size() == 6);
    REQUIRE(r.coverings.size() == 6);
    REQUIRE(r.coverings_half.size() == 6);
    REQUIRE(r.safe_half_width > 0.0);
    for (const auto& p : r.test_points)
        for (const double c : p) REQUIRE(std::fabs(c) <= r.safe_half_width);
    const Json j = degree_json(r);
    REQUIRE(j.at("d") == -1);
    REQUIRE(j.at("stable") == true);
    REQUIRE(j.at("test_points").size() == 6);
    REQUIRE(j.at("window").at("half_width") == 8);
}
