#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "coarsedeg/coarsedeg.hpp"

using namespace coarsedeg;

namespace {

// Evaluate component `i` of a parsed map at p.
double comp(const ParsedMap& m, std::size_t i, const WorldPoint& p) {
    return eval_expr(*m.components[i], p);
}

} // namespace

TEST_CASE("expression evaluation on hand cases") {
    SECTION("arithmetic and variables") {
        const ParsedMap m = parse_map_expr("(x1 + 2*x2, x2*x2)");
        REQUIRE(m.components.size() == 2);
        REQUIRE(m.max_var == 2);
        REQUIRE(comp(m, 0, {1.0, 2.0}) == 5.0);
        REQUIRE(comp(m, 1, {1.0, 2.0}) == 4.0);
    }
    SECTION("functions") {
        const ParsedMap m =
            parse_map_expr("(abs(x1), min(x1, 2), max(x1, 2), sqrt(x1*x1), floor(x1/2))");
        const WorldPoint p = {-3.0};
        REQUIRE(comp(m, 0, p) == 3.0);
        REQUIRE(comp(m, 1, p) == -3.0);
        REQUIRE(comp(m, 2, p) == 2.0);
        REQUIRE(comp(m, 3, p) == 3.0);
        REQUIRE(comp(m, 4, p) == -2.0); // floor(-1.5)
    }
    SECTION("min and max accept more than two arguments") {
        const ParsedMap m = parse_map_expr("(min(3, x1, 2), max(3, x1, 2))");
        REQUIRE(comp(m, 0, {-7.0}) == -7.0);
        REQUIRE(comp(m, 1, {-7.0}) == 3.0);
    }
    SECTION("precedence and associativity") {
        const ParsedMap m = parse_map_expr("(1+2*3, (1+2)*3, 2-3-4, 12/3/2)");
        const WorldPoint p = {0.0};
        REQUIRE(comp(m, 0, p) == 7.0);
        REQUIRE(comp(m, 1, p) == 9.0);
        REQUIRE(comp(m, 2, p) == -5.0);
        REQUIRE(comp(m, 3, p) == 2.0);
    }
    SECTION("unary minus") {
        const ParsedMap m = parse_map_expr("(-x1, --x1, 3--2)");
        const WorldPoint p = {4.0};
        REQUIRE(comp(m, 0, p) == -4.0);
        REQUIRE(comp(m, 1, p) == 4.0);
        REQUIRE(comp(m, 2, p) == 5.0);
    }
    SECTION("unicode minus sign is accepted") {
        const ParsedMap m = parse_map_expr("(−x1, x1 − 1)");
        const WorldPoint p = {4.0};
        REQUIRE(comp(m, 0, p) == -4.0);
        REQUIRE(comp(m, 1, p) == 3.0);
    }
    SECTION("scientific notation") {
        const ParsedMap m = parse_map_expr("(1.5e2 + x1)");
        REQUIRE(comp(m, 0, {0.5}) == 150.5);
    }
    SECTION("spec example: (x1+1, abs(x2)) at (0, -4)") {
        const ParsedMap m = parse_map_expr("(x1+1, abs(x2))");
        REQUIRE(comp(m, 0, {0.0, -4.0}) == 1.0);
        REQUIRE(comp(m, 1, {0.0, -4.0}) == 4.0);
    }
}

TEST_CASE("parse errors carry line and column") {
    SECTION("unbalanced expression stops at column 5") {
        try {
            parse_map_expr("(x1 +");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            REQUIRE(e.line == 1);
            REQUIRE(e.column == 5);
        }
    }
    SECTION("missing opening parenthesis") {
        REQUIRE_THROWS_AS(parse_map_expr("x1, x2"), ParseError);
    }
    SECTION("empty input") { REQUIRE_THROWS_AS(parse_map_expr(""), ParseError); }
    SECTION("variable indices are 1-based") {
        REQUIRE_THROWS_AS(parse_map_expr("(x0)"), ParseError);
    }
    SECTION("unknown function") {
        REQUIRE_THROWS_AS(parse_map_expr("(sin(x1))"), ParseError);
    }
    SECTION("arity errors") {
        REQUIRE_THROWS_AS(parse_map_expr("(min(x1))"), ParseError);
        REQUIRE_THROWS_AS(parse_map_expr("(abs(x1, x2))"), ParseError);
        REQUIRE_THROWS_AS(parse_map_expr("(sqrt())"), ParseError);
    }
    SECTION("trailing garbage") {
        REQUIRE_THROWS_AS(parse_map_expr("(x1) x2"), ParseError);
    }
    SECTION("multi-line input reports the right line") {
        try {
            parse_map_expr("(x1,\n x2 +)");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            REQUIRE(e.line == 2);
        }
    }
}

TEST_CASE("evaluation errors") {
    SECTION("division by zero") {
        const ParsedMap m = parse_map_expr("(1/x1)");
        REQUIRE_THROWS_AS(comp(m, 0, {0.0}), EvalError);
        REQUIRE(comp(m, 0, {2.0}) == 0.5);
    }
    SECTION("square root of a negative number") {
        const ParsedMap m = parse_map_expr("(sqrt(x1))");
        REQUIRE_THROWS_AS(comp(m, 0, {-4.0}), EvalError);
    }
    SECTION("expression maps report the offending output coordinate") {
        const MapSpec m = expression_map(parse_map_expr("(x1, 1/x2)"), 2);
        try {
            evaluate(m, {1.0, 0.0});
            FAIL("expected EvalError");
        } catch (const EvalError& e) {
            REQUIRE(e.coordinate == 2);
        }
    }
}

TEST_CASE("max_var_index and dimension validation") {
    REQUIRE(parse_map_expr("(x3 + x1)").max_var == 3);
    REQUIRE(parse_map_expr("(1, 2)").max_var == 0);
    // a 2-component map reading x3 cannot be a self-map of the plane
    REQUIRE_THROWS_AS(expression_map(parse_map_expr("(x3, x1)"), 2), ParseError);
}
