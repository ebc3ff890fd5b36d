#ifndef COARSEDEG_DEMO_HPP
#define COARSEDEG_DEMO_HPP

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "coarsedeg/cfpp.hpp"
#include "coarsedeg/degree.hpp"
#include "coarsedeg/homotopy.hpp"
#include "coarsedeg/mapparse.hpp"
#include "coarsedeg/serialization.hpp"
#include "coarsedeg/version.hpp"

namespace coarsedeg {

/// Result of one demo bundle: the canonical JSON report (deterministic for
/// a fixed seed), a pass flag, and human-readable table lines for stderr.
struct DemoOutcome {
    Json report;
    bool pass = true;
    std::vector<std::string> table;
};

namespace demo_detail {

inline std::string yn(bool b) { return b ? "PASS" : "FAIL"; }

inline Json base_report(const std::string& bundle, std::uint64_t seed) {
    Json j;
    j["bundle"] = bundle;
    j["version"] = kVersion;
    j["seed"] = seed;
    return j;
}

} // namespace demo_detail

/// Reflections across every axis have degree -1 in dimensions 1..3.
inline DemoOutcome demo_lemma1(std::uint64_t seed) {
    using demo_detail::yn;
    DemoOutcome out;
    out.report = demo_detail::base_report("lemma1", seed);
    out.report["config"] =
        Json{{"window", 8}, {"spacing", 1.0}, {"test_points", 8}};
    Json cases = Json::array();
    for (int n = 1; n <= 3; ++n) {
        for (int axis = 0; axis < n; ++axis) {
            const DegreeResult r =
                degree(reflection_map(n, axis), make_window(n, 8), 8, seed);
            const bool ok = r.stable && r.d && *r.d == -1;
            out.pass = out.pass && ok;
            cases.push_back(Json{{"n", n},
                                 {"axis", axis},
                                 {"expected", -1},
                                 {"result", degree_json(r)},
                                 {"evidence", degree_evidence_json(r)},
                                 {"ok", ok}});
            out.table.push_back("lemma1  n=" + std::to_string(n) + " axis=" +
                                std::to_string(axis) + "  d=" +
                                (r.d ? std::to_string(*r.d) : std::string("unstable")) +
                                "  expected=-1  " + yn(ok));
        }
    }
    out.report["cases"] = std::move(cases);
    out.report["pass"] = out.pass;
    return out;
}

/// The antipodal map on R^m has degree (-1)^m, and matches the composite of
/// one reflection per axis (the multiplicativity cross-check).
inline DemoOutcome demo_lemma2(std::uint64_t seed) {
    using demo_detail::yn;
    DemoOutcome out;
    out.report = demo_detail::base_report("lemma2", seed);
    out.report["config"] =
        Json{{"window", 8}, {"spacing", 1.0}, {"test_points", 8}};
    Json cases = Json::array();
    for (int m = 1; m <= 3; ++m) {
        const long long expected = (m % 2 == 0) ? 1 : -1;
        const DegreeResult anti = degree(antipodal_map(m), make_window(m, 8), 8, seed);

        std::vector<MapSpec> refls;
        for (int axis = 0; axis < m; ++axis) refls.push_back(reflection_map(m, axis));
        const DegreeResult composed =
            degree(composition_map(std::move(refls)), make_window(m, 8), 8, seed);

        long long product = 1;
        bool factors_ok = true;
        for (int axis = 0; axis < m; ++axis) {
            const DegreeResult f =
                degree(reflection_map(m, axis), make_window(m, 8), 8, seed);
            factors_ok = factors_ok && f.stable && f.d.has_value();
            if (f.d) product *= *f.d;
        }

        const bool ok = anti.stable && anti.d && *anti.d == expected && composed.stable &&
                        composed.d && *composed.d == expected && factors_ok &&
                        product == expected;
        out.pass = out.pass && ok;
        cases.push_back(Json{{"m", m},
                             {"expected", expected},
                             {"antipodal", degree_json(anti)},
                             {"composed_reflections", degree_json(composed)},
                             {"reflection_degree_product", product},
                             {"ok", ok}});
        out.table.push_back("lemma2  m=" + std::to_string(m) + "  d=" +
                            (anti.d ? std::to_string(*anti.d) : std::string("unstable")) +
                            "  expected=" + std::to_string(expected) + "  composite=" +
                            (composed.d ? std::to_string(*composed.d)
                                        : std::string("unstable")) +
                            "  " + yn(ok));
    }
    out.report["cases"] = std::move(cases);
    out.report["pass"] = out.pass;
    return out;
}

/// The similar-triangles bound holds with zero violations for the builtin
/// zoo, and the straight-line family detects the properness collapse of the
/// identity while the antipodal family stays proper.
inline DemoOutcome demo_lemma3(std::uint64_t seed) {
    using demo_detail::yn;
    DemoOutcome out;
    out.report = demo_detail::base_report("lemma3", seed);

    const Window w = make_window(2, 32);
    const std::size_t samples = 10000;
    out.report["config"] = Json{{"window", 32},
                                {"spacing", 1.0},
                                {"samples", samples},
                                {"ball_radii", Json::array({1.0, 2.0})},
                                {"ladder", Json::array({8, 16, 32, 64})},
                                {"t_grid_knots", 11}};

    struct ZooEntry {
        std::string name;
        MapSpec map;
    };
    std::vector<ZooEntry> zoo;
    zoo.push_back({"antipodal", antipodal_map(2)});
    zoo.push_back({"reflect(0)", reflection_map(2, 0)});
    zoo.push_back({"rotate(pi/2)", rotation_map(2, kPi / 2.0)});
    zoo.push_back({"translate(5,0)", translation_map({5.0, 0.0})});
    zoo.push_back({"scale(2)", scaling_map(2, 2.0)});

    Json bounds = Json::array();
    for (const auto& entry : zoo) {
        for (const double T : {1.0, 2.0}) {
            const TriangleBound tb = triangle_bound_check(entry.map, T, w, samples, seed);
            const bool ok = tb.violations.empty() && tb.halfdist_violations.empty();
            out.pass = out.pass && ok;
            bounds.push_back(Json{{"map", entry.name},
                                  {"T", T},
                                  {"triangle", triangle_json(tb)},
                                  {"ok", ok}});
            out.table.push_back("lemma3  " + entry.name + "  T=" + format_double(T) +
                                "  K=" + format_double(tb.K) + "  C=" + format_double(tb.C) +
                                "  tested=" + std::to_string(tb.num_tested) +
                                "  violations=" + std::to_string(tb.violations.size()) +
                                "  " + yn(ok));
        }
    }
    out.report["triangle_bounds"] = std::move(bounds);

    const std::vector<double> t_grid = uniform_t_grid(11);
    std::vector<Window> ladder;
    for (const std::int64_t L : {8, 16, 32, 64}) ladder.push_back(make_window(2, L));

    const HomotopyFamily fam_anti = linear_homotopy(antipodal_map(2));
    const HomotopyFamily fam_id = linear_homotopy(identity_map(2));
    const UniformPropernessReport prop_anti =
        check_uniformly_proper(fam_anti, 1.0, ladder, t_grid, seed);
    const UniformPropernessReport prop_id =
        check_uniformly_proper(fam_id, 1.0, ladder, t_grid, seed);
    const bool discriminates = prop_anti.proper_at_scale && !prop_id.proper_at_scale;
    out.pass = out.pass && discriminates;

    const PseudocontinuityReport pc_anti =
        check_pseudocontinuity(fam_anti, t_grid, w, seed);
    // H_t(x) = -x for every t, so jumps vanish up to rounding in the
    // t*h(x) - (1-t)x evaluation.
    const bool anti_t_independent = pc_anti.max_jump <= 1e-10;
    out.pass = out.pass && anti_t_independent;

    const BornologousModulus mod_anti =
        check_uniformly_bornologous(fam_anti, {1.0, 2.0, 4.0}, t_grid, w, 200, seed);
    bool isometric = true;
    for (std::size_t i = 0; i < mod_anti.radii.size(); ++i)
        isometric = isometric && std::fabs(mod_anti.s_values[i] - mod_anti.radii[i]) < 1e-9;
    out.pass = out.pass && isometric;

    out.report["properness"] = Json{{"antipodal_family", uniform_properness_json(prop_anti)},
                                    {"identity_family", uniform_properness_json(prop_id)},
                                    {"discriminates", discriminates}};
    out.report["pseudocontinuity_antipodal"] = pseudocontinuity_json(pc_anti);
    out.report["uniform_modulus_antipodal"] = modulus_json(mod_anti);
    out.table.push_back(std::string("lemma3  properness: antipodal family ") +
                        (prop_anti.proper_at_scale ? "proper-at-scale" : "suspect") +
                        ", identity family " +
                        (prop_id.proper_at_scale ? "proper-at-scale" : "suspect") + "  " +
                        yn(discriminates));
    out.report["pass"] = out.pass;
    return out;
}

/// The main pipeline: for half-space-preserving maps f, the fold
/// g(x, t) = f(x, |t|) has degree 0, and a ray witness exists within the
/// modulus-derived budget.
inline DemoOutcome demo_theorem(std::uint64_t seed) {
    using demo_detail::yn;
    DemoOutcome out;
    out.report = demo_detail::base_report("theorem", seed);

    const Window w = make_window(2, 16);
    std::vector<double> radii;
    for (int r = 10; r <= 100; r += 10) radii.push_back(static_cast<double>(r));
    out.report["config"] = Json{{"window", 16},
                                {"spacing", 1.0},
                                {"test_points", 8},
                                {"radii", Json::array({10, 100, 10})},
                                {"points_per_sphere", 64}};

    const std::vector<std::string> zoo = {
        "identity",
        "translate(1,0)",
        "(x1+x2, x2)",
        "(x1+1, abs(x2)+1)",
        "compose{perturb(0.25,11){identity}; translate(0,0.25)}",
    };

    Json cases = Json::array();
    for (const std::string& text : zoo) {
        const MapSpec inner = parse_map_text(text, 2, true);
        const MapSpec g = fold_map(inner);

        const DegreeResult deg = degree(g, w, 8, seed);
        const bool degree_ok = deg.stable && deg.d && *deg.d == 0;

        const BornologousModulus mod =
            estimate_bornologous_modulus(g, {1.0}, w, 200, seed);
        const double budget = 4.0 * w.spacing + mod.s_values[0];
        const SearchVerdict verdict = search_witness(g, budget, radii, 64, seed);
        const bool verified = verdict.found && verify_witness(g, verdict.witness);

        const bool ok = degree_ok && verdict.found && verified;
        out.pass = out.pass && ok;
        cases.push_back(Json{{"map", text},
                             {"fold_degree", degree_json(deg)},
                             {"degree_evidence", degree_evidence_json(deg)},
                             {"modulus_S1", mod.s_values[0]},
                             {"budget", budget},
                             {"witness_search", verdict_json(verdict)},
                             {"witness_verified", verified},
                             {"ok", ok}});
        out.table.push_back(
            "theorem  " + text + "  fold_degree=" +
            (deg.d ? std::to_string(*deg.d) : std::string("unstable")) + "  witness=" +
            (verdict.found ? "found" : "not-found") + " budget=" + format_double(budget) +
            "  " + yn(ok));
    }
    out.report["cases"] = std::move(cases);
    out.report["pass"] = out.pass;
    return out;
}

inline DemoOutcome run_demo(const std::string& which, std::uint64_t seed) {
    if (which == "lemma1") return demo_lemma1(seed);
    if (which == "lemma2") return demo_lemma2(seed);
    if (which == "lemma3") return demo_lemma3(seed);
    if (which == "theorem") return demo_theorem(seed);
    throw CoarseError("unknown demo bundle '" + which +
                      "' (expected lemma1, lemma2, lemma3, or theorem)");
}

} // namespace coarsedeg

#endif // COARSEDEG_DEMO_HPP
