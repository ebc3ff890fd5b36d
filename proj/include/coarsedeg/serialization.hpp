#ifndef COARSEDEG_SERIALIZATION_HPP
#define COARSEDEG_SERIALIZATION_HPP

#include <charconv>
#include <limits>
#include <string>

#include <json.hpp>

#include "coarsedeg/cfpp.hpp"
#include "coarsedeg/chain.hpp"
#include "coarsedeg/degree.hpp"
#include "coarsedeg/homotopy.hpp"
#include "coarsedeg/lattice.hpp"
#include "coarsedeg/maps.hpp"

namespace coarsedeg {

/// Insertion-ordered JSON so reports serialize byte-identically run to run.
using Json = nlohmann::ordered_json;

/// Shortest round-trip decimal form of a double, for CSV cells.
inline std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline long long coeff_to_int(const Coeff& c) {
    if (c > Coeff(std::numeric_limits<long long>::max()) ||
        c < Coeff(std::numeric_limits<long long>::min()))
        throw CoarseError("chain coefficient exceeds the integer serialization range");
    return c.convert_to<long long>();
}

inline Json window_json(const Window& w) {
    return Json{{"dim", w.dim},
                {"half_width", w.half_width},
                {"spacing", w.spacing},
                {"collar", w.collar}};
}

inline Json chain_json(const Chain& c) {
    Json terms = Json::array();
    const std::size_t d = static_cast<std::size_t>(c.dim);
    for (const auto& [key, coeff] : c.terms) {
        Json vertices = Json::array();
        for (std::size_t i = 0; i < c.tuple_size(); ++i) {
            Json v = Json::array();
            for (std::size_t j = 0; j < d; ++j) v.push_back(key[i * d + j]);
            vertices.push_back(std::move(v));
        }
        terms.push_back(Json{{"vertices", std::move(vertices)}, {"coeff", coeff_to_int(coeff)}});
    }
    return Json{{"q", c.q}, {"spacing", c.spacing}, {"terms", std::move(terms)}};
}

inline Json point_json(const WorldPoint& p) {
    Json a = Json::array();
    for (const double v : p) a.push_back(v);
    return a;
}

inline Json degree_json(const DegreeResult& r) {
    Json points = Json::array();
    for (std::size_t i = 0; i < r.test_points.size(); ++i) {
        points.push_back(Json{{"p", point_json(r.test_points[i])},
                              {"covering", r.coverings[i]}});
    }
    Json out;
    out["d"] = r.d ? Json(*r.d) : Json(nullptr);
    out["stable"] = r.stable;
    out["window"] = window_json(r.window_used);
    out["test_points"] = std::move(points);
    return out;
}

/// Extra measurements behind a degree run (not part of the core result).
inline Json degree_evidence_json(const DegreeResult& r) {
    Json half = Json::array();
    for (const long long c : r.coverings_half) half.push_back(c);
    return Json{{"coverings_half_window", std::move(half)},
                {"growth_bound", r.growth_bound},
                {"modulus_step", r.modulus_step},
                {"safe_half_width", r.safe_half_width}};
}

inline Json modulus_json(const BornologousModulus& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.radii.size(); ++i)
        rows.push_back(Json{{"R", m.radii[i]}, {"S", m.s_values[i]}});
    return Json{{"samples", std::move(rows)},
                {"window", window_json(m.window)},
                {"pairs_per_radius", m.pairs_per_radius},
                {"seed", m.seed}};
}

inline Json properness_json(const PropernessReport& r) {
    Json rungs = Json::array();
    for (std::size_t i = 0; i < r.ladder.size(); ++i)
        rungs.push_back(
            Json{{"half_width", r.ladder[i]}, {"max_preimage_norm", r.max_preimage_norm[i]}});
    return Json{{"ball_radius", r.ball_radius},
                {"rungs", std::move(rungs)},
                {"spacing", r.spacing},
                {"verdict", r.proper_at_scale ? "proper-at-scale" : "suspect"}};
}

inline Json uniform_properness_json(const UniformPropernessReport& r) {
    Json rungs = Json::array();
    for (std::size_t i = 0; i < r.ladder.size(); ++i)
        rungs.push_back(
            Json{{"half_width", r.ladder[i]}, {"max_preimage_norm", r.max_preimage_norm[i]}});
    Json grid = Json::array();
    for (const double t : r.t_grid) grid.push_back(t);
    return Json{{"ball_radius", r.ball_radius},
                {"rungs", std::move(rungs)},
                {"spacing", r.spacing},
                {"t_grid", std::move(grid)},
                {"verdict", r.proper_at_scale ? "proper-at-scale" : "suspect"}};
}

inline Json pseudocontinuity_json(const PseudocontinuityReport& r) {
    Json grid = Json::array();
    for (const double t : r.t_grid) grid.push_back(t);
    return Json{{"max_jump", r.max_jump},
                {"grid_step", r.grid_step},
                {"refined_max_jump", r.refined_max_jump},
                {"refined_grid_step", r.refined_grid_step},
                {"t_grid", std::move(grid)}};
}

inline Json triangle_json(const TriangleBound& t) {
    auto violation_array = [](const std::vector<TriangleBound::Violation>& vs) {
        Json arr = Json::array();
        for (const auto& v : vs)
            arr.push_back(
                Json{{"x", point_json(v.x)}, {"value", v.value}, {"bound", v.bound}});
        return arr;
    };
    return Json{{"T", t.T},
                {"K", t.K},
                {"C", t.C},
                {"num_samples", t.num_samples},
                {"num_tested", t.num_tested},
                {"violations", violation_array(t.violations)},
                {"halfdist_violations", violation_array(t.halfdist_violations)},
                {"seed", t.seed}};
}

inline Json witness_json(const RayWitness& w) {
    Json entries = Json::array();
    for (const auto& e : w.entries) {
        entries.push_back(Json{{"r", e.r},
                               {"x", point_json(e.x)},
                               {"zeta", point_json(e.zeta)},
                               {"dx", e.dx},
                               {"dfx", e.dfx}});
    }
    return Json{{"R", w.R}, {"entries", std::move(entries)}};
}

inline Json verdict_json(const SearchVerdict& v) {
    Json out;
    out["found"] = v.found;
    if (v.found) out["witness"] = witness_json(v.witness);
    Json per_radius = Json::array();
    for (std::size_t i = 0; i < v.radii.size(); ++i)
        per_radius.push_back(Json{{"r", v.radii[i]}, {"best_max_dist", v.best_max_dist[i]}});
    out["per_radius"] = std::move(per_radius);
    return out;
}

} // namespace coarsedeg

#endif // COARSEDEG_SERIALIZATION_HPP
