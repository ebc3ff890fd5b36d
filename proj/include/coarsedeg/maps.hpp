#ifndef COARSEDEG_MAPS_HPP
#define COARSEDEG_MAPS_HPP

#include <bit>
#include <cmath>
#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "coarsedeg/expr.hpp"
#include "coarsedeg/lattice.hpp"
#include "coarsedeg/util.hpp"

namespace coarsedeg {

/// Domain of a map: all of R^n, or the closed half-space { last coord >= 0 }.
enum class DomainKind { FullSpace, HalfSpace };

struct MapSpec;

namespace kinds {

struct Identity {};
struct Reflection {
    int axis = 0;
};
struct Antipodal {};
struct Translation {
    WorldPoint v;
};
struct Linear {
    std::vector<WorldPoint> rows; // row-major n x n matrix
};
struct Rotation {
    double theta = 0.0;
    int axis_a = 0;
    int axis_b = 1;
};
struct Radial {
    ExprPtr profile; // new radius as a function of x1 := |p|
};
struct Fold {
    std::shared_ptr<const MapSpec> inner; // half-space self-map
};
struct Perturbation {
    std::shared_ptr<const MapSpec> base;
    double eps = 0.0;
    std::uint64_t seed = 0;
};
struct Composition {
    std::vector<MapSpec> stages; // applied first-to-last
};
struct Expression {
    std::vector<ExprPtr> components;
};

} // namespace kinds

/// Immutable description of a self-map of R^n (or of the half-space).
/// Evaluation is pure, so MapSpec values are safe to share across threads.
struct MapSpec {
    int dim = 0;
    DomainKind domain = DomainKind::FullSpace;
    std::variant<kinds::Identity, kinds::Reflection, kinds::Antipodal, kinds::Translation,
                 kinds::Linear, kinds::Rotation, kinds::Radial, kinds::Fold,
                 kinds::Perturbation, kinds::Composition, kinds::Expression>
        kind;
    std::string label; // human-readable description used in reports
};

// ---------------------------------------------------------------------------
// Constructors.
// ---------------------------------------------------------------------------

inline MapSpec identity_map(int dim) {
    MapSpec m;
    m.dim = dim;
    m.kind = kinds::Identity{};
    m.label = "identity";
    return m;
}

inline MapSpec reflection_map(int dim, int axis) {
    if (axis < 0 || axis >= dim)
        throw CoarseError("reflection axis out of range");
    MapSpec m;
    m.dim = dim;
    m.kind = kinds::Reflection{axis};
    m.label = "reflect(" + std::to_string(axis) + ")";
    return m;
}

inline MapSpec antipodal_map(int dim) {
    MapSpec m;
    m.dim = dim;
    m.kind = kinds::Antipodal{};
    m.label = "antipodal";
    return m;
}

inline MapSpec translation_map(WorldPoint v) {
    MapSpec m;
    m.dim = static_cast<int>(v.size());
    std::string lab = "translate(";
    for (std::size_t i = 0; i < v.size(); ++i)
        lab += (i ? "," : "") + std::to_string(v[i]);
    m.kind = kinds::Translation{std::move(v)};
    m.label = lab + ")";
    return m;
}

inline MapSpec linear_map(std::vector<WorldPoint> rows) {
    const std::size_t n = rows.size();
    for (const auto& r : rows)
        if (r.size() != n) throw CoarseError("linear map matrix must be square");
    MapSpec m;
    m.dim = static_cast<int>(n);
    m.kind = kinds::Linear{std::move(rows)};
    m.label = "linear";
    return m;
}

inline MapSpec scaling_map(int dim, double factor) {
    std::vector<WorldPoint> rows(static_cast<std::size_t>(dim),
                                 WorldPoint(static_cast<std::size_t>(dim), 0.0));
    for (int i = 0; i < dim; ++i) rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = factor;
    MapSpec m = linear_map(std::move(rows));
    m.label = "scale(" + std::to_string(factor) + ")";
    return m;
}

inline MapSpec rotation_map(int dim, double theta, int axis_a = 0, int axis_b = 1) {
    if (dim < 2 || axis_a == axis_b || axis_a < 0 || axis_b < 0 || axis_a >= dim || axis_b >= dim)
        throw CoarseError("rotation needs two distinct axes inside the dimension");
    MapSpec m;
    m.dim = dim;
    m.kind = kinds::Rotation{theta, axis_a, axis_b};
    m.label = "rotate(" + std::to_string(theta) + ")";
    return m;
}

inline MapSpec radial_map(int dim, ExprPtr profile) {
    if (max_var_index(*profile) > 1)
        throw CoarseError("radial profile may reference only x1 (the radius)");
    MapSpec m;
    m.dim = dim;
    m.kind = kinds::Radial{std::move(profile)};
    m.label = "radial";
    return m;
}

inline MapSpec expression_map(const ParsedMap& parsed, int expected_dim = -1) {
    const int m_dim = static_cast<int>(parsed.components.size());
    if (expected_dim > 0 && m_dim != expected_dim)
        throw ParseError("map has " + std::to_string(m_dim) + " components but dimension " +
                             std::to_string(expected_dim) + " was requested",
                         1, 0);
    if (parsed.max_var > m_dim)
        throw ParseError("map uses x" + std::to_string(parsed.max_var) + " but has only " +
                             std::to_string(m_dim) + " components",
                         1, 0);
    MapSpec m;
    m.dim = m_dim;
    m.kind = kinds::Expression{parsed.components};
    m.label = "expression";
    return m;
}

inline MapSpec perturbation_map(MapSpec base, double eps, std::uint64_t seed) {
    if (eps < 0.0) throw CoarseError("perturbation amplitude must be nonnegative");
    MapSpec m;
    m.dim = base.dim;
    m.domain = base.domain;
    m.label = "perturb(" + std::to_string(eps) + "," + std::to_string(seed) + "){" +
              base.label + "}";
    m.kind = kinds::Perturbation{std::make_shared<const MapSpec>(std::move(base)), eps, seed};
    return m;
}

inline MapSpec composition_map(std::vector<MapSpec> stages) {
    if (stages.empty()) throw CoarseError("composition needs at least one stage");
    const int dim = stages.front().dim;
    for (const auto& s : stages)
        if (s.dim != dim) throw CoarseError("composition stages disagree in dimension");
    MapSpec m;
    m.dim = dim;
    std::string lab = "compose{";
    for (std::size_t i = 0; i < stages.size(); ++i)
        lab += (i ? ";" : "") + stages[i].label;
    m.label = lab + "}";
    m.kind = kinds::Composition{std::move(stages)};
    return m;
}

WorldPoint evaluate(const MapSpec& m, const WorldPoint& p);

/// Reflection-symmetric extension g(x, t) = f(x, |t|) of a half-space
/// self-map to the full space. Half-space preservation is checked on 1000
/// deterministic sample points; a violation is a hard error.
inline MapSpec fold_map(MapSpec inner) {
    if (inner.dim < 1) throw CoarseError("fold needs a positive dimension");
    inner.domain = DomainKind::HalfSpace;
    const std::size_t last = static_cast<std::size_t>(inner.dim) - 1;
    Rng rng(0xf01d5a3b1e5eedull);
    for (int k = 0; k < 1000; ++k) {
        WorldPoint p(static_cast<std::size_t>(inner.dim));
        for (std::size_t i = 0; i < p.size(); ++i) p[i] = rng.uniform(-50.0, 50.0);
        p[last] = std::fabs(p[last]);
        const WorldPoint image = evaluate(inner, p);
        if (image[last] < 0.0)
            throw DomainViolationError(
                "fold: inner map leaves the half-space at a sampled point");
    }
    MapSpec m;
    m.dim = inner.dim;
    m.domain = DomainKind::FullSpace;
    m.label = "fold{" + inner.label + "}";
    m.kind = kinds::Fold{std::make_shared<const MapSpec>(std::move(inner))};
    return m;
}

// ---------------------------------------------------------------------------
// Evaluation.
// ---------------------------------------------------------------------------

namespace detail {

/// Deterministic per-point offset for the perturbation kind: a pure function
/// of (seed, p, coordinate), bounded so the Euclidean displacement is <= eps.
inline double perturbation_offset(std::uint64_t seed, const WorldPoint& p, std::size_t j,
                                  double eps) {
    std::uint64_t h = mix_bits(seed ^ 0x5eed0157ca7e0ffull);
    for (const double c : p) h = mix_bits(h ^ std::bit_cast<std::uint64_t>(c));
    h = mix_bits(h ^ (j + 1));
    const double u = static_cast<double>(h >> 11) * 0x1.0p-53; // [0,1)
    const double amplitude = eps / std::sqrt(static_cast<double>(p.size()));
    return amplitude * (2.0 * u - 1.0);
}

struct Evaluator {
    const MapSpec& m;
    const WorldPoint& p;

    WorldPoint operator()(const kinds::Identity&) const { return p; }

    WorldPoint operator()(const kinds::Reflection& k) const {
        WorldPoint out = p;
        out[static_cast<std::size_t>(k.axis)] = -out[static_cast<std::size_t>(k.axis)];
        return out;
    }

    WorldPoint operator()(const kinds::Antipodal&) const { return negate(p); }

    WorldPoint operator()(const kinds::Translation& k) const { return add(p, k.v); }

    WorldPoint operator()(const kinds::Linear& k) const {
        WorldPoint out(p.size(), 0.0);
        for (std::size_t i = 0; i < p.size(); ++i) out[i] = dot(k.rows[i], p);
        return out;
    }

    WorldPoint operator()(const kinds::Rotation& k) const {
        WorldPoint out = p;
        const std::size_t a = static_cast<std::size_t>(k.axis_a);
        const std::size_t b = static_cast<std::size_t>(k.axis_b);
        const double c = std::cos(k.theta), s = std::sin(k.theta);
        out[a] = c * p[a] - s * p[b];
        out[b] = s * p[a] + c * p[b];
        return out;
    }

    WorldPoint operator()(const kinds::Radial& k) const {
        const double r = norm(p);
        if (r == 0.0) return p;
        const double r_new = eval_expr(*k.profile, WorldPoint{r});
        return scale(p, r_new / r);
    }

    WorldPoint operator()(const kinds::Fold& k) const {
        WorldPoint q = p;
        q.back() = std::fabs(q.back());
        return evaluate(*k.inner, q);
    }

    WorldPoint operator()(const kinds::Perturbation& k) const {
        WorldPoint out = evaluate(*k.base, p);
        for (std::size_t j = 0; j < out.size(); ++j)
            out[j] += perturbation_offset(k.seed, p, j, k.eps);
        return out;
    }

    WorldPoint operator()(const kinds::Composition& k) const {
        WorldPoint cur = p;
        for (const auto& stage : k.stages) cur = evaluate(stage, cur);
        return cur;
    }

    WorldPoint operator()(const kinds::Expression& k) const {
        WorldPoint out(k.components.size());
        for (std::size_t i = 0; i < k.components.size(); ++i) {
            try {
                out[i] = eval_expr(*k.components[i], p);
            } catch (const EvalError& e) {
                throw EvalError(std::string(e.what()) + " in output coordinate " +
                                    std::to_string(i + 1),
                                static_cast<int>(i) + 1);
            }
        }
        return out;
    }
};

} // namespace detail

inline WorldPoint evaluate(const MapSpec& m, const WorldPoint& p) {
    if (static_cast<int>(p.size()) != m.dim)
        throw EvalError("point dimension " + std::to_string(p.size()) +
                        " does not match map dimension " + std::to_string(m.dim));
    if (m.domain == DomainKind::HalfSpace && !p.empty() && p.back() < 0.0)
        throw DomainViolationError("half-space map evaluated below the boundary");
    return std::visit(detail::Evaluator{m, p}, m.kind);
}

/// Clamp a candidate sample into the map's domain (fold the last coordinate
/// up for half-space maps). Used by the estimators.
inline WorldPoint clamp_to_domain(const MapSpec& m, WorldPoint p) {
    if (m.domain == DomainKind::HalfSpace && !p.empty()) p.back() = std::fabs(p.back());
    return p;
}

// ---------------------------------------------------------------------------
// Simplicial approximation: the induced lattice-vertex map.
// ---------------------------------------------------------------------------

/// Round with the half-toward-negative-infinity tie-break (0.5 -> 0,
/// -0.5 -> -1), fixed globally for cross-platform determinism.
inline std::int64_t round_half_down(double x) {
    return static_cast<std::int64_t>(std::ceil(x - 0.5));
}

/// v |-> round(m(v * spacing) / spacing), coordinatewise.
class VertexMap {
public:
    VertexMap(MapSpec m, double spacing) : m_(std::move(m)), spacing_(spacing) {}

    LatticePoint operator()(const LatticePoint& v) const {
        const WorldPoint image = evaluate(m_, to_world(v, spacing_));
        LatticePoint out(image.size());
        for (std::size_t i = 0; i < image.size(); ++i)
            out[i] = round_half_down(image[i] / spacing_);
        return out;
    }

    double spacing() const { return spacing_; }
    const MapSpec& map() const { return m_; }

private:
    MapSpec m_;
    double spacing_;
};

inline VertexMap vertex_map(const MapSpec& m, double spacing) {
    if (spacing <= 0.0) throw CoarseError("vertex map needs positive spacing");
    return VertexMap(m, spacing);
}

// ---------------------------------------------------------------------------
// Def.-1 estimators: bornologous modulus and properness at scale.
// ---------------------------------------------------------------------------

/// Sampled realization of the "for all R there is S" relation. The table is
/// a measured maximum over pairs, monotone in R by cumulative max, and
/// carries the window and seed it was measured with.
struct BornologousModulus {
    std::vector<double> radii;
    std::vector<double> s_values;
    Window window;
    std::uint64_t seed = 0;
    std::size_t pairs_per_radius = 0;

    double at(std::size_t i) const { return s_values[i]; }
};

/// Max displacement of m over deterministic anchor pairs plus seeded random
/// pairs at separation exactly R. Anchors (origin-to-axis and an antipodal
/// axis pair) make the measurement exact for isometries and linear maps.
inline BornologousModulus estimate_bornologous_modulus(const MapSpec& m,
                                                       const std::vector<double>& radii,
                                                       const Window& w,
                                                       std::size_t pairs_per_radius,
                                                       std::uint64_t seed) {
    require_valid(w);
    for (std::size_t i = 0; i + 1 < radii.size(); ++i)
        if (radii[i] > radii[i + 1])
            throw CoarseError("bornologous radii must be ascending");
    const std::size_t n = static_cast<std::size_t>(m.dim);
    const double box = static_cast<double>(w.half_width) * w.spacing;

    BornologousModulus out;
    out.radii = radii;
    out.window = w;
    out.seed = seed;
    out.pairs_per_radius = pairs_per_radius;
    out.s_values.assign(radii.size(), 0.0);

    for (std::size_t ri = 0; ri < radii.size(); ++ri) {
        const double R = radii[ri];
        double s = 0.0;
        auto consider = [&](const WorldPoint& a, const WorldPoint& b) {
            const WorldPoint pa = clamp_to_domain(m, a);
            const WorldPoint pb = clamp_to_domain(m, b);
            s = std::max(s, dist(evaluate(m, pa), evaluate(m, pb)));
        };
        // anchor pairs at separation exactly R
        const WorldPoint origin(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            WorldPoint e(n, 0.0);
            e[i] = R;
            consider(origin, e);
            e[i] = -R;
            consider(origin, e);
        }
        {
            WorldPoint a(n, 0.0), b(n, 0.0);
            a[0] = -R / 2.0;
            b[0] = R / 2.0;
            consider(a, b);
        }
        // seeded random pairs inside the window box
        Rng rng(mix_bits(seed ^ (0x6041u + ri)));
        for (std::size_t k = 0; k < pairs_per_radius; ++k) {
            WorldPoint a(n);
            for (double& c : a) c = rng.uniform(-box, box);
            const WorldPoint u = rng.unit_vector(static_cast<int>(n));
            consider(a, add(a, scale(u, R)));
        }
        out.s_values[ri] = (ri == 0) ? s : std::max(s, out.s_values[ri - 1]);
    }
    return out;
}

/// Properness evidence: the max norm of swept lattice points that land in
/// the ball B(0, T), per window rung. "Proper at scale" means the bound
/// stops growing across the last two rungs (within one lattice step).
struct PropernessReport {
    double ball_radius = 0.0;
    std::vector<std::int64_t> ladder;
    std::vector<double> max_preimage_norm;
    bool proper_at_scale = false;
    double spacing = 1.0;
    std::uint64_t seed = 0;
};

inline PropernessReport check_properness(const MapSpec& m, double T,
                                         const std::vector<Window>& window_ladder,
                                         std::uint64_t seed = 0,
                                         std::size_t budget_per_rung = 20000) {
    if (window_ladder.empty()) throw CoarseError("properness ladder must be nonempty");
    for (std::size_t i = 0; i + 1 < window_ladder.size(); ++i)
        if (window_ladder[i].half_width >= window_ladder[i + 1].half_width)
            throw CoarseError("properness ladder must be strictly increasing");

    PropernessReport out;
    out.ball_radius = T;
    out.spacing = window_ladder.front().spacing;
    out.seed = seed;

    for (const Window& w : window_ladder) {
        double max_norm = 0.0;
        auto probe = [&](const LatticePoint& v) {
            const WorldPoint p = clamp_to_domain(m, to_world(v, w.spacing));
            if (norm(evaluate(m, p)) <= T) max_norm = std::max(max_norm, norm(p));
        };
        sweep_window_lattice(w, budget_per_rung, probe);
        // dense core sweep so strided rungs cannot miss a preimage near 0
        const double core_reach = T + norm(evaluate(m, clamp_to_domain(m, WorldPoint(
                                          static_cast<std::size_t>(m.dim), 0.0))));
        Window core = w;
        core.half_width = std::min<std::int64_t>(
            w.half_width,
            static_cast<std::int64_t>(std::ceil(core_reach / w.spacing)) + 2);
        if (core.half_width >= 1) sweep_window_lattice(core, budget_per_rung, probe);
        out.ladder.push_back(w.half_width);
        out.max_preimage_norm.push_back(max_norm);
    }

    const std::size_t r = out.max_preimage_norm.size();
    if (r >= 2) {
        out.proper_at_scale =
            out.max_preimage_norm[r - 1] <= out.max_preimage_norm[r - 2] + out.spacing;
    } else {
        out.proper_at_scale = true;
    }
    return out;
}

} // namespace coarsedeg

#endif // COARSEDEG_MAPS_HPP
