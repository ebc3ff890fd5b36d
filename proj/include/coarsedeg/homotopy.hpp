#ifndef COARSEDEG_HOMOTOPY_HPP
#define COARSEDEG_HOMOTOPY_HPP

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "coarsedeg/cfpp.hpp"
#include "coarsedeg/maps.hpp"
#include "coarsedeg/util.hpp"

namespace coarsedeg {

enum class FamilyKind { Linear, Generic };

/// A one-parameter family of maps H_t, t in [0,1]. The linear kind is
/// H_t(x) = t*h(x) - (1-t)*x, the straight-line homotopy from the antipodal
/// map (t=0) to h (t=1). The generic kind interpolates pointwise-linearly
/// between knot maps.
struct HomotopyFamily {
    FamilyKind kind = FamilyKind::Linear;
    int dim = 0;
    MapSpec h;                                     // Linear payload
    std::vector<std::pair<double, MapSpec>> knots; // Generic payload, t ascending

    WorldPoint eval(double t, const WorldPoint& p) const {
        if (kind == FamilyKind::Linear) {
            const WorldPoint hx = evaluate(h, p);
            WorldPoint out(p.size());
            for (std::size_t i = 0; i < p.size(); ++i)
                out[i] = t * hx[i] - (1.0 - t) * p[i];
            return out;
        }
        if (t <= knots.front().first) return evaluate(knots.front().second, p);
        if (t >= knots.back().first) return evaluate(knots.back().second, p);
        std::size_t hi = 1;
        while (knots[hi].first < t) ++hi;
        const auto& [t0, m0] = knots[hi - 1];
        const auto& [t1, m1] = knots[hi];
        const double w = (t - t0) / (t1 - t0);
        const WorldPoint a = evaluate(m0, p);
        const WorldPoint b = evaluate(m1, p);
        WorldPoint out(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) out[i] = (1.0 - w) * a[i] + w * b[i];
        return out;
    }
};

/// H_t(x) = t*h(x) - (1-t)*x; H_0 is the antipodal map, H_1 is h.
inline HomotopyFamily linear_homotopy(MapSpec h) {
    if (h.dim < 1) throw CoarseError("linear homotopy needs a positive dimension");
    if (h.domain != DomainKind::FullSpace)
        throw DomainViolationError("linear homotopy needs a full-space endomap");
    HomotopyFamily fam;
    fam.kind = FamilyKind::Linear;
    fam.dim = h.dim;
    fam.h = std::move(h);
    return fam;
}

inline HomotopyFamily generic_homotopy(std::vector<std::pair<double, MapSpec>> knots) {
    if (knots.size() < 2) throw CoarseError("generic homotopy needs at least two knots");
    for (std::size_t i = 0; i + 1 < knots.size(); ++i)
        if (knots[i].first >= knots[i + 1].first)
            throw CoarseError("homotopy knots must be strictly ascending in t");
    HomotopyFamily fam;
    fam.kind = FamilyKind::Generic;
    fam.dim = knots.front().second.dim;
    for (const auto& [t, m] : knots)
        if (m.dim != fam.dim) throw CoarseError("homotopy knots disagree in dimension");
    fam.knots = std::move(knots);
    return fam;
}

/// Evenly spaced grid 0, 1/(k-1), ..., 1.
inline std::vector<double> uniform_t_grid(std::size_t knot_count) {
    if (knot_count < 2) throw CoarseError("t-grid needs at least two knots");
    std::vector<double> g(knot_count);
    for (std::size_t i = 0; i < knot_count; ++i)
        g[i] = static_cast<double>(i) / static_cast<double>(knot_count - 1);
    return g;
}

/// Uniform bornologous modulus: S(R) = max over the t-grid of the per-t
/// sampled modulus, monotone in R. Same anchors as the single-map estimator.
inline BornologousModulus check_uniformly_bornologous(const HomotopyFamily& fam,
                                                      const std::vector<double>& radii,
                                                      const std::vector<double>& t_grid,
                                                      const Window& w,
                                                      std::size_t pairs_per_radius,
                                                      std::uint64_t seed) {
    require_valid(w);
    if (t_grid.empty()) throw CoarseError("t-grid must be nonempty");
    const std::size_t n = static_cast<std::size_t>(fam.dim);
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
            for (const double t : t_grid)
                s = std::max(s, dist(fam.eval(t, a), fam.eval(t, b)));
        };
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
        Rng rng(mix_bits(seed ^ (0x0b0bull + ri)));
        for (std::size_t k = 0; k < pairs_per_radius; ++k) {
            WorldPoint a(n);
            for (double& c : a) c = rng.uniform(-box, box);
            consider(a, add(a, scale(rng.unit_vector(static_cast<int>(n)), R)));
        }
        out.s_values[ri] = (ri == 0) ? s : std::max(s, out.s_values[ri - 1]);
    }
    return out;
}

/// Uniform properness evidence: max |x| over swept (x, t) with
/// |H_t(x)| <= T, per window rung, with the same stabilization verdict as
/// the single-map estimator.
struct UniformPropernessReport {
    double ball_radius = 0.0;
    std::vector<std::int64_t> ladder;
    std::vector<double> max_preimage_norm;
    bool proper_at_scale = false;
    double spacing = 1.0;
    std::vector<double> t_grid;
};

inline UniformPropernessReport check_uniformly_proper(const HomotopyFamily& fam, double T,
                                                      const std::vector<Window>& ladder,
                                                      const std::vector<double>& t_grid,
                                                      std::uint64_t seed = 0,
                                                      std::size_t budget_per_rung = 4000) {
    if (ladder.empty()) throw CoarseError("properness ladder must be nonempty");
    for (std::size_t i = 0; i + 1 < ladder.size(); ++i)
        if (ladder[i].half_width >= ladder[i + 1].half_width)
            throw CoarseError("properness ladder must be strictly increasing");
    if (t_grid.empty()) throw CoarseError("t-grid must be nonempty");
    (void)seed; // sweep is deterministic; kept for interface symmetry

    UniformPropernessReport out;
    out.ball_radius = T;
    out.spacing = ladder.front().spacing;
    out.t_grid = t_grid;

    for (const Window& w : ladder) {
        double max_norm = 0.0;
        sweep_window_lattice(w, budget_per_rung, [&](const LatticePoint& v) {
            const WorldPoint p = to_world(v, w.spacing);
            for (const double t : t_grid) {
                if (norm(fam.eval(t, p)) <= T) {
                    max_norm = std::max(max_norm, norm(p));
                    break;
                }
            }
        });
        out.ladder.push_back(w.half_width);
        out.max_preimage_norm.push_back(max_norm);
    }

    const std::size_t r = out.max_preimage_norm.size();
    out.proper_at_scale =
        r < 2 || out.max_preimage_norm[r - 1] <= out.max_preimage_norm[r - 2] + out.spacing;
    return out;
}

/// Max jump between adjacent t-knots over swept sample points, plus the same
/// measurement on the half-step grid (a refinement study: for families that
/// are genuinely pseudocontinuous at this scale, the halved grid should not
/// blow the jump up).
struct PseudocontinuityReport {
    double max_jump = 0.0;
    double grid_step = 0.0;
    double refined_max_jump = 0.0;
    double refined_grid_step = 0.0;
    std::vector<double> t_grid;
};

inline PseudocontinuityReport check_pseudocontinuity(const HomotopyFamily& fam,
                                                     const std::vector<double>& t_grid,
                                                     const Window& w, std::uint64_t seed = 0,
                                                     std::size_t budget = 2000) {
    if (t_grid.size() < 2) throw CoarseError("pseudocontinuity needs >= 2 t-knots");
    (void)seed;

    auto max_jump_on = [&](const std::vector<double>& grid) {
        double worst = 0.0;
        sweep_window_lattice(w, budget, [&](const LatticePoint& v) {
            const WorldPoint p = to_world(v, w.spacing);
            WorldPoint prev = fam.eval(grid[0], p);
            for (std::size_t i = 1; i < grid.size(); ++i) {
                WorldPoint cur = fam.eval(grid[i], p);
                worst = std::max(worst, dist(prev, cur));
                prev = std::move(cur);
            }
        });
        return worst;
    };

    std::vector<double> refined;
    refined.reserve(t_grid.size() * 2 - 1);
    for (std::size_t i = 0; i + 1 < t_grid.size(); ++i) {
        refined.push_back(t_grid[i]);
        refined.push_back(0.5 * (t_grid[i] + t_grid[i + 1]));
    }
    refined.push_back(t_grid.back());

    PseudocontinuityReport out;
    out.t_grid = t_grid;
    out.max_jump = max_jump_on(t_grid);
    out.refined_max_jump = max_jump_on(refined);
    double step = 0.0, rstep = 0.0;
    for (std::size_t i = 0; i + 1 < t_grid.size(); ++i)
        step = std::max(step, t_grid[i + 1] - t_grid[i]);
    for (std::size_t i = 0; i + 1 < refined.size(); ++i)
        rstep = std::max(rstep, refined[i + 1] - refined[i]);
    out.grid_step = step;
    out.refined_grid_step = rstep;
    return out;
}

/// Minimal sampled K with |h(x)| <= K * max(|x|, 1) on the window: the max
/// of the ratio over a dense lattice sweep plus seeded off-lattice points.
inline double growth_constant(const MapSpec& h, const Window& w, std::uint64_t seed = 0) {
    require_valid(w);
    double k = 0.0;
    auto consider = [&](const WorldPoint& x) {
        k = std::max(k, norm(evaluate(h, clamp_to_domain(h, x))) / std::max(norm(x), 1.0));
    };
    sweep_window_lattice(w, 4096, [&](const LatticePoint& v) { consider(to_world(v, w.spacing)); });
    const double box = static_cast<double>(w.half_width) * w.spacing;
    Rng rng(mix_bits(seed ^ 0x6f07ull));
    for (int i = 0; i < 512; ++i) {
        WorldPoint x(static_cast<std::size_t>(h.dim));
        for (double& c : x) c = rng.uniform(-box, box);
        consider(x);
    }
    return k;
}

/// True iff the closed segment [a, b] comes within T of the origin.
inline bool segment_meets_ball(const WorldPoint& a, const WorldPoint& b, double T) {
    if (T < 0.0) throw CoarseError("ball radius must be nonnegative");
    const WorldPoint ab = sub(b, a);
    const double len_sq = norm_sq(ab);
    if (len_sq == 0.0) return norm(a) <= T;
    double t = -dot(a, ab) / len_sq;
    t = std::min(1.0, std::max(0.0, t));
    return norm(add(a, scale(ab, t))) <= T;
}

/// Closest point of the segment [a, b] to the origin.
inline WorldPoint segment_closest_to_origin(const WorldPoint& a, const WorldPoint& b) {
    const WorldPoint ab = sub(b, a);
    const double len_sq = norm_sq(ab);
    if (len_sq == 0.0) return a;
    double t = -dot(a, ab) / len_sq;
    t = std::min(1.0, std::max(0.0, t));
    return add(a, scale(ab, t));
}

/// Similar-triangles bound: with K the sampled growth constant and
/// C = 2(1+K), every sampled x with |x| >= 2T whose segment [-x, h(x)]
/// meets B(0, T) must have h(x) within C*T of the ray through x. The
/// secondary check is the half-distance inequality d(-x, p) >= |x|/2 for
/// the segment point p realized inside the ball.
struct TriangleBound {
    double T = 0.0;
    double K = 0.0;
    double C = 0.0;
    std::size_t num_samples = 0;
    std::size_t num_tested = 0;
    struct Violation {
        WorldPoint x;
        double value = 0.0;
        double bound = 0.0;
    };
    std::vector<Violation> violations;          // ray-distance bound failures
    std::vector<Violation> halfdist_violations; // d(-x,p) >= |x|/2 failures
    std::uint64_t seed = 0;
};

inline TriangleBound triangle_bound_check(const MapSpec& h, double T, const Window& w,
                                          std::size_t num_samples, std::uint64_t seed) {
    if (T <= 0.0) throw CoarseError("triangle bound needs T > 0");
    require_valid(w);

    TriangleBound out;
    out.T = T;
    out.K = growth_constant(h, w, seed);
    out.C = 2.0 * (1.0 + out.K);
    out.num_samples = num_samples;
    out.seed = seed;

    const double box = static_cast<double>(w.half_width) * w.spacing;
    Rng rng(mix_bits(seed ^ 0x7514ull));
    for (std::size_t i = 0; i < num_samples; ++i) {
        WorldPoint x(static_cast<std::size_t>(h.dim));
        for (double& c : x) c = rng.uniform(-box, box);
        if (norm(x) < 2.0 * T) continue;
        const WorldPoint hx = evaluate(h, x);
        const WorldPoint minus_x = negate(x);
        if (!segment_meets_ball(minus_x, hx, T)) continue;
        ++out.num_tested;

        const double rd = ray_distance(hx, direction(x));
        if (rd > out.C * T + 1e-12)
            out.violations.push_back({x, rd, out.C * T});

        const WorldPoint p = segment_closest_to_origin(minus_x, hx);
        if (norm(p) <= T) {
            const double lhs = dist(minus_x, p);
            if (lhs + 1e-12 < norm(x) / 2.0)
                out.halfdist_violations.push_back({x, lhs, norm(x) / 2.0});
        }
    }
    return out;
}

} // namespace coarsedeg

#endif // COARSEDEG_HOMOTOPY_HPP
