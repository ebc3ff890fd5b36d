#ifndef COARSEDEG_CFPP_HPP
#define COARSEDEG_CFPP_HPP

#include <cmath>
#include <cstdint>
#include <vector>

#include "coarsedeg/maps.hpp"
#include "coarsedeg/util.hpp"

namespace coarsedeg {

/// Distance from p to the ray { s*zeta : s >= 0 } (not the full line): the
/// perpendicular distance when p projects onto the ray, otherwise the
/// distance to the cone point at the origin.
inline double ray_distance(const WorldPoint& p, const WorldPoint& zeta) {
    const double zn = norm(zeta);
    if (zn < 1e-12) throw InvalidDirectionError("ray direction must be nonzero");
    const double along = dot(p, zeta) / zn;
    if (along < 0.0) return norm(p);
    const double d_sq = norm_sq(p) - along * along;
    return std::sqrt(std::max(0.0, d_sq));
}

struct RayCandidate {
    WorldPoint zeta;
    double max_dist = 0.0;
};

/// The best single ray for a pair: among dir(x), dir(y), their bisector,
/// and 32 slerp samples between the two directions, the candidate
/// minimizing max(ray_distance(x, .), ray_distance(y, .)). The optimal ray
/// for two points lies in their spanned plane between their directions, so
/// this grid brackets it; ties keep the earliest candidate.
inline RayCandidate best_common_ray(const WorldPoint& x, const WorldPoint& y) {
    const double nx = norm(x), ny = norm(y);
    if (nx < 1e-12 && ny < 1e-12)
        throw DegeneratePairError("both points are at the origin");

    std::vector<WorldPoint> candidates;
    if (nx >= 1e-12) candidates.push_back(direction(x));
    if (ny >= 1e-12) candidates.push_back(direction(y));
    if (nx >= 1e-12 && ny >= 1e-12) {
        const WorldPoint u = candidates[0];
        const WorldPoint v = candidates[1];
        const double c = dot(u, v);
        if (c > -1.0 + 1e-12 && c < 1.0 - 1e-12) {
            candidates.push_back(direction(add(u, v))); // bisector
            const double omega = std::acos(std::min(1.0, std::max(-1.0, c)));
            const double s = std::sin(omega);
            for (int k = 1; k <= 32; ++k) {
                const double t = static_cast<double>(k) / 33.0;
                const WorldPoint dir_k =
                    add(scale(u, std::sin((1.0 - t) * omega) / s),
                        scale(v, std::sin(t * omega) / s));
                candidates.push_back(direction(dir_k));
            }
        }
    }

    RayCandidate best;
    bool first = true;
    for (const auto& zeta : candidates) {
        const double m = std::max(ray_distance(x, zeta), ray_distance(y, zeta));
        if (first || m < best.max_dist) {
            best.zeta = zeta;
            best.max_dist = m;
            first = false;
        }
    }
    return best;
}

/// One escaping point with its ray: both x and f(x) are within R of the ray
/// toward zeta.
struct WitnessEntry {
    double r = 0.0;
    WorldPoint x;
    WorldPoint zeta;
    double dx = 0.0;  // ray distance of x
    double dfx = 0.0; // ray distance of f(x)
};

struct RayWitness {
    double R = 0.0;
    std::vector<WitnessEntry> entries; // radii strictly increasing
};

struct SearchVerdict {
    bool found = false;
    RayWitness witness;                // populated when found
    std::vector<double> radii;
    std::vector<double> best_max_dist; // per-radius minimum over scanned x
};

namespace detail {

/// Deterministic quasi-uniform directions on the unit sphere of R^n; when
/// `halfspace` is set, only directions with last coordinate >= 0. The n=2
/// grid starts at the first axis so half-space boundary directions are hit
/// exactly; n=3 uses a Fibonacci spiral; higher n uses seeded Gaussians.
inline std::vector<WorldPoint> sphere_directions(int n, std::size_t count, bool halfspace,
                                                 std::uint64_t seed) {
    std::vector<WorldPoint> out;
    out.reserve(count);
    if (n == 1) {
        out.push_back(WorldPoint{1.0});
        if (!halfspace) out.push_back(WorldPoint{-1.0});
        return out;
    }
    if (n == 2) {
        for (std::size_t j = 0; j < count; ++j) {
            const double theta =
                halfspace
                    ? kPi * static_cast<double>(j) / static_cast<double>(count - 1)
                    : 2.0 * kPi * static_cast<double>(j) / static_cast<double>(count);
            out.push_back(WorldPoint{std::cos(theta), std::sin(theta)});
        }
        return out;
    }
    if (n == 3) {
        const double golden = kPi * (3.0 - std::sqrt(5.0));
        for (std::size_t j = 0; j < count; ++j) {
            const double frac = (static_cast<double>(j) + 0.5) / static_cast<double>(count);
            const double z = halfspace ? frac : 1.0 - 2.0 * frac;
            const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
            const double phi = golden * static_cast<double>(j);
            out.push_back(WorldPoint{rho * std::cos(phi), rho * std::sin(phi), z});
        }
        return out;
    }
    Rng rng(mix_bits(seed ^ 0x5fe7eull));
    for (std::size_t j = 0; j < count; ++j) {
        WorldPoint u = rng.unit_vector(n);
        if (halfspace) u.back() = std::fabs(u.back());
        out.push_back(std::move(u));
    }
    return out;
}

} // namespace detail

/// Scan spheres |x| = r for points whose pair (x, f(x)) admits a common ray
/// within the budget; a witness needs a hit at every radius of the ladder.
/// A not-found verdict carries the per-radius minima (the evidence that the
/// budget was exceeded), and is a statement about this budget and ladder
/// only.
inline SearchVerdict search_witness(const MapSpec& m, double budget,
                                    const std::vector<double>& radii,
                                    std::size_t points_per_sphere, std::uint64_t seed) {
    if (budget <= 0.0) throw CoarseError("witness budget must be positive");
    if (radii.empty()) throw CoarseError("radius ladder must be nonempty");
    for (std::size_t i = 0; i + 1 < radii.size(); ++i)
        if (radii[i] >= radii[i + 1])
            throw CoarseError("radius ladder must be strictly ascending");
    if (radii.front() <= 0.0) throw CoarseError("radii must be positive");
    if (points_per_sphere < 2) throw CoarseError("need at least two points per sphere");

    const bool halfspace = (m.domain == DomainKind::HalfSpace);
    const auto dirs =
        detail::sphere_directions(m.dim, points_per_sphere, halfspace, seed);

    SearchVerdict verdict;
    verdict.radii = radii;
    verdict.best_max_dist.assign(radii.size(), 0.0);
    std::vector<WitnessEntry> best_entries(radii.size());

    std::vector<char> ok(radii.size(), 0);
    parallel_for(radii.size(), [&](std::size_t ri) {
        const double r = radii[ri];
        double best = -1.0;
        WitnessEntry entry;
        for (const auto& u : dirs) {
            const WorldPoint x = scale(u, r);
            const WorldPoint fx = evaluate(m, x);
            const RayCandidate cand = best_common_ray(x, fx);
            if (best < 0.0 || cand.max_dist < best) {
                best = cand.max_dist;
                entry.r = r;
                entry.x = x;
                entry.zeta = cand.zeta;
                entry.dx = ray_distance(x, cand.zeta);
                entry.dfx = ray_distance(fx, cand.zeta);
            }
        }
        verdict.best_max_dist[ri] = best;
        best_entries[ri] = std::move(entry);
        ok[ri] = (best >= 0.0 && best <= budget) ? 1 : 0;
    });

    bool all_ok = true;
    for (const char c : ok) all_ok = all_ok && (c != 0);
    verdict.found = all_ok;
    if (all_ok) {
        verdict.witness.R = budget;
        verdict.witness.entries = std::move(best_entries);
    }
    return verdict;
}

/// Independent re-check of a witness: the radii escape (strictly increase)
/// and every recomputed ray distance, for both x_i and f(x_i), fits the
/// budget.
inline bool verify_witness(const MapSpec& m, const RayWitness& w) {
    if (w.entries.empty()) return false;
    double prev_r = 0.0;
    for (const auto& e : w.entries) {
        if (e.r <= prev_r) return false;
        prev_r = e.r;
        try {
            const double dx = ray_distance(e.x, e.zeta);
            const double dfx = ray_distance(evaluate(m, e.x), e.zeta);
            if (dx > w.R || dfx > w.R) return false;
        } catch (const CoarseError&) {
            return false;
        }
    }
    return true;
}

} // namespace coarsedeg

#endif // COARSEDEG_CFPP_HPP
