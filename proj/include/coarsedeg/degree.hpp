#ifndef COARSEDEG_DEGREE_HPP
#define COARSEDEG_DEGREE_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <vector>

#include "coarsedeg/chain.hpp"
#include "coarsedeg/cycle.hpp"
#include "coarsedeg/exact.hpp"
#include "coarsedeg/maps.hpp"
#include "coarsedeg/util.hpp"

namespace coarsedeg {

/// Apply a lattice-vertex map to every tuple of a chain. Image tuples that
/// coincide merge by coefficient addition; zero terms are pruned. Each
/// distinct vertex is evaluated once (memoized), since windowed chains reuse
/// vertices heavily. Commutes with the boundary operator by construction.
template <typename Vm>
Chain pushforward(const Chain& c, const Vm& vm) {
    Chain out = Chain::zero(c.q, c.dim, c.spacing);
    const std::size_t d = static_cast<std::size_t>(c.dim);
    const std::size_t tuples = c.tuple_size();
    std::map<LatticePoint, LatticePoint> cache;
    for (const auto& [key, coeff] : c.terms) {
        std::vector<std::int64_t> image;
        image.reserve(key.size());
        for (std::size_t i = 0; i < tuples; ++i) {
            LatticePoint v(key.begin() + static_cast<std::ptrdiff_t>(i * d),
                           key.begin() + static_cast<std::ptrdiff_t>((i + 1) * d));
            auto it = cache.find(v);
            if (it == cache.end()) it = cache.emplace(v, vm(v)).first;
            image.insert(image.end(), it->second.begin(), it->second.end());
        }
        out.add_term(std::move(image), coeff);
    }
    return out;
}

namespace detail {

/// Face-hyperplane proximity guard: a point this close to a realized face
/// is rejected as non-generic so the caller can jitter and retry.
inline constexpr double kFaceTolerance = 1e-9;

/// Double-precision determinant for the distance estimate only; every
/// decision that affects the covering count is made with exact signs.
inline double det_double(std::vector<std::vector<double>> m) {
    const std::size_t n = m.size();
    double det = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::fabs(m[i][k]) > std::fabs(m[pivot][k])) pivot = i;
        if (m[pivot][k] == 0.0) return 0.0;
        if (pivot != k) {
            std::swap(m[pivot], m[k]);
            det = -det;
        }
        det *= m[k][k];
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = m[i][k] / m[k][k];
            for (std::size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
        }
    }
    return det;
}

struct SimplexProbe {
    // homogeneous rows [w_i | 1] for the vertices, in exact dyadic form
    std::vector<std::vector<Dyadic>> vertex_rows;
    std::vector<std::vector<double>> vertex_rows_dbl;
    int orientation = 0; // sign of the edge determinant, lattice units
};

/// Signed containment of p in one realized simplex:
///   +orient / -orient if strictly inside, 0 if strictly outside;
/// throws NonGenericPointError when p lies on (or within tolerance of) a
/// face of the realized simplex.
inline int signed_containment(const SimplexProbe& probe,
                              const std::vector<Dyadic>& p_dyadic,
                              const std::vector<double>& p_row) {
    const std::size_t rows = probe.vertex_rows.size(); // n+1
    // exact homogeneous sign with all vertex rows
    DyadicMatrix base(rows);
    for (std::size_t i = 0; i < rows; ++i) base.set_row(i, probe.vertex_rows[i]);
    const int sign_full = base.sign();
    // nondegenerate by construction (orientation != 0)

    int matching = 0, zeros = 0;
    double min_face_dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < rows; ++i) {
        DyadicMatrix mi(rows);
        for (std::size_t r = 0; r < rows; ++r)
            mi.set_row(r, r == i ? p_dyadic : probe.vertex_rows[r]);
        const int s = mi.sign();
        if (s == sign_full) ++matching;
        else if (s == 0) ++zeros;

        // distance estimate from p to face hyperplane i (double precision):
        // |det A_i(p)| divided by the norm of its gradient in p
        std::vector<std::vector<double>> md = probe.vertex_rows_dbl;
        md[i] = p_row;
        const double val = det_double(md);
        double grad_sq = 0.0;
        for (std::size_t j = 0; j + 1 < p_row.size(); ++j) {
            std::vector<std::vector<double>> mg = probe.vertex_rows_dbl;
            std::vector<double> unit(p_row.size(), 0.0);
            unit[j] = 1.0;
            mg[i] = unit; // affine part removed: gradient component
            const double g = det_double(mg);
            grad_sq += g * g;
        }
        if (grad_sq > 0.0)
            min_face_dist = std::min(min_face_dist, std::fabs(val) / std::sqrt(grad_sq));
    }

    const bool in_closed = (matching + zeros == static_cast<int>(rows));
    if (in_closed && zeros > 0)
        throw NonGenericPointError("test point lies on a simplex face");
    if (in_closed && min_face_dist < kFaceTolerance)
        throw NonGenericPointError("test point within tolerance of a simplex face");
    if (!in_closed) return 0;
    return probe.orientation;
}

} // namespace detail

/// Signed covering count of a degree-n chain in R^n at a generic point:
/// sum over terms of coeff * orientation * [p inside the realized simplex].
/// Degenerate tuples (zero edge determinant) realize to measure-zero sets
/// and contribute nothing. Throws NonGenericPointError when p is on or
/// within 1e-9 of a realized face; callers retry with a jittered point.
inline long long covering_number(const Chain& c, const WorldPoint& p) {
    if (c.q != c.dim)
        throw ChainMismatchError("covering_number needs a top-dimensional chain");
    if (static_cast<int>(p.size()) != c.dim)
        throw ChainMismatchError("covering_number: point dimension mismatch");
    const std::size_t d = static_cast<std::size_t>(c.dim);
    const std::size_t tuples = c.tuple_size();

    const Dyadic spacing_dy = to_dyadic(c.spacing);
    std::vector<Dyadic> p_dyadic(d + 1);
    std::vector<double> p_row(d + 1);
    for (std::size_t j = 0; j < d; ++j) {
        p_dyadic[j] = to_dyadic(p[j]);
        p_row[j] = p[j];
    }
    p_dyadic[d] = Dyadic{1, 0};
    p_row[d] = 1.0;

    // padding for the bbox reject so near-face points are still examined
    const double margin = 1e-6 * std::max(1.0, c.spacing);

    Coeff total = 0;
    for (const auto& [key, coeff] : c.terms) {
        // fast bounding-box reject in world units
        bool candidate = true;
        for (std::size_t j = 0; j < d && candidate; ++j) {
            std::int64_t lo = key[j], hi = key[j];
            for (std::size_t i = 1; i < tuples; ++i) {
                lo = std::min(lo, key[i * d + j]);
                hi = std::max(hi, key[i * d + j]);
            }
            const double wlo = static_cast<double>(lo) * c.spacing - margin;
            const double whi = static_cast<double>(hi) * c.spacing + margin;
            if (p[j] < wlo || p[j] > whi) candidate = false;
        }
        if (!candidate) continue;

        // orientation of the image simplex: integer edge determinant
        std::vector<std::vector<BigInt>> edges(d, std::vector<BigInt>(d));
        for (std::size_t i = 1; i < tuples; ++i)
            for (std::size_t j = 0; j < d; ++j)
                edges[i - 1][j] = key[i * d + j] - key[j];
        const int orient = det_sign(edges);
        if (orient == 0) continue; // degenerate realization

        detail::SimplexProbe probe;
        probe.orientation = orient;
        probe.vertex_rows.assign(tuples, std::vector<Dyadic>(d + 1));
        probe.vertex_rows_dbl.assign(tuples, std::vector<double>(d + 1));
        for (std::size_t i = 0; i < tuples; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                Dyadic e = spacing_dy;
                e.mant *= key[i * d + j];
                if (e.mant == 0) e = Dyadic{0, 0};
                probe.vertex_rows[i][j] = e;
                probe.vertex_rows_dbl[i][j] = static_cast<double>(key[i * d + j]) * c.spacing;
            }
            probe.vertex_rows[i][d] = Dyadic{1, 0};
            probe.vertex_rows_dbl[i][d] = 1.0;
        }

        const int side = detail::signed_containment(probe, p_dyadic, p_row);
        if (side != 0) total += coeff * side;
    }

    if (total > Coeff(std::numeric_limits<long long>::max()) ||
        total < Coeff(std::numeric_limits<long long>::min()))
        throw CoarseError("covering number out of integer range");
    return total.convert_to<long long>();
}

/// Degree evidence: the common covering value (when stable), the window it
/// was computed on, and the per-point covering counts backing it. `stable`
/// demands agreement across all test points and across both window rungs.
struct DegreeResult {
    std::optional<long long> d;
    bool stable = false;
    Window window_used;
    std::vector<WorldPoint> test_points;
    std::vector<long long> coverings;      // full window, per test point
    std::vector<long long> coverings_half; // half window, per test point
    double growth_bound = 0.0;             // measured K-hat
    double modulus_step = 0.0;             // measured S at one lattice diagonal
    double safe_half_width = 0.0;          // world units
};

namespace detail {

inline constexpr double kInvSqrt2 = 0.70710678118654752440;

/// One covering evaluation with deterministic jitter-retry. The point must
/// be generic for both chains simultaneously so both rungs see the same p.
inline void covering_with_retry(const Chain& full, const Chain& half, WorldPoint p,
                                Rng& rng, double spacing, WorldPoint& p_out,
                                long long& cov_full, long long& cov_half) {
    for (int attempt = 0; attempt < 20; ++attempt) {
        try {
            cov_full = covering_number(full, p);
            cov_half = covering_number(half, p);
            p_out = p;
            return;
        } catch (const NonGenericPointError&) {
            for (double& c : p)
                c += rng.uniform(0.5, 1.5) * kInvSqrt2 * 0x1.0p-12 * spacing;
        }
    }
    throw NonGenericPointError("no generic test point found after 20 jitters");
}

} // namespace detail

/// The coarse degree of a self-map of R^n on a finite window: push the
/// fundamental cycle of the window (and of the half-size window) through the
/// induced vertex map, then read signed covering counts at seeded generic
/// points in the safe interior region. The safe region shrinks the window by
/// the measured growth bound of the map and by a collar deduced from its
/// bornologous modulus, so test points stay away from the image of the
/// window boundary; rung agreement is the final guard.
inline DegreeResult degree(const MapSpec& m, const Window& window,
                           std::size_t num_test_points = 8, std::uint64_t seed = 0) {
    require_valid(window);
    if (m.dim != window.dim) throw ChainMismatchError("degree: dimension mismatch");
    if (m.domain != DomainKind::FullSpace)
        throw DomainViolationError("degree is defined for full-space maps; fold first");
    if (window.half_width < 2)
        throw WindowTooSmallError("degree needs a window of half-width >= 2");
    if (num_test_points == 0) throw CoarseError("degree needs at least one test point");

    const int n = window.dim;
    const double spacing = window.spacing;

    // Growth bound K-hat at window scale: the slope (|m(x)| - |m(0)|) / |x|
    // maximized over the outer half of the swept window lattice. Subtracting
    // the value at the origin keeps constant offsets (translations, bounded
    // perturbations) from inflating the bound, and restricting to the outer
    // half measures the rate where the window boundary actually lives.
    const double m_at_origin = norm(evaluate(m, WorldPoint(static_cast<std::size_t>(n), 0.0)));
    const double outer = 0.5 * static_cast<double>(window.half_width) * spacing;
    double khat = 0.0;
    sweep_window_lattice(window, 4096, [&](const LatticePoint& v) {
        const WorldPoint x = to_world(v, spacing);
        const double r = norm(x);
        if (r < outer) return;
        khat = std::max(khat, (norm(evaluate(m, x)) - m_at_origin) / r);
    });
    const double k_eff = std::max(1.0, khat);

    // one-step modulus: S at the lattice diagonal, measured on the window
    const double diag = std::sqrt(static_cast<double>(n)) * spacing;
    const BornologousModulus mod =
        estimate_bornologous_modulus(m, {diag}, window, 128, seed);
    const double s_step = mod.s_values[0];

    // Test points must sit deep inside the image of BOTH window rungs. The
    // slope bound k_eff shrinks the half rung's reach to (L/2)/k_eff lattice
    // steps; the collar and modulus step guard the triangulated boundary
    // layer; and |m(0)| accounts for the whole image being displaced, which
    // the slope (measured relative to m(0)) deliberately ignores.
    const double c_lattice = static_cast<double>(window.collar) + s_step / spacing;
    const double L = static_cast<double>(window.half_width);
    const double safe_formula = (L / (2.0 * k_eff) - c_lattice) * spacing - m_at_origin;

    Window half = window;
    half.half_width = window.half_width / 2;
    half.collar = std::min<std::int64_t>(half.collar, std::max<std::int64_t>(half.half_width - 1, 0));

    // Contractions shrink the image below what the clamped slope predicts, so
    // additionally cap the safe radius by the measured inner radius of the
    // image of each rung's boundary shell (minus the same collar terms).
    double shell_inner = std::numeric_limits<double>::infinity();
    const Window* rungs[2] = {&window, &half};
    for (const Window* rung : rungs) {
        sweep_window_lattice(*rung, 4096, [&](const LatticePoint& v) {
            std::int64_t linf = 0;
            for (const std::int64_t c : v) linf = std::max(linf, std::abs(c));
            if (linf != rung->half_width) return;
            shell_inner = std::min(shell_inner, norm(evaluate(m, to_world(v, spacing))));
        });
    }
    const double safe_shell = shell_inner - c_lattice * spacing;

    const double safe = std::min(safe_formula, safe_shell);
    if (safe < 0.25 * spacing)
        throw WindowTooSmallError(
            "window leaves no safe interior region for degree test points");

    const VertexMap vm = vertex_map(m, spacing);
    const Chain pf_full = pushforward(fundamental_cycle(window), vm);
    const Chain pf_half = pushforward(fundamental_cycle(half), vm);

    DegreeResult out;
    out.window_used = window;
    out.growth_bound = khat;
    out.modulus_step = s_step;
    out.safe_half_width = safe;
    out.test_points.assign(num_test_points, WorldPoint());
    out.coverings.assign(num_test_points, 0);
    out.coverings_half.assign(num_test_points, 0);

    parallel_for(num_test_points, [&](std::size_t k) {
        Rng rng(mix_bits(seed ^ (0xde60ull + k)));
        WorldPoint p(static_cast<std::size_t>(n));
        for (double& c : p) c = rng.uniform(-safe, safe) * 0.98;
        for (double& c : p) c += rng.uniform(0.5, 1.5) * detail::kInvSqrt2 * 0x1.0p-10 * spacing;
        detail::covering_with_retry(pf_full, pf_half, p, rng, spacing, out.test_points[k],
                                    out.coverings[k], out.coverings_half[k]);
    });

    bool stable = true;
    for (std::size_t k = 0; k < num_test_points; ++k) {
        if (out.coverings[k] != out.coverings[0]) stable = false;
        if (out.coverings_half[k] != out.coverings[0]) stable = false;
    }
    out.stable = stable;
    if (stable) out.d = out.coverings[0];
    return out;
}

} // namespace coarsedeg

#endif // COARSEDEG_DEGREE_HPP
