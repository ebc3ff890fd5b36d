#ifndef COARSEDEG_TESTS_ORACLE_HELPERS_HPP
#define COARSEDEG_TESTS_ORACLE_HELPERS_HPP

// Test-local oracles, deliberately independent of the library code paths:
// naive determinants, inversion counting, a from-scratch boundary operator,
// and planar covering counts via cross-product signs. These are frozen
// reference implementations; tests compare library output against them.

#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "coarsedeg/coarsedeg.hpp"

namespace oracle {

// Laplace-expansion determinant, exact for the small integer matrices used
// in tests.
inline long long laplace_det(const std::vector<std::vector<long long>>& m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    if (n == 1) return m[0][0];
    long long acc = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (m[0][j] == 0) continue;
        std::vector<std::vector<long long>> minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<long long> row;
            for (std::size_t c = 0; c < n; ++c)
                if (c != j) row.push_back(m[r][c]);
            minor.push_back(row);
        }
        const long long cofactor = laplace_det(minor);
        acc += ((j % 2 == 0) ? 1 : -1) * m[0][j] * cofactor;
    }
    return acc;
}

// Edge-vector determinant of a lattice simplex (v1-v0, ..., vq-v0).
inline long long edge_det(const std::vector<coarsedeg::LatticePoint>& vertices) {
    const std::size_t q = vertices.size() - 1;
    std::vector<std::vector<long long>> m(q, std::vector<long long>(q));
    for (std::size_t i = 0; i < q; ++i)
        for (std::size_t j = 0; j < q; ++j)
            m[i][j] = vertices[i + 1][j] - vertices[0][j];
    return laplace_det(m);
}

// Permutation parity by explicit inversion counting.
inline int inversion_parity(const std::vector<int>& perm) {
    int inversions = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
        for (std::size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j]) ++inversions;
    return (inversions % 2 == 0) ? 1 : -1;
}

// Raw tuple->coefficient maps, independent of coarsedeg::Chain.
using RawChain = std::map<std::vector<std::int64_t>, long long>;

inline std::vector<std::int64_t> flatten(const std::vector<coarsedeg::LatticePoint>& tuple) {
    std::vector<std::int64_t> flat;
    for (const auto& v : tuple)
        for (const std::int64_t c : v) flat.push_back(c);
    return flat;
}

// From-scratch boundary: drop vertex i with sign (-1)^i, accumulate, prune.
inline RawChain naive_boundary(const coarsedeg::Chain& c) {
    RawChain acc;
    const std::size_t dim = static_cast<std::size_t>(c.dim);
    for (const auto& [flat, coeff] : c.terms) {
        const std::size_t verts = flat.size() / dim;
        for (std::size_t drop = 0; drop < verts; ++drop) {
            std::vector<std::int64_t> face;
            for (std::size_t v = 0; v < verts; ++v) {
                if (v == drop) continue;
                for (std::size_t k = 0; k < dim; ++k)
                    face.push_back(flat[v * dim + k]);
            }
            const long long sign = (drop % 2 == 0) ? 1 : -1;
            acc[face] += sign * static_cast<long long>(coeff);
        }
    }
    for (auto it = acc.begin(); it != acc.end();) {
        if (it->second == 0) it = acc.erase(it);
        else ++it;
    }
    return acc;
}

inline RawChain raw_of(const coarsedeg::Chain& c) {
    RawChain out;
    for (const auto& [flat, coeff] : c.terms)
        out[flat] = static_cast<long long>(coeff);
    return out;
}

// Random chain with small support, suitable for exact-arithmetic property
// tests.
inline coarsedeg::Chain random_chain(coarsedeg::Rng& rng, int dim, int q,
                                     std::size_t max_terms, std::int64_t coord_range,
                                     double spacing = 1.0) {
    coarsedeg::Chain c = coarsedeg::Chain::zero(q, dim, spacing);
    const std::int64_t terms = rng.uniform_int(1, static_cast<std::int64_t>(max_terms));
    for (std::int64_t t = 0; t < terms; ++t) {
        std::vector<coarsedeg::LatticePoint> tuple;
        for (int v = 0; v <= q; ++v) {
            coarsedeg::LatticePoint p;
            for (int k = 0; k < dim; ++k)
                p.push_back(rng.uniform_int(-coord_range, coord_range));
            tuple.push_back(p);
        }
        const long long coeff = static_cast<long long>(rng.uniform_int(-9, 9));
        if (coeff != 0) c.add_tuple(tuple, coeff);
    }
    return c;
}

// Signed covering count on the line: each 1-simplex (a, b) containing p
// contributes coeff * sign(b - a).
inline long long covering_1d(const coarsedeg::Chain& c, double p) {
    long long total = 0;
    for (const auto& [flat, coeff] : c.terms) {
        const double a = static_cast<double>(flat[0]) * c.spacing;
        const double b = static_cast<double>(flat[1]) * c.spacing;
        if (a == b) continue;
        const double lo = std::min(a, b), hi = std::max(a, b);
        if (lo < p && p < hi)
            total += static_cast<long long>(coeff) * (b > a ? 1 : -1);
    }
    return total;
}

// Signed covering count in the plane via cross-product signs; valid for
// generic p (not near any edge line).
inline long long covering_2d(const coarsedeg::Chain& c, double px, double py) {
    long long total = 0;
    for (const auto& [flat, coeff] : c.terms) {
        const double ax = static_cast<double>(flat[0]) * c.spacing;
        const double ay = static_cast<double>(flat[1]) * c.spacing;
        const double bx = static_cast<double>(flat[2]) * c.spacing;
        const double by = static_cast<double>(flat[3]) * c.spacing;
        const double cx = static_cast<double>(flat[4]) * c.spacing;
        const double cy = static_cast<double>(flat[5]) * c.spacing;
        const double orient = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
        if (orient == 0.0) continue;
        auto side = [&](double ux, double uy, double vx, double vy) {
            return (vx - ux) * (py - uy) - (vy - uy) * (px - ux);
        };
        const double s1 = side(ax, ay, bx, by);
        const double s2 = side(bx, by, cx, cy);
        const double s3 = side(cx, cy, ax, ay);
        const bool inside_ccw = s1 > 0 && s2 > 0 && s3 > 0;
        const bool inside_cw = s1 < 0 && s2 < 0 && s3 < 0;
        if ((orient > 0 && inside_ccw) || (orient < 0 && inside_cw))
            total += static_cast<long long>(coeff) * (orient > 0 ? 1 : -1);
    }
    return total;
}

} // namespace oracle

#endif // COARSEDEG_TESTS_ORACLE_HELPERS_HPP
