#ifndef COARSEDEG_LATTICE_HPP
#define COARSEDEG_LATTICE_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "coarsedeg/util.hpp"

namespace coarsedeg {

/// Lattice coordinates; world position = coords * spacing.
using LatticePoint = std::vector<std::int64_t>;

inline WorldPoint to_world(const LatticePoint& v, double spacing) {
    WorldPoint p(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        p[i] = static_cast<double>(v[i]) * spacing;
    return p;
}

/// Finite lattice box [-L, L]^n with a boundary collar reserved for
/// boundary-supported terms. All combinatorics run in lattice units;
/// `spacing` is the world scale only.
struct Window {
    int dim = 0;
    std::int64_t half_width = 0; // L
    double spacing = 1.0;
    std::int64_t collar = 2;

    bool valid() const {
        return dim >= 1 && half_width >= 1 && spacing > 0.0 && collar >= 0;
    }
};

inline Window make_window(int dim, std::int64_t half_width, double spacing = 1.0) {
    Window w;
    w.dim = dim;
    w.half_width = half_width;
    w.spacing = spacing;
    w.collar = std::min<std::int64_t>(2, std::max<std::int64_t>(half_width - 1, 0));
    return w;
}

inline void require_valid(const Window& w) {
    if (!w.valid())
        throw InvalidWindowError("invalid window: dim=" + std::to_string(w.dim) +
                                 " L=" + std::to_string(w.half_width));
}

/// Top-dimensional lattice simplex with its orientation sign (+1/-1, the
/// sign of the determinant of the edge vectors in vertex order).
struct OrientedSimplex {
    std::vector<LatticePoint> vertices; // q+1 entries
    int sign = 0;
};

/// All lattice points of the window in lexicographic order,
/// (2L+1)^n of them.
inline std::vector<LatticePoint> enumerate_window(const Window& w) {
    require_valid(w);
    const std::int64_t L = w.half_width;
    std::vector<LatticePoint> out;
    std::size_t total = 1;
    for (int i = 0; i < w.dim; ++i) total *= static_cast<std::size_t>(2 * L + 1);
    out.reserve(total);

    LatticePoint cur(static_cast<std::size_t>(w.dim), -L);
    while (true) {
        out.push_back(cur);
        int axis = w.dim - 1;
        while (axis >= 0) {
            if (cur[static_cast<std::size_t>(axis)] < L) {
                ++cur[static_cast<std::size_t>(axis)];
                break;
            }
            cur[static_cast<std::size_t>(axis)] = -L;
            --axis;
        }
        if (axis < 0) break;
    }
    return out;
}

inline int permutation_sign(const std::vector<int>& perm) {
    int inversions = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
        for (std::size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j]) ++inversions;
    return (inversions % 2 == 0) ? 1 : -1;
}

/// The Kuhn (Freudenthal) triangulation of the window: each unit cube with
/// corner c splits into n! simplices, one per axis permutation pi, with
/// vertex chain c, c+e_{pi(0)}, c+e_{pi(0)}+e_{pi(1)}, ... The triangulation
/// is translation invariant, so neighboring cubes agree on shared faces.
inline std::vector<OrientedSimplex> kuhn_simplices(const Window& w) {
    require_valid(w);
    const int n = w.dim;
    const std::int64_t L = w.half_width;

    std::vector<OrientedSimplex> out;
    std::size_t cubes = 1;
    for (int i = 0; i < n; ++i) cubes *= static_cast<std::size_t>(2 * L);
    std::size_t nfact = 1;
    for (int i = 2; i <= n; ++i) nfact *= static_cast<std::size_t>(i);
    out.reserve(cubes * nfact);

    // cube corners c in [-L, L-1]^n, lexicographic
    LatticePoint corner(static_cast<std::size_t>(n), -L);
    while (true) {
        std::vector<int> perm(static_cast<std::size_t>(n));
        std::iota(perm.begin(), perm.end(), 0);
        do {
            OrientedSimplex s;
            s.vertices.reserve(static_cast<std::size_t>(n) + 1);
            LatticePoint v = corner;
            s.vertices.push_back(v);
            for (int k = 0; k < n; ++k) {
                ++v[static_cast<std::size_t>(perm[static_cast<std::size_t>(k)])];
                s.vertices.push_back(v);
            }
            // edge vectors form a permutation matrix; det sign = perm parity
            s.sign = permutation_sign(perm);
            out.push_back(std::move(s));
        } while (std::next_permutation(perm.begin(), perm.end()));

        int axis = n - 1;
        while (axis >= 0) {
            if (corner[static_cast<std::size_t>(axis)] < L - 1) {
                ++corner[static_cast<std::size_t>(axis)];
                break;
            }
            corner[static_cast<std::size_t>(axis)] = -L;
            --axis;
        }
        if (axis < 0) break;
    }
    return out;
}

/// Deterministic sweep over the window lattice, subsampled with an axis
/// stride when the full grid would exceed `budget` points. +/-L are always
/// included on every axis.
template <typename Fn>
void sweep_window_lattice(const Window& w, std::size_t budget, Fn&& fn) {
    require_valid(w);
    const std::int64_t L = w.half_width;
    std::int64_t stride = 1;
    while (true) {
        const std::size_t per_axis = static_cast<std::size_t>((2 * L) / stride + 1);
        std::size_t total = 1;
        bool over = false;
        for (int i = 0; i < w.dim; ++i) {
            total *= per_axis;
            if (total > budget) { over = true; break; }
        }
        if (!over) break;
        ++stride;
    }

    std::vector<std::int64_t> axis_coords;
    for (std::int64_t c = -L; c <= L; c += stride) axis_coords.push_back(c);
    if (axis_coords.back() != L) axis_coords.push_back(L);

    std::vector<std::size_t> idx(static_cast<std::size_t>(w.dim), 0);
    LatticePoint v(static_cast<std::size_t>(w.dim));
    while (true) {
        for (int i = 0; i < w.dim; ++i) v[static_cast<std::size_t>(i)] = axis_coords[idx[static_cast<std::size_t>(i)]];
        fn(v);
        int axis = w.dim - 1;
        while (axis >= 0) {
            if (++idx[static_cast<std::size_t>(axis)] < axis_coords.size()) break;
            idx[static_cast<std::size_t>(axis)] = 0;
            --axis;
        }
        if (axis < 0) break;
    }
}

} // namespace coarsedeg

#endif // COARSEDEG_LATTICE_HPP
