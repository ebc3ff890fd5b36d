#ifndef COARSEDEG_CHAIN_HPP
#define COARSEDEG_CHAIN_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "coarsedeg/lattice.hpp"

namespace coarsedeg {

/// Chain coefficients are exact integers; degree extraction tolerates no
/// rounding and no modular wraparound.
using Coeff = boost::multiprecision::cpp_int;

/// Sparse integer combination of (q+1)-tuples of lattice points. Tuples are
/// ordered (no symmetrization); degenerate tuples are legal terms and only
/// drop out at realization time. Terms are keyed by the flattened vertex
/// coordinates, so iteration order is the canonical lexicographic order.
struct Chain {
    int q = 0;           // tuple length - 1
    int dim = 0;         // ambient lattice dimension
    double spacing = 1.0;
    std::map<std::vector<std::int64_t>, Coeff> terms;

    static Chain zero(int q, int dim, double spacing = 1.0) {
        Chain c;
        c.q = q;
        c.dim = dim;
        c.spacing = spacing;
        return c;
    }

    bool is_zero() const { return terms.empty(); }
    std::size_t tuple_size() const { return static_cast<std::size_t>(q) + 1; }

    /// Accumulate coefficient on a flattened tuple, pruning zeros.
    void add_term(std::vector<std::int64_t> key, const Coeff& c) {
        if (c == 0) return;
        auto it = terms.find(key);
        if (it == terms.end()) {
            terms.emplace(std::move(key), c);
        } else {
            it->second += c;
            if (it->second == 0) terms.erase(it);
        }
    }

    void add_tuple(const std::vector<LatticePoint>& vertices, const Coeff& c) {
        std::vector<std::int64_t> key;
        key.reserve(vertices.size() * static_cast<std::size_t>(dim));
        for (const auto& v : vertices) key.insert(key.end(), v.begin(), v.end());
        add_term(std::move(key), c);
    }

    /// Vertex i of a flattened key as a lattice point.
    LatticePoint vertex(const std::vector<std::int64_t>& key, std::size_t i) const {
        const std::size_t d = static_cast<std::size_t>(dim);
        return LatticePoint(key.begin() + static_cast<std::ptrdiff_t>(i * d),
                            key.begin() + static_cast<std::ptrdiff_t>((i + 1) * d));
    }
};

inline bool operator==(const Chain& a, const Chain& b) {
    return a.q == b.q && a.dim == b.dim && a.spacing == b.spacing && a.terms == b.terms;
}
inline bool operator!=(const Chain& a, const Chain& b) { return !(a == b); }

/// Alternating-sign face sum: b(x_0..x_q) = sum_i (-1)^i (x_0..^x_i..x_q).
inline Chain boundary(const Chain& c) {
    if (c.q < 1)
        throw DegreeUnderflowError("boundary of a degree-0 chain");
    Chain out = Chain::zero(c.q - 1, c.dim, c.spacing);
    const std::size_t d = static_cast<std::size_t>(c.dim);
    const std::size_t tuples = c.tuple_size();
    for (const auto& [key, coeff] : c.terms) {
        for (std::size_t i = 0; i < tuples; ++i) {
            std::vector<std::int64_t> face;
            face.reserve((tuples - 1) * d);
            face.insert(face.end(), key.begin(), key.begin() + static_cast<std::ptrdiff_t>(i * d));
            face.insert(face.end(), key.begin() + static_cast<std::ptrdiff_t>((i + 1) * d), key.end());
            out.add_term(std::move(face), (i % 2 == 0) ? coeff : Coeff(-coeff));
        }
    }
    return out;
}

/// k1*c1 + k2*c2 with zero terms pruned.
inline Chain combine(const Chain& c1, const Chain& c2, const Coeff& k1, const Coeff& k2) {
    if (c1.q != c2.q)
        throw ChainMismatchError("combine: degree mismatch");
    if (c1.dim != c2.dim)
        throw ChainMismatchError("combine: dimension mismatch");
    if (c1.spacing != c2.spacing)
        throw ChainMismatchError("combine: spacing mismatch");
    Chain out = Chain::zero(c1.q, c1.dim, c1.spacing);
    for (const auto& [key, coeff] : c1.terms) out.add_term(key, k1 * coeff);
    for (const auto& [key, coeff] : c2.terms) out.add_term(key, k2 * coeff);
    return out;
}

struct ControlRadius {
    double value = 0.0;
};

/// Exact maximum pairwise vertex distance over the support; 0 for the zero
/// chain. The max of the squared lattice distance is integral, so only the
/// final sqrt is inexact.
inline ControlRadius control_radius(const Chain& c) {
    std::int64_t max_sq = 0;
    const std::size_t d = static_cast<std::size_t>(c.dim);
    const std::size_t tuples = c.tuple_size();
    for (const auto& [key, coeff] : c.terms) {
        (void)coeff;
        for (std::size_t i = 0; i < tuples; ++i) {
            for (std::size_t j = i + 1; j < tuples; ++j) {
                std::int64_t sq = 0;
                for (std::size_t k = 0; k < d; ++k) {
                    const std::int64_t diff = key[i * d + k] - key[j * d + k];
                    sq += diff * diff;
                }
                max_sq = std::max(max_sq, sq);
            }
        }
    }
    return ControlRadius{std::sqrt(static_cast<double>(max_sq)) * c.spacing};
}

/// Keep exactly the terms all of whose vertices lie in the window box.
inline Chain restrict_to_window(const Chain& c, const Window& w) {
    if (w.dim != c.dim)
        throw ChainMismatchError("restrict_to_window: dimension mismatch");
    Chain out = Chain::zero(c.q, c.dim, c.spacing);
    const std::int64_t L = w.half_width;
    for (const auto& [key, coeff] : c.terms) {
        bool inside = true;
        for (const std::int64_t v : key) {
            if (v < -L || v > L) { inside = false; break; }
        }
        if (inside) out.terms.emplace(key, coeff);
    }
    return out;
}

} // namespace coarsedeg

#endif // COARSEDEG_CHAIN_HPP
