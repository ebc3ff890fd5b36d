#ifndef COARSEDEG_CYCLE_HPP
#define COARSEDEG_CYCLE_HPP

#include "coarsedeg/chain.hpp"
#include "coarsedeg/lattice.hpp"

namespace coarsedeg {

/// Oriented sum of the standard-triangulation top simplices of the window
/// box. Interior faces cancel in pairs, so the boundary is supported on the
/// outermost vertex layer; restricting the boundary away from that collar
/// yields zero, which is the relative-cycle property degree extraction
/// relies on.
inline Chain fundamental_cycle(const Window& w) {
    if (w.dim < 1 || w.spacing <= 0.0)
        throw InvalidWindowError("fundamental_cycle: dimension and spacing must be positive");
    Chain out = Chain::zero(w.dim, w.dim, w.spacing);
    // A degenerate window (no interior) has nothing to triangulate; callers
    // shrinking windows uniformly rely on getting the zero chain back.
    if (w.half_width < 1) return out;
    for (const auto& simplex : kuhn_simplices(w)) {
        out.add_tuple(simplex.vertices, Coeff(simplex.sign));
    }
    return out;
}

/// A window strictly inside the collar of `w`: terms of the boundary of the
/// fundamental cycle never survive restriction to it.
inline Window interior_window(const Window& w) {
    Window inner = w;
    inner.half_width = std::max<std::int64_t>(w.half_width - std::max<std::int64_t>(w.collar, 1), 0);
    return inner;
}

/// Check that `c` is a cycle relative to the collar: every boundary term
/// must touch the outer `collar` layers of the window.
inline bool is_relative_cycle(const Chain& c, const Window& w) {
    if (c.q < 1) return false;
    const Chain b = boundary(c);
    const std::int64_t cutoff = w.half_width - std::max<std::int64_t>(w.collar, 1);
    for (const auto& [key, coeff] : b.terms) {
        (void)coeff;
        bool touches_collar = false;
        for (const std::int64_t v : key) {
            if (v <= -cutoff || v >= cutoff) { touches_collar = true; break; }
        }
        if (!touches_collar) return false;
    }
    return true;
}

} // namespace coarsedeg

#endif // COARSEDEG_CYCLE_HPP
