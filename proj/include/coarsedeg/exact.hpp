#ifndef COARSEDEG_EXACT_HPP
#define COARSEDEG_EXACT_HPP

#include <cmath>
#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "coarsedeg/util.hpp"

namespace coarsedeg {

using BigInt = boost::multiprecision::cpp_int;

/// Exact dyadic representation of a double: value = mant * 2^exp, mant odd
/// (or zero). Every finite double decomposes this way losslessly.
struct Dyadic {
    BigInt mant = 0;
    int exp = 0;
};

inline Dyadic to_dyadic(double x) {
    if (x == 0.0) return {BigInt(0), 0};
    int e = 0;
    const double m = std::frexp(x, &e); // |m| in [0.5, 1)
    std::int64_t mant = static_cast<std::int64_t>(std::ldexp(m, 53)); // exact
    int exp = e - 53;
    while ((mant & 1) == 0) {
        mant >>= 1;
        ++exp;
    }
    return {BigInt(mant), exp};
}

/// Sign of the determinant of a square integer matrix, via fraction-free
/// (Bareiss) elimination. Returns -1, 0, or +1; exact for any size.
inline int det_sign(std::vector<std::vector<BigInt>> m) {
    const std::size_t n = m.size();
    int sign = 1;
    BigInt prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
            if (swap_row == n) return 0;
            std::swap(m[k], m[swap_row]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    const BigInt& d = m[n - 1][n - 1];
    if (d == 0) return 0;
    return (d > 0) ? sign : -sign;
}

/// Exact determinant value of a square integer matrix (Bareiss).
inline BigInt det_exact(std::vector<std::vector<BigInt>> m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    int sign = 1;
    BigInt prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
            if (swap_row == n) return 0;
            std::swap(m[k], m[swap_row]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return sign > 0 ? m[n - 1][n - 1] : BigInt(-m[n - 1][n - 1]);
}

/// Rows of dyadic rationals, scaled row-by-row to integers. Per-row scaling
/// by a positive power of two preserves every determinant sign.
class DyadicMatrix {
public:
    explicit DyadicMatrix(std::size_t n) : rows_(n, std::vector<BigInt>(n)) {}

    /// Install row `r` from dyadic entries.
    void set_row(std::size_t r, const std::vector<Dyadic>& entries) {
        int min_exp = 0; // the homogeneous 1 (exp 0) caps this at <= 0
        for (const auto& d : entries)
            if (d.mant != 0 && d.exp < min_exp) min_exp = d.exp;
        for (std::size_t j = 0; j < entries.size(); ++j) {
            BigInt v = entries[j].mant;
            v <<= static_cast<unsigned>(entries[j].exp - min_exp);
            rows_[r][j] = v;
        }
    }

    int sign() const { return det_sign(rows_); }

private:
    std::vector<std::vector<BigInt>> rows_;
};

} // namespace coarsedeg

#endif // COARSEDEG_EXACT_HPP
