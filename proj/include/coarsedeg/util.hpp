#ifndef COARSEDEG_UTIL_HPP
#define COARSEDEG_UTIL_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace coarsedeg {

/// A point of the ambient Euclidean space, in world units.
using WorldPoint = std::vector<double>;

inline constexpr double kPi = 3.14159265358979323846;

// ---------------------------------------------------------------------------
// Error taxonomy. Everything thrown by the library derives from CoarseError.
// ---------------------------------------------------------------------------

struct CoarseError : std::runtime_error {
    explicit CoarseError(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidWindowError : CoarseError { using CoarseError::CoarseError; };
struct DegreeUnderflowError : CoarseError { using CoarseError::CoarseError; };
struct ChainMismatchError : CoarseError { using CoarseError::CoarseError; };
struct DomainViolationError : CoarseError { using CoarseError::CoarseError; };
struct NonGenericPointError : CoarseError { using CoarseError::CoarseError; };
struct InvalidDirectionError : CoarseError { using CoarseError::CoarseError; };
struct DegeneratePairError : CoarseError { using CoarseError::CoarseError; };
struct WindowTooSmallError : CoarseError { using CoarseError::CoarseError; };

/// Evaluation failure of a map; `coordinate` is the offending output
/// coordinate (0-based) when known, -1 otherwise.
struct EvalError : CoarseError {
    int coordinate = -1;
    explicit EvalError(const std::string& what, int coord = -1)
        : CoarseError(what), coordinate(coord) {}
};

/// Parse failure with position. `column` is a 0-based byte offset into the
/// offending line.
struct ParseError : CoarseError {
    int line = 1;
    int column = 0;
    ParseError(const std::string& what, int line_, int column_)
        : CoarseError(what + " (line " + std::to_string(line_) + ", column " +
                      std::to_string(column_) + ")"),
          line(line_), column(column_) {}
};

// ---------------------------------------------------------------------------
// Small vector helpers.
// ---------------------------------------------------------------------------

inline double dot(const WorldPoint& a, const WorldPoint& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm_sq(const WorldPoint& a) { return dot(a, a); }
inline double norm(const WorldPoint& a) { return std::sqrt(norm_sq(a)); }

inline double dist(const WorldPoint& a, const WorldPoint& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

inline WorldPoint add(WorldPoint a, const WorldPoint& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}

inline WorldPoint sub(WorldPoint a, const WorldPoint& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
}

inline WorldPoint scale(WorldPoint a, double k) {
    for (double& v : a) v *= k;
    return a;
}

inline WorldPoint negate(WorldPoint a) {
    for (double& v : a) v = -v;
    return a;
}

/// Unit vector in the direction of `a`; throws on the zero vector.
inline WorldPoint direction(const WorldPoint& a) {
    const double n = norm(a);
    if (n <= 0.0) throw InvalidDirectionError("direction of zero vector");
    return scale(a, 1.0 / n);
}

// ---------------------------------------------------------------------------
// Deterministic RNG. splitmix64 stream; all derived draws are defined here so
// sequences are identical across platforms and standard libraries.
// ---------------------------------------------------------------------------

inline std::uint64_t mix_bits(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        // inclusive bounds; modulo bias is irrelevant at the ranges used here
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo + 1);
        return lo + static_cast<std::int64_t>(next() % span);
    }

    /// Standard normal via Box-Muller.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = unit(), u2 = unit();
        if (u1 <= 0.0) u1 = 0x1.0p-53;
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

    /// Uniform direction on the unit sphere of dimension dim.
    WorldPoint unit_vector(int dim) {
        WorldPoint v(static_cast<std::size_t>(dim));
        while (true) {
            for (double& c : v) c = normal();
            const double n = norm(v);
            if (n > 1e-12) return scale(std::move(v), 1.0 / n);
        }
    }

private:
    std::uint64_t state_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

// ---------------------------------------------------------------------------
// Bounded parallelism. COARSEDEG_THREADS caps the worker count; results are
// written into per-index slots so the outcome is independent of scheduling.
// ---------------------------------------------------------------------------

inline unsigned thread_budget() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("COARSEDEG_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1 && static_cast<unsigned>(v) < hw) return static_cast<unsigned>(v);
        if (v >= 1) return static_cast<unsigned>(v) > 256u ? 256u : static_cast<unsigned>(v);
    }
    return hw;
}

template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn) {
    const unsigned workers =
        static_cast<unsigned>(std::min<std::size_t>(thread_budget(), count));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> cursor{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            while (true) {
                const std::size_t i = cursor.fetch_add(1);
                if (i >= count) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace coarsedeg

#endif // COARSEDEG_UTIL_HPP
