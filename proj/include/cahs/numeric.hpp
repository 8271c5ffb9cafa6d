#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

namespace cahs {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int evaluations = 0;
    bool converged = true;
};

/// Adaptive Gauss-Kronrod (G7,K15) quadrature on [a, b] to absolute tolerance.
/// Handles a > b by sign flip. Throws no errors; check `converged`.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double abs_tol, int max_subdivisions = 2000);

/// Convenience wrapper returning the value; non-convergence raises Error.
double integrate(const std::function<double(double)>& f, double a, double b, double abs_tol);

/// Piecewise cubic Hermite spline on strictly increasing nodes.
/// Slopes either supplied (CSV profiles) or derived monotonicity-preserving
/// (Fritsch-Carlson) for interpolation tables.
class CubicHermiteSpline {
public:
    static CubicHermiteSpline with_slopes(std::vector<double> x, std::vector<double> y,
                                          std::vector<double> slope);
    static CubicHermiteSpline monotone(std::vector<double> x, std::vector<double> y);

    double operator()(double t) const;
    double derivative(double t) const;

    double min_x() const { return x_.front(); }
    double max_x() const { return x_.back(); }
    const std::vector<double>& nodes() const { return x_; }
    const std::vector<double>& values() const { return y_; }

private:
    CubicHermiteSpline() = default;
    int segment(double t) const;
    std::vector<double> x_, y_, m_;
};

/// Central-difference step: cbrt(eps) * (1 + |scale|), the usual balance of
/// truncation against rounding for first derivatives.
inline double fd_step(double scale) {
    constexpr double cbrt_eps = 6.0554544523933395e-6;  // eps^(1/3) for double
    return cbrt_eps * (1.0 + std::abs(scale));
}

/// SplitMix64 generator. Fully specified so that seeded sampling is
/// bit-reproducible across platforms and standard libraries.
class DeterministicRng {
public:
    explicit DeterministicRng(std::uint64_t seed = 0) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
    std::uint64_t state_;
};

/// Chunked parallel loop; runs inline when threads <= 1. Writers must target
/// disjoint slots so results are order-independent.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body);

}  // namespace cahs
