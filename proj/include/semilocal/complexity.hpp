#pragma once

#include <cmath>
#include <functional>
#include <string>

#include "mathutil.hpp"

namespace semilocal {

/// Evaluable complexity function: monotonically non-decreasing, continuous,
/// non-zero, with f(0) = 0. The descriptor is for reporting only.
struct ComplexityFn {
    std::function<double(double)> eval;
    std::string descr;

    static ComplexityFn quadratic(double c) {
        return {[c](double x) { return c * x * x; }, std::to_string(c) + "*x^2"};
    }
    static ComplexityFn linear(double c) {
        return {[c](double x) { return c * x; }, std::to_string(c) + "*x"};
    }
    /// max(0, log2 x): the standard extension with f(0) = 0.
    static ComplexityFn log2x() {
        return {[](double x) { return x <= 1.0 ? 0.0 : std::log2(x); }, "log2(x)"};
    }
    static ComplexityFn xlog2x() {
        return {[](double x) { return x <= 1.0 ? 0.0 : x * std::log2(x); }, "x*log2(x)"};
    }
};

/// Solves g^f(g) = n for the unique root g > 1. The map x -> x^f(x) is
/// non-decreasing (and strictly increasing once f > 0), so bisection
/// applies; the result satisfies |g^f(g) - n| / n <= 1e-9.
inline double solve_g(const ComplexityFn& f, double n) {
    if (n < 2.0) throw std::invalid_argument("solve_g: n must be >= 2");
    if (std::abs(f.eval(0.0)) > 1e-12) throw std::invalid_argument("solve_g: f(0) != 0");
    // Monotonicity probe over a geometric grid.
    double prev = 0.0;
    for (double x = 1.0 / 1024.0; x <= n * 2.0; x *= 2.0) {
        double y = f.eval(x);
        if (y < prev - 1e-9) throw std::invalid_argument("solve_g: f not monotone");
        prev = std::max(prev, y);
    }
    auto val = [&](double x) { return std::pow(x, f.eval(x)); };
    double hi = 2.0;
    int guard = 0;
    while (val(hi) < n) {
        hi *= 2.0;
        if (++guard > 4096) throw std::invalid_argument("solve_g: f appears to be zero");
    }
    double lo = 1.0;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (val(mid) < n)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace semilocal
