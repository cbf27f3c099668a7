#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace semilocal {

/// log*(x): number of times log2 must be applied to reach a value <= 1.
inline int log_star(double x) {
    int it = 0;
    while (x > 1.0) {
        x = std::log2(x);
        ++it;
        if (it > 128) throw std::logic_error("log_star diverged");
    }
    return it;
}

inline bool is_prime(std::uint64_t x) {
    if (x < 2) return false;
    if (x % 2 == 0) return x == 2;
    for (std::uint64_t d = 3; d * d <= x; d += 2)
        if (x % d == 0) return false;
    return true;
}

/// Smallest prime strictly greater than x.
inline std::uint64_t next_prime_above(std::uint64_t x) {
    std::uint64_t p = x + 1;
    while (!is_prime(p)) ++p;
    return p;
}

/// Smallest t >= 0 with base^t >= x, i.e. ceil(log_base(x)) computed in
/// exact integer arithmetic. Requires base >= 2, x >= 1.
inline int ceil_log_int(std::uint64_t base, std::uint64_t x) {
    if (base < 2) throw std::invalid_argument("ceil_log_int: base must be >= 2");
    int t = 0;
    std::uint64_t v = 1;
    while (v < x) {
        if (v > UINT64_MAX / base) return t + 1;
        v *= base;
        ++t;
    }
    return t;
}

/// q^e >= m, evaluated without overflow (saturating).
inline bool pow_at_least(std::uint64_t q, int e, long double m) {
    long double v = 1.0L;
    for (int i = 0; i < e; ++i) {
        v *= static_cast<long double>(q);
        if (v >= m) return true;
    }
    return v >= m;
}

} // namespace semilocal
