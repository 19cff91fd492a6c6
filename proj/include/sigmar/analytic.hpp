// analytic.hpp
// Binary64 evaluation of zeta(r), Euler factors and the partial/tail
// Euler products over primes. These are the analytic right-hand sides of
// every inequality in the density criterion.

#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "sigmar/primes.hpp"

namespace sigmar {

// zeta() domain. The lower guard keeps the pole at r = 1 out of reach;
// the upper guard keeps the stated error budget honest (beyond 64 the
// result is 1 to machine precision anyway).
inline constexpr double kZetaMinArg = 1.0 + 1e-6;
inline constexpr double kZetaMaxArg = 64.0;

inline bool zeta_domain_contains(double r) {
    return r >= kZetaMinArg && r <= kZetaMaxArg;
}

// Riemann zeta on [1 + 1e-6, 64]: Dirichlet sum to N = 64 plus the
// Euler-Maclaurin tail with three Bernoulli corrections (B2, B4, B6).
// The first omitted term is below 2e-17 over the whole domain, so the
// achieved accuracy is rounding-limited: relative error is a few 1e-16,
// i.e. absolute error <= 1e-12 for r >= 1.1. Near the pole the absolute
// error grows with the value itself (zeta(1+e) ~ 1/e).
inline double zeta(double r) {
    if (!zeta_domain_contains(r))
        throw std::domain_error("zeta: r must lie in [1 + 1e-6, 64]");

    constexpr int N = 64;
    double sum = 0.0;
    for (int n = 1; n <= N; ++n)
        sum += std::pow(static_cast<double>(n), -r);

    const double nr = std::pow(static_cast<double>(N), -r); // N^-r
    const double n1 = nr / N;                               // N^-(r+1)
    const double n3 = n1 / (N * N);                         // N^-(r+3)
    const double n5 = n3 / (N * N);                         // N^-(r+5)

    double tail = std::pow(static_cast<double>(N), 1.0 - r) / (r - 1.0) - 0.5 * nr;
    tail += r / 12.0 * n1;
    tail -= r * (r + 1.0) * (r + 2.0) / 720.0 * n3;
    tail += r * (r + 1.0) * (r + 2.0) * (r + 3.0) * (r + 4.0) / 30240.0 * n5;
    return sum + tail;
}

// 1/(1 - p^-r), the p-local factor of zeta(r); equals the supremum of
// sigma_{-r} over powers of p. Closed form, never series summation.
inline double euler_factor(std::uint64_t p, double r) {
    if (!(r > 1.0))
        throw std::domain_error("euler_factor: r must exceed 1");
    return 1.0 / (1.0 - std::pow(static_cast<double>(p), -r));
}

// log(euler_factor(p, r)) without forming the quotient; log1p keeps full
// precision when p^-r is tiny.
inline double log_euler_factor(std::uint64_t p, double r) {
    if (!(r > 1.0))
        throw std::domain_error("log_euler_factor: r must exceed 1");
    return -std::log1p(-std::pow(static_cast<double>(p), -r));
}

// Product of the Euler factors of the first m primes. m = 0 gives 1.
inline double partial_euler_product(std::size_t m, double r, const PrimeTable& table) {
    if (!(r > 1.0))
        throw std::domain_error("partial_euler_product: r must exceed 1");
    if (m > table.size())
        throw std::out_of_range("partial_euler_product: table holds only " +
                                std::to_string(table.size()) + " primes, need " +
                                std::to_string(m));
    double prod = 1.0;
    for (std::size_t i = 1; i <= m; ++i)
        prod *= euler_factor(table.prime(i), r);
    return prod;
}

// Product of the Euler factors of all primes beyond the first m,
// evaluated in closed form as zeta(r) * prod_{i<=m} (1 - p_i^-r). This is
// the supremum of sigma_{-r} over integers coprime to the first m primes.
inline double tail_product(std::size_t m, double r, const PrimeTable& table) {
    const double z = zeta(r); // also enforces the domain
    if (m > table.size())
        throw std::out_of_range("tail_product: table holds only " +
                                std::to_string(table.size()) + " primes, need " +
                                std::to_string(m));
    double prod = z;
    for (std::size_t i = 1; i <= m; ++i)
        prod *= 1.0 - std::pow(static_cast<double>(table.prime(i)), -r);
    return prod;
}

} // namespace sigmar
