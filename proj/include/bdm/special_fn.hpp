#pragma once
/**
 * @file special_fn.hpp
 * @brief Scalar special functions: log-gamma, digamma, trigamma/tetragamma and
 * log-domain gamma ratios.
 *
 * Strategy for all functions: shift the argument upward with the functional
 * recurrence until it is at least kAsymptoticThreshold, then sum the
 * Stirling-type asymptotic series. With the threshold at 10 and eight
 * Bernoulli terms the truncation error is below 1e-18.
 */

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace bdm {

/// Euler–Mascheroni constant.
inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

namespace detail {

inline constexpr double kAsymptoticThreshold = 10.0;

// B_2, B_4, ..., B_16
inline constexpr std::array<double, 8> kBernoulli{
    1.0 / 6.0,          -1.0 / 30.0,   1.0 / 42.0,        -1.0 / 30.0,
    5.0 / 66.0,         -691.0 / 2730.0, 7.0 / 6.0,        -3617.0 / 510.0};

inline void require_positive(double x, const char *fn) {
    if (!(x > 0.0)) {
        throw std::domain_error(std::string(fn) + ": argument must be > 0, got " +
                                std::to_string(x));
    }
}

/// Number of unit shifts needed to bring x above the asymptotic threshold.
inline int shift_count(double x) {
    return x >= kAsymptoticThreshold ? 0 : static_cast<int>(std::ceil(kAsymptoticThreshold - x));
}

/// Stirling correction sum_{k} B_{2k} / (2k(2k-1) x^{2k-1}).
inline double stirling_tail(double x) {
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    double pow = inv;
    double sum = 0.0;
    for (std::size_t k = 1; k <= kBernoulli.size(); ++k) {
        const double twok = 2.0 * static_cast<double>(k);
        sum += kBernoulli[k - 1] / (twok * (twok - 1.0)) * pow;
        pow *= inv2;
    }
    return sum;
}

/// log of x (x+1) ... (x+k-1), accumulated as a product in overflow-safe chunks.
inline double log_rising(double x, int k) {
    double acc = 0.0;
    double prod = 1.0;
    for (int i = 0; i < k; ++i) {
        prod *= x + i;
        if (prod > 1e280 || prod < 1e-280) {
            acc += std::log(prod);
            prod = 1.0;
        }
    }
    return acc + std::log(prod);
}

} // namespace detail

/// ln Γ(x) for x > 0.
inline double log_gamma(double x) {
    detail::require_positive(x, "log_gamma");
    const int k = detail::shift_count(x);
    const double y = x + k;
    const double stirling = (y - 0.5) * std::log(y) - y +
                            0.5 * std::log(2.0 * std::numbers::pi) + detail::stirling_tail(y);
    return k == 0 ? stirling : stirling - detail::log_rising(x, k);
}

/// ψ(x) = d/dx ln Γ(x) for x > 0.
inline double digamma(double x) {
    detail::require_positive(x, "digamma");
    double shift = 0.0;
    while (x < detail::kAsymptoticThreshold) {
        shift -= 1.0 / x;
        x += 1.0;
    }
    const double inv2 = 1.0 / (x * x);
    double pow = inv2;
    double series = 0.0;
    for (std::size_t k = 1; k <= detail::kBernoulli.size(); ++k) {
        series += detail::kBernoulli[k - 1] / (2.0 * static_cast<double>(k)) * pow;
        pow *= inv2;
    }
    return shift + std::log(x) - 0.5 / x - series;
}

/**
 * ψ(a) − ψ(b) without the cancellation of two separate ln-sized values.
 *
 * Both arguments are shifted to the asymptotic range; the leading logarithms
 * are combined as log1p((A−B)/B).
 */
inline double digamma_difference(double a, double b) {
    detail::require_positive(a, "digamma_difference");
    detail::require_positive(b, "digamma_difference");
    if (a == b) {
        return 0.0;
    }
    double shift = 0.0;
    while (a < detail::kAsymptoticThreshold) {
        shift -= 1.0 / a;
        a += 1.0;
    }
    while (b < detail::kAsymptoticThreshold) {
        shift += 1.0 / b;
        b += 1.0;
    }
    const double ia2 = 1.0 / (a * a);
    const double ib2 = 1.0 / (b * b);
    double pa = ia2;
    double pb = ib2;
    double series = 0.0;
    for (std::size_t k = 1; k <= detail::kBernoulli.size(); ++k) {
        series += detail::kBernoulli[k - 1] / (2.0 * static_cast<double>(k)) * (pa - pb);
        pa *= ia2;
        pb *= ib2;
    }
    return shift + std::log1p((a - b) / b) - 0.5 * (1.0 / a - 1.0 / b) - series;
}

/**
 * Polygamma ψ^{(m)}(x) for m ∈ {1, 2}.
 *
 * Asymptotic form:
 *   ψ^{(m)}(x) ~ (−1)^{m+1} [ (m−1)!/x^m + m!/(2x^{m+1})
 *                             + Σ_k B_{2k} (2k+m−1)!/((2k)! x^{2k+m}) ].
 */
inline double polygamma(int m, double x) {
    if (m != 1 && m != 2) {
        throw std::domain_error("polygamma: only orders 1 and 2 are supported, got " +
                                std::to_string(m));
    }
    detail::require_positive(x, "polygamma");
    const double sign = (m == 1) ? 1.0 : -1.0;
    const double mfact = (m == 1) ? 1.0 : 2.0;
    double shift = 0.0;
    while (x < detail::kAsymptoticThreshold) {
        shift += mfact / std::pow(x, m + 1);
        x += 1.0;
    }
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    // (m-1)!/x^m + m!/(2 x^{m+1})
    double lead = (m == 1) ? inv + 0.5 * inv2 : inv2 + inv2 * inv;
    double pow = std::pow(inv, 2 + m);
    double series = 0.0;
    for (std::size_t k = 1; k <= detail::kBernoulli.size(); ++k) {
        // (2k+m-1)!/(2k)!: 1 for m = 1, (2k+1) for m = 2
        const double factor = (m == 1) ? 1.0 : 2.0 * static_cast<double>(k) + 1.0;
        series += detail::kBernoulli[k - 1] * factor * pow;
        pow *= inv2;
    }
    return sign * (shift + lead + series);
}

/**
 * ln Γ(a) − ln Γ(b).
 *
 * Antisymmetric by construction. When a − b is a positive integer of at most
 * 64 the ratio is the rising product b (b+1) ... (a−1); otherwise both
 * arguments are shifted into the asymptotic range and the Stirling forms are
 * subtracted with the logarithms combined through log1p.
 */
inline double gamma_ratio_log(double a, double b) {
    detail::require_positive(a, "gamma_ratio_log");
    detail::require_positive(b, "gamma_ratio_log");
    if (a == b) {
        return 0.0;
    }
    if (a < b) {
        return -gamma_ratio_log(b, a);
    }
    const double diff = a - b;
    if (diff <= 64.0 && diff == std::floor(diff)) {
        return detail::log_rising(b, static_cast<int>(diff));
    }
    const int ka = detail::shift_count(a);
    const int kb = detail::shift_count(b);
    const double A = a + ka;
    const double B = b + kb;
    // (A−½) ln A − (B−½) ln B − (A−B) = (A−½) log1p((A−B)/B) + (A−B)(ln B − 1)
    double value = (A - 0.5) * std::log1p((A - B) / B) + (A - B) * (std::log(B) - 1.0) +
                   detail::stirling_tail(A) - detail::stirling_tail(B);
    if (ka > 0) {
        value -= detail::log_rising(a, ka);
    }
    if (kb > 0) {
        value += detail::log_rising(b, kb);
    }
    return value;
}

} // namespace bdm
