#pragma once
/**
 * @file suite.hpp
 * @brief Test functions for the verification harness: seeded random
 * polynomials, single eigenfunctions and (d = 1) functions with kinks or jumps.
 */

#include "bdm/orthopoly.hpp"
#include "bdm/quadrature.hpp"

#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace bdm {

/// Spectral band used to resolve functions that are not polynomials.
inline constexpr int kKinkBand = 1024;

template <int Dim> struct TestFunction {
    std::string id;
    std::function<double(const Point<Dim> &)> eval;
    std::vector<double> breakpoints;
    /// Exact coefficients for polynomials; empty for functions resolved by projection.
    std::optional<SpectralCoefficients<Dim>> coefficients;
    int band = 0; ///< polynomial degree, or the resolution band for the rest
};

enum class SuiteKind { full, polynomials, eigenfunctions, kinks, smooth };

inline SuiteKind parse_suite(const std::string &s) {
    if (s == "full") {
        return SuiteKind::full;
    }
    if (s == "poly" || s == "polynomials") {
        return SuiteKind::polynomials;
    }
    if (s == "eigen" || s == "eigenfunctions") {
        return SuiteKind::eigenfunctions;
    }
    if (s == "kink" || s == "kinks") {
        return SuiteKind::kinks;
    }
    if (s == "smooth") {
        return SuiteKind::smooth;
    }
    throw std::invalid_argument("unknown suite '" + s + "' (full, poly, eigen, kink, smooth)");
}

/// Uniform on [−1, 1) from the raw 64-bit output, identical on every platform.
inline double portable_uniform(std::mt19937_64 &gen) {
    return 2.0 * static_cast<double>(gen() >> 11) * 0x1.0p-53 - 1.0;
}

namespace detail {

template <int Dim> TestFunction<Dim> from_coefficients(std::string id, SpectralCoefficients<Dim> c) {
    const int deg = std::max(c.degree(), 0);
    auto basis = std::make_shared<SpectralBasis<Dim>>(c.config(), deg);
    auto coeffs = std::make_shared<SpectralCoefficients<Dim>>(c.with_max_degree(deg));
    TestFunction<Dim> f;
    f.id = std::move(id);
    f.eval = [basis, coeffs](const Point<Dim> &x) { return evaluate(*coeffs, *basis, x); };
    f.coefficients = std::move(c);
    f.band = deg;
    return f;
}

} // namespace detail

/// Twenty unit-norm polynomials with degrees 1..10 and coefficients uniform in [−1, 1).
template <int Dim>
std::vector<TestFunction<Dim>> random_polynomials(const WeightConfig &cfg, std::uint64_t seed, int count = 20) {
    std::mt19937_64 gen(seed);
    std::vector<TestFunction<Dim>> out;
    for (int i = 0; i < count; ++i) {
        const int deg = 1 + i % 10;
        SpectralCoefficients<Dim> c(cfg, deg);
        for (double &v : c.values()) {
            v = portable_uniform(gen);
        }
        if (c.block_norm(deg) == 0.0) {
            c.block(deg)[0] = 1.0;
        }
        const double norm = c.l2_norm();
        c *= 1.0 / norm;
        out.push_back(detail::from_coefficients<Dim>("poly" + std::to_string(i) + "_deg" + std::to_string(deg),
                                                     std::move(c)));
    }
    return out;
}

/// φ_ℓ (first member of V_ℓ) for ℓ ∈ {1, 2, 3, 5, 8}.
template <int Dim> std::vector<TestFunction<Dim>> eigenfunctions(const WeightConfig &cfg) {
    std::vector<TestFunction<Dim>> out;
    for (int ell : {1, 2, 3, 5, 8}) {
        SpectralCoefficients<Dim> c(cfg, ell);
        c.block(ell)[0] = 1.0;
        out.push_back(detail::from_coefficients<Dim>("phi" + std::to_string(ell), std::move(c)));
    }
    return out;
}

/// |x − 1/3|, |x − 0.55|³ and the jump 1_{x > 0.7}.
inline std::vector<TestFunction<1>> kink_functions() {
    std::vector<TestFunction<1>> out;
    out.push_back({"kink_abs", [](const Point<1> &x) { return std::abs(x[0] - 1.0 / 3.0); }, {1.0 / 3.0},
                   std::nullopt, kKinkBand});
    out.push_back({"kink_cubic", [](const Point<1> &x) { return std::pow(std::abs(x[0] - 0.55), 3); }, {0.55},
                   std::nullopt, kKinkBand});
    out.push_back({"step", [](const Point<1> &x) { return x[0] > 0.7 ? 1.0 : 0.0; }, {0.7}, std::nullopt,
                   kKinkBand});
    return out;
}

template <int Dim> std::vector<TestFunction<Dim>> make_suite(const WeightConfig &cfg, std::uint64_t seed, SuiteKind kind) {
    std::vector<TestFunction<Dim>> out;
    const auto append = [&out](std::vector<TestFunction<Dim>> more) {
        for (auto &f : more) {
            out.push_back(std::move(f));
        }
    };
    if (kind == SuiteKind::full || kind == SuiteKind::polynomials || kind == SuiteKind::smooth) {
        append(random_polynomials<Dim>(cfg, seed));
    }
    if (kind == SuiteKind::full || kind == SuiteKind::eigenfunctions || kind == SuiteKind::smooth) {
        append(eigenfunctions<Dim>(cfg));
    }
    if constexpr (Dim == 1) {
        if (kind == SuiteKind::full || kind == SuiteKind::kinks) {
            append(kink_functions());
        }
    }
    return out;
}

} // namespace bdm
