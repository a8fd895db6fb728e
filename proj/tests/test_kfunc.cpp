#include "bdm/kfunc.hpp"
#include "bdm/suite.hpp"

#include <gtest/gtest.h>

#include <cmath>

using bdm::Point;
using bdm::WeightConfig;

namespace {

bdm::SpectralCoefficients<1> single_block(const WeightConfig &cfg, int ell, double scale = 1.0) {
    bdm::SpectralCoefficients<1> c(cfg, ell);
    c.block(ell)[0] = scale;
    return c;
}

// Brute-force minimum of ‖f − g‖ + t‖Λg‖ over all ĝ (not just the shrinkage curve):
// cyclic coordinate descent with golden-section line searches.
double k_coordinate_descent_oracle(const std::vector<double> &f, const std::vector<double> &lambda, double t) {
    std::vector<double> g = f;
    const auto h = [&](const std::vector<double> &v) {
        double a = 0.0, b = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            a += (f[i] - v[i]) * (f[i] - v[i]);
            b += lambda[i] * lambda[i] * v[i] * v[i];
        }
        return std::sqrt(a) + t * std::sqrt(b);
    };
    for (int sweep = 0; sweep < 400; ++sweep) {
        for (std::size_t i = 0; i < g.size(); ++i) {
            double lo = -2.0 * std::abs(f[i]) - 1.0, hi = 2.0 * std::abs(f[i]) + 1.0;
            for (int it = 0; it < 120; ++it) {
                const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
                auto g1 = g, g2 = g;
                g1[i] = m1;
                g2[i] = m2;
                (h(g1) < h(g2) ? hi : lo) = (h(g1) < h(g2) ? m2 : m1);
            }
            g[i] = 0.5 * (lo + hi);
        }
    }
    std::vector<double> zero(f.size(), 0.0);
    return std::min(h(g), h(zero));
}

} // namespace

TEST(KFunctional, SingleBlockClosedForm) {
    for (double rho : {0.0, 1.0, 2.5}) {
        const WeightConfig cfg({(rho - 1.0) / 2, (rho - 1.0) / 2});
        for (int ell = 1; ell <= 20; ++ell) {
            const double lambda = ell * (ell + rho);
            for (int i = 0; i < 40; ++i) {
                const double t = 1e-4 * std::pow(1e5, i / 39.0);
                const double k = bdm::k_exact_p2(cfg, single_block(cfg, ell), t);
                EXPECT_NEAR(k, std::min(1.0, t * lambda), 1e-8) << ell << " " << t;
            }
        }
    }
}

TEST(KFunctional, Trivial) {
    const WeightConfig cfg({0.0, 0.0});
    bdm::SpectralCoefficients<1> zero(cfg, 5);
    EXPECT_EQ(bdm::k_exact_p2(cfg, zero, 0.3), 0.0);
    const auto c = single_block(cfg, 3, 2.0);
    EXPECT_EQ(bdm::k_exact_p2(cfg, c, 0.0), 0.0);
    // constants cost nothing
    auto k = single_block(cfg, 0, 5.0);
    EXPECT_EQ(bdm::k_exact_p2(cfg, k, 0.7), 0.0);
    EXPECT_THROW((void)bdm::k_exact_p2(cfg, c, -1.0), std::invalid_argument);
}

TEST(KFunctional, MatchesCoordinateDescentOracle) {
    const WeightConfig cfg({0.5, -0.5});
    const double rho = cfg.rho();
    bdm::SpectralCoefficients<1> c(cfg, 3);
    c.block(0)[0] = 0.4;
    c.block(1)[0] = 0.9;
    c.block(2)[0] = -0.5;
    c.block(3)[0] = 0.3;
    std::vector<double> f{0.9, -0.5, 0.3};
    std::vector<double> lambda;
    for (int ell = 1; ell <= 3; ++ell) {
        lambda.push_back(ell * (ell + rho));
    }
    for (double t : {0.01, 0.05, 0.12, 0.3, 1.0}) {
        const double oracle = k_coordinate_descent_oracle(f, lambda, t);
        EXPECT_NEAR(bdm::k_exact_p2(cfg, c, t), oracle, 1e-7) << t;
    }
}

TEST(KFunctional, FrozenValue) {
    // frozen from a Nelder–Mead minimisation over all ĝ ∈ R³ (scipy), f̂ = (0.9, −0.5, 0.3), ρ = 1, t = 0.15
    const WeightConfig cfg({0.5, -0.5});
    bdm::SpectralCoefficients<1> c(cfg, 3);
    c.block(1)[0] = 0.9;
    c.block(2)[0] = -0.5;
    c.block(3)[0] = 0.3;
    EXPECT_NEAR(bdm::k_exact_p2(cfg, c, 0.15), 0.6979728051435402, 1e-9);
}

TEST(KFunctional, MonotoneAndSubhomogeneous) {
    const WeightConfig cfg({0.0, 0.0});
    for (const auto &tf : bdm::random_polynomials<1>(cfg, 7, 6)) {
        const auto &c = *tf.coefficients;
        double prev = 0.0;
        for (int i = 0; i < 30; ++i) {
            const double t = 1e-4 * std::pow(10.0, i / 6.0);
            const double k = bdm::k_exact_p2(cfg, c, t);
            EXPECT_GE(k, prev - 1e-14);
            EXPECT_LE(k, c.l2_norm() + 1e-14);
            for (double lam : {0.3, 2.0, 7.5}) {
                EXPECT_LE(bdm::k_exact_p2(cfg, c, lam * t), std::max(1.0, lam) * k + 1e-12);
            }
            prev = k;
        }
    }
}

TEST(KFunctional, MinimizerAttainsValue) {
    const WeightConfig cfg({-0.5, -0.5});
    const auto c = *bdm::random_polynomials<1>(cfg, 3, 10).back().coefficients;
    const double t = 0.02;
    const auto g = bdm::k_minimizer_p2(cfg, c, t);
    const double h = (c - g).l2_norm() + t * bdm::apply_P_spectral(cfg, g).l2_norm();
    EXPECT_NEAR(h, bdm::k_exact_p2(cfg, c, t), 1e-12);
}

TEST(KFunctional, UpperAndLowerOnEigenfunctions) {
    const WeightConfig cfg({0.0, 0.0});
    const bdm::KEvaluator<1> ev(cfg, 8);
    for (int ell : {1, 3, 8}) {
        const auto c = single_block(cfg, ell).with_max_degree(8);
        const auto target = ev.sample([&](const Point<1> &x) { return ev.basis().value(ell, 0, x); }, c);
        for (int n : {2, 4, 16, 64}) {
            const double t = 1.0 / n;
            const double exact = bdm::k_exact_p2(cfg, c, t);
            const auto up = bdm::k_upper(ev, target, t, 2.0);
            EXPECT_NEAR(up.upper, exact, 1e-8);
            const double lower = bdm::k_lower(ev, target, n, 2.0);
            const double mu = n >= ell ? bdm::eigenvalue_mu(cfg, n, ell) : 0.0;
            EXPECT_NEAR(lower, (1.0 - mu) / 2.0, 1e-14);
            EXPECT_LE(lower, std::min(1.0, ell * (ell + 1.0) / n) + 1e-15);
            EXPECT_LE(lower, exact + 1e-14);
            for (double p : {1.0, bdm::kPInfinity}) {
                const auto u = bdm::k_upper(ev, target, t, p);
                EXPECT_LE(u.upper, ev.norm(target, p) + 1e-14);
                EXPECT_LE(bdm::k_lower(ev, target, n, p), u.upper + 1e-12);
            }
        }
    }
}

TEST(KFunctional, UpperIsMonotoneInT) {
    const WeightConfig cfg({0.5, 0.5});
    const auto tf = bdm::random_polynomials<1>(cfg, 11, 9).back();
    const bdm::KEvaluator<1> ev(cfg, tf.band);
    const auto target = ev.sample(tf.eval, tf.coefficients->with_max_degree(tf.band));
    double prev = 0.0;
    for (int i = 0; i < 25; ++i) {
        const double t = 1e-3 * std::pow(10.0, i / 8.0);
        const double k = bdm::k_upper(ev, target, t, 2.0).upper;
        EXPECT_GE(k, prev - 1e-14) << t;
        prev = k;
    }
    for (double p : {1.0, 2.0, bdm::kPInfinity}) {
        // g = 0 bound when t ≥ 1/(1+ρ) and f = φ_1
        const auto phi1 = ev.sample([&](const Point<1> &x) { return ev.basis().value(1, 0, x); },
                                    single_block(cfg, 1).with_max_degree(tf.band));
        EXPECT_LE(bdm::k_upper(ev, phi1, 1.0 / (1.0 + cfg.rho()), p).upper, ev.norm(phi1, p) + 1e-14);
    }
}

TEST(KFunctional, BracketOnPolynomialSuite) {
    const WeightConfig cfg({0.0, 0.0});
    for (const auto &tf : bdm::make_suite<1>(cfg, 2024, bdm::SuiteKind::smooth)) {
        const bdm::KEvaluator<1> ev(cfg, tf.band);
        const auto target = ev.sample(tf.eval, tf.coefficients->with_max_degree(tf.band));
        for (int n : {4, 16, 64}) {
            const double exact = bdm::k_exact_p2(cfg, target.coeffs, 1.0 / n);
            EXPECT_LE(bdm::k_lower(ev, target, n, 2.0), exact + 1e-12) << tf.id;
            EXPECT_LE(exact, bdm::k_upper(ev, target, 1.0 / n, 2.0).upper + 1e-12) << tf.id;
        }
    }
}

TEST(KFunctional, TailBracket) {
    const WeightConfig cfg({0.0, 0.0});
    const auto kinks = bdm::kink_functions();
    const auto &step = kinks[2];
    const bdm::KEvaluator<1> ev(cfg, 64, step.breakpoints);
    const auto target = ev.sample(step.eval, true);
    EXPECT_GT(target.coeffs.tail_norm(), 0.0);
    // ‖1_{x>0.7}‖₂ = √0.3
    EXPECT_NEAR(ev.norm(target, 2.0), std::sqrt(0.3), 1e-12);
    const auto br = bdm::k_bracket_p2(cfg, target.coeffs, 1.0 / 16);
    EXPECT_LE(br.lower, br.upper);
    EXPECT_GE(br.lower, 0.0);
    EXPECT_THROW((void)bdm::k_exact_p2(cfg, target.coeffs, 0.1), std::invalid_argument);
    const auto up = bdm::k_upper(ev, target, 1.0 / 16, 2.0);
    EXPECT_LE(up.upper, br.upper + 1e-14);
    EXPECT_LE(bdm::k_lower(ev, target, 16, 2.0), up.upper);
}
