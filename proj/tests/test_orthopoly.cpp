#include "bdm/orthopoly.hpp"

#include <gtest/gtest.h>

#include <cmath>

using bdm::Point;
using bdm::WeightConfig;

namespace {

template <int Dim> bdm::QuadratureRule<Dim> fine_rule(const WeightConfig &cfg, int degree) {
    if constexpr (Dim == 1) {
        return bdm::gauss_jacobi_rule(cfg.alpha(0), cfg.alpha(1), degree / 2 + 2);
    } else {
        return bdm::simplex_rule_2d(cfg, degree + 2);
    }
}

template <int Dim> double max_gram_defect(const WeightConfig &cfg, int L) {
    const bdm::SpectralBasis<Dim> basis(cfg, L);
    const auto rule = fine_rule<Dim>(cfg, 2 * L);
    const int N = basis.size();
    std::vector<double> gram(static_cast<std::size_t>(N) * N, 0.0);
    std::vector<double> phi(static_cast<std::size_t>(N));
    for (std::size_t q = 0; q < rule.size(); ++q) {
        basis.eval_all(rule.nodes[q], phi);
        for (int i = 0; i < N; ++i) {
            for (int j = 0; j < N; ++j) {
                gram[i * N + j] += rule.weights[q] * phi[i] * phi[j];
            }
        }
    }
    double worst = 0.0;
    for (int i = 0; i < N; ++i) {
        for (int j = 0; j < N; ++j) {
            worst = std::max(worst, std::abs(gram[i * N + j] - (i == j ? 1.0 : 0.0)));
        }
    }
    return worst;
}

} // namespace

TEST(OrthoPoly, BlockLayout) {
    EXPECT_EQ(bdm::block_size<1>(7), 1);
    EXPECT_EQ(bdm::block_size<2>(7), 8);
    EXPECT_EQ(bdm::block_offset<2>(3), 6);
    EXPECT_EQ(bdm::coefficient_count<1>(5), 6);
    EXPECT_EQ(bdm::coefficient_count<2>(5), 21);
}

TEST(OrthoPoly, LegendreFirstDegrees) {
    const WeightConfig cfg({0.0, 0.0});
    for (double x : {0.0, 0.1, 0.5, 0.77, 1.0}) {
        EXPECT_NEAR(bdm::basis_eval<1>(cfg, 0, 0, {x}), 1.0, 1e-15);
        EXPECT_NEAR(bdm::basis_eval<1>(cfg, 1, 0, {x}), std::sqrt(3.0) * (2 * x - 1), 1e-14);
        EXPECT_NEAR(bdm::basis_eval<1>(cfg, 2, 0, {x}), std::sqrt(5.0) * (6 * x * x - 6 * x + 1), 1e-14);
    }
}

TEST(OrthoPoly, ChebyshevFirstKind) {
    // α = (−½, −½): φ_ℓ = √(2/π) T_ℓ(2x−1) for ℓ ≥ 1
    const WeightConfig cfg({-0.5, -0.5});
    for (double x : {0.05, 0.3, 0.9}) {
        const double t = 2 * x - 1;
        EXPECT_NEAR(bdm::basis_eval<1>(cfg, 0, 0, {x}), 1.0 / std::sqrt(std::numbers::pi), 1e-15);
        for (int ell = 1; ell <= 6; ++ell) {
            EXPECT_NEAR(bdm::basis_eval<1>(cfg, ell, 0, {x}),
                        std::sqrt(2.0 / std::numbers::pi) * std::cos(ell * std::acos(t)), 1e-13);
        }
    }
}

TEST(OrthoPoly, GramIdentity1d) {
    for (auto alphas : {std::vector{0.0, 0.0}, {0.5, 0.5}, {-0.5, -0.5}, {1.5, -0.7}}) {
        EXPECT_LE(max_gram_defect<1>(WeightConfig(alphas), 8), 1e-9);
        EXPECT_LE(max_gram_defect<1>(WeightConfig(alphas), 40), 1e-9);
    }
}

TEST(OrthoPoly, GramIdentity2d) {
    for (auto alphas : {std::vector{0.0, 0.0, 0.0}, {0.5, -0.5, 1.0}, {-0.5, -0.5, -0.5}}) {
        EXPECT_LE(max_gram_defect<2>(WeightConfig(alphas), 8), 1e-9);
        EXPECT_LE(max_gram_defect<2>(WeightConfig(alphas), 16), 1e-9);
    }
}

TEST(OrthoPoly, TriangleBasisLinearBlock) {
    // For Lebesgue measure on the triangle, V_1 is spanned by x1 − 1/3 and x2 − 1/3;
    // the basis must reproduce these and have the constant 1/√(1/2).
    const WeightConfig cfg({0.0, 0.0, 0.0});
    const bdm::SpectralBasis<2> basis(cfg, 1);
    const auto rule = bdm::simplex_rule_2d(cfg, 6);
    for (auto f : {+[](const Point<2> &x) { return x[0] - 1.0 / 3.0; },
                   +[](const Point<2> &x) { return x[1] - 1.0 / 3.0; }}) {
        const auto c = bdm::project(f, basis, rule);
        EXPECT_NEAR(c.block(0)[0], 0.0, 1e-14);
        for (const Point<2> x : {Point<2>{0.2, 0.3}, Point<2>{0.0, 1.0}, Point<2>{1.0, 0.0}}) {
            EXPECT_NEAR(bdm::evaluate(c, basis, x), f(x), 1e-13);
        }
    }
    EXPECT_NEAR(basis.value(0, 0, {0.4, 0.4}), std::sqrt(2.0), 1e-14);
}

TEST(OrthoPoly, ProjectionReproducesPolynomials) {
    const WeightConfig cfg({0.5, -0.5});
    const bdm::SpectralBasis<1> basis(cfg, 9);
    const auto rule = bdm::gauss_jacobi_rule(0.5, -0.5, 12);
    const auto f = [](const Point<1> &x) { return 1.0 - 3.0 * x[0] + std::pow(x[0], 6) - 0.25 * std::pow(x[0], 9); };
    const auto c = bdm::project(f, basis, rule);
    EXPECT_EQ(c.degree(), 9);
    for (double x = 0.0; x <= 1.0; x += 0.0625) {
        EXPECT_NEAR(bdm::evaluate(c, basis, {x}), f({x}), 1e-13);
    }

    const WeightConfig cfg2({0.0, 1.0, -0.5});
    const bdm::SpectralBasis<2> basis2(cfg2, 5);
    const auto rule2 = bdm::simplex_rule_2d(cfg2, 12);
    const auto g = [](const Point<2> &x) { return x[0] * x[0] * x[1] - 2.0 * std::pow(x[1], 5) + 0.5; };
    const auto c2 = bdm::project(g, basis2, rule2);
    EXPECT_EQ(c2.degree(), 5);
    for (const Point<2> x : {Point<2>{0.1, 0.1}, Point<2>{0.6, 0.3}, Point<2>{0.0, 1.0}, Point<2>{1.0, 0.0}}) {
        EXPECT_NEAR(bdm::evaluate(c2, basis2, x), g(x), 1e-12);
    }
}

TEST(OrthoPoly, ParsevalAgainstQuadrature) {
    const WeightConfig cfg({-0.5, 0.5, 0.0});
    const bdm::SpectralBasis<2> basis(cfg, 7);
    const auto rule = bdm::simplex_rule_2d(cfg, 16);
    const auto f = [](const Point<2> &x) { return std::pow(x[0] - x[1], 3) + 4.0 * x[0] * std::pow(x[1], 6); };
    const auto c = bdm::project(f, basis, rule);
    EXPECT_NEAR(c.l2_norm(), bdm::lp_norm(f, rule, 2.0), 1e-13);
}

TEST(OrthoPoly, TailNormOfKink) {
    const WeightConfig cfg({0.0, 0.0});
    const std::vector<double> cuts{1.0 / 3.0};
    const auto rule = bdm::weighted_rule_1d(cfg, 120, cuts);
    const auto f = [](const Point<1> &x) { return std::abs(x[0] - 1.0 / 3.0); };
    const bdm::SpectralBasis<1> basis(cfg, 20);
    const auto c = bdm::project_with_tail(f, basis, rule);
    EXPECT_GT(c.tail_norm(), 0.0);
    EXPECT_FALSE(c.band_limited());
    // ‖f‖² = ∫|x − 1/3|² = ((1/3)³ + (2/3)³)/3 = 1/9
    EXPECT_NEAR(c.l2_norm(), 1.0 / 3.0, 1e-13);
    const auto c2 = bdm::project_with_tail(f, bdm::SpectralBasis<1>(cfg, 40), rule);
    EXPECT_LT(c2.tail_norm(), c.tail_norm());
    EXPECT_THROW((void)(c - c), std::invalid_argument);
}

TEST(OrthoPoly, PartialSumsAndCesaro) {
    const WeightConfig cfg({0.0, 0.0});
    bdm::SpectralCoefficients<1> c(cfg, 6);
    for (int ell = 0; ell <= 6; ++ell) {
        c.block(ell)[0] = 1.0 + ell;
    }
    const auto s3 = bdm::partial_sum(c, 3);
    EXPECT_EQ(s3.degree(), 3);
    EXPECT_EQ(s3.block(2)[0], 3.0);
    EXPECT_EQ(s3.block(4)[0], 0.0);

    // S̃_3 = (S_0 + S_1 + S_2 + S_3)/4
    auto avg = bdm::partial_sum(c, 0);
    for (int k = 1; k <= 3; ++k) {
        avg += bdm::partial_sum(c, k);
    }
    avg *= 0.25;
    const auto ces = bdm::cesaro_mean(c, 3);
    for (int ell = 0; ell <= 6; ++ell) {
        EXPECT_NEAR(ces.block(ell)[0], avg.block(ell)[0], 1e-15);
    }
    EXPECT_THROW((void)bdm::cesaro_mean(c, -1), std::out_of_range);
    // above the band a polynomial is its own partial sum
    EXPECT_EQ(bdm::partial_sum(c, 50).block(6)[0], 7.0);
    EXPECT_NEAR(bdm::cesaro_mean(c, 13).block(6)[0], 7.0 * 8.0 / 14.0, 1e-15);
    c.set_tail_norm(1e-3);
    EXPECT_THROW((void)bdm::partial_sum(c, 7), std::out_of_range);
}

TEST(OrthoPoly, Rebanding) {
    bdm::SpectralCoefficients<2> c(WeightConfig({0.0, 0.0, 0.0}), 4);
    c.block(2)[1] = 2.0;
    const auto wide = c.with_max_degree(9);
    EXPECT_EQ(wide.block(2)[1], 2.0);
    EXPECT_EQ(wide.degree(), 2);
    EXPECT_EQ(wide.with_max_degree(2).block(2)[1], 2.0);
    EXPECT_THROW((void)wide.with_max_degree(1), std::out_of_range);
}

TEST(OrthoPoly, DimensionMismatch) {
    EXPECT_THROW((bdm::SpectralBasis<2>(WeightConfig({0.0, 0.0}), 3)), std::invalid_argument);
    const WeightConfig cfg({0.0, 0.0});
    const bdm::SpectralBasis<1> basis(cfg, 3);
    const auto wrong = bdm::gauss_jacobi_rule(0.5, 0.5, 4);
    EXPECT_THROW((void)bdm::project([](const Point<1> &) { return 1.0; }, basis, wrong), std::invalid_argument);
}
