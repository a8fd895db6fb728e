#include "bdm/quadrature.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using bdm::Point;
using bdm::WeightConfig;

namespace {

// ∫_0^1 x^{a+k}(1−x)^b dx
double beta_moment(double a, double b, int k) { return std::beta(a + k + 1.0, b + 1.0); }

// Dirichlet integral ∫_T x1^{e1} x2^{e2} (1−x1−x2)^{e3}
double dirichlet(double e1, double e2, double e3) {
    return std::exp(std::lgamma(e1 + 1) + std::lgamma(e2 + 1) + std::lgamma(e3 + 1) -
                    std::lgamma(e1 + e2 + e3 + 3));
}

} // namespace

TEST(Quadrature, GaussJacobiExactness) {
    for (auto [a, b] : {std::pair{0.0, 0.0}, {0.5, 0.5}, {-0.5, -0.5}, {2.0, -0.3}, {-0.9, 3.5}}) {
        for (int m : {1, 3, 8, 20}) {
            const auto rule = bdm::gauss_jacobi_rule(a, b, m);
            ASSERT_EQ(rule.size(), static_cast<std::size_t>(m));
            EXPECT_EQ(rule.exact_degree, 2 * m - 1);
            for (int k = 0; k <= 2 * m - 1; ++k) {
                double s = 0.0;
                for (std::size_t i = 0; i < rule.size(); ++i) {
                    EXPECT_GT(rule.weights[i], 0.0);
                    EXPECT_GE(rule.nodes[i][0], 0.0);
                    EXPECT_LE(rule.nodes[i][0], 1.0);
                    s += rule.weights[i] * std::pow(rule.nodes[i][0], k);
                }
                const double ref = beta_moment(a, b, k);
                EXPECT_NEAR(s, ref, 1e-13 * std::max(1.0, ref)) << a << " " << b << " " << m << " " << k;
            }
        }
    }
}

TEST(Quadrature, ChebyshevMass) {
    const auto rule = bdm::gauss_jacobi_rule(0.5, 0.5, 5);
    EXPECT_NEAR(rule.total_mass(), std::numbers::pi / 8.0, 1e-14);
    const auto rule2 = bdm::gauss_jacobi_rule(-0.5, -0.5, 5);
    EXPECT_NEAR(rule2.total_mass(), std::numbers::pi, 4e-14);
}

TEST(Quadrature, SplitRuleMatchesMoments) {
    const std::vector<double> cuts{0.3, 0.55};
    for (auto [a, b] : {std::pair{0.0, 0.0}, {0.5, 0.5}, {-0.5, -0.5}}) {
        const WeightConfig cfg({a, b});
        const auto rule = bdm::weighted_rule_1d(cfg, 30, cuts);
        EXPECT_EQ(rule.size(), 90u);
        for (int k : {0, 1, 5, 17}) {
            double s = 0.0;
            for (std::size_t i = 0; i < rule.size(); ++i) {
                s += rule.weights[i] * std::pow(rule.nodes[i][0], k);
            }
            EXPECT_NEAR(s, beta_moment(a, b, k), 1e-12) << a << " " << k;
        }
    }
    const WeightConfig legendre({0.0, 0.0});
    EXPECT_EQ(bdm::weighted_rule_1d(legendre, 10, cuts).exact_degree, 19);
}

TEST(Quadrature, SplitRuleIntegratesKinkExactly) {
    // ∫_0^1 |x − 1/3| dx = (1/3)²/2 + (2/3)²/2 = 5/18
    const WeightConfig cfg({0.0, 0.0});
    const std::vector<double> cuts{1.0 / 3.0};
    const auto rule = bdm::weighted_rule_1d(cfg, 4, cuts);
    double s = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
        s += rule.weights[i] * std::abs(rule.nodes[i][0] - 1.0 / 3.0);
    }
    EXPECT_NEAR(s, 5.0 / 18.0, 1e-15);
}

TEST(Quadrature, SimplexRuleLebesgue) {
    const WeightConfig cfg({0.0, 0.0, 0.0});
    const auto rule = bdm::simplex_rule_2d(cfg, 6);
    const auto integrate = [&](auto f) {
        double s = 0.0;
        for (std::size_t i = 0; i < rule.size(); ++i) {
            s += rule.weights[i] * f(rule.nodes[i]);
        }
        return s;
    };
    EXPECT_NEAR(integrate([](const Point<2> &) { return 1.0; }), 0.5, 1e-14);
    EXPECT_NEAR(integrate([](const Point<2> &x) { return x[0]; }), 1.0 / 6.0, 1e-14);
    EXPECT_NEAR(integrate([](const Point<2> &x) { return x[0] * x[0]; }), 1.0 / 12.0, 1e-14);
    EXPECT_NEAR(integrate([](const Point<2> &x) { return x[0] * x[1]; }), 1.0 / 24.0, 1e-14);
    for (const auto &x : rule.nodes) {
        EXPECT_GE(x[0], 0.0);
        EXPECT_GE(x[1], 0.0);
        EXPECT_LE(x[0] + x[1], 1.0 + 1e-15);
    }
}

TEST(Quadrature, SimplexRuleJacobiWeight) {
    const double a1 = 0.5, a2 = -0.5, a3 = 1.5;
    const WeightConfig cfg({a1, a2, a3});
    const int m = 9;
    const auto rule = bdm::simplex_rule_2d(cfg, m);
    EXPECT_GE(rule.exact_degree, m);
    for (int i = 0; i <= m; ++i) {
        for (int j = 0; i + j <= m; ++j) {
            double s = 0.0;
            for (std::size_t q = 0; q < rule.size(); ++q) {
                s += rule.weights[q] * std::pow(rule.nodes[q][0], i) * std::pow(rule.nodes[q][1], j);
            }
            const double ref = dirichlet(a1 + i, a2 + j, a3);
            EXPECT_NEAR(s, ref, 1e-13) << i << " " << j;
        }
    }
}

TEST(Quadrature, NormsOfConstants) {
    const WeightConfig cfg({0.0, 0.0});
    const auto rule = bdm::gauss_jacobi_rule(0.0, 0.0, 10);
    const auto one = [](const Point<1> &) { return 1.0; };
    for (double p : {1.0, 1.5, 2.0, 7.0}) {
        EXPECT_NEAR(bdm::lp_norm(one, rule, p), 1.0, 1e-14);
    }
    // ‖x‖_2 = 1/√3
    EXPECT_NEAR(bdm::lp_norm([](const Point<1> &x) { return x[0]; }, rule, 2.0), 1.0 / std::sqrt(3.0), 1e-14);
    EXPECT_THROW((void)bdm::lp_norm(one, rule, bdm::kPInfinity), std::invalid_argument);
    EXPECT_THROW((void)bdm::lp_norm(one, rule, 0.5), std::invalid_argument);
    EXPECT_NO_THROW((void)bdm::lp_norm(one, rule, 2.0, cfg));
    EXPECT_THROW((void)bdm::lp_norm(one, rule, 2.0, WeightConfig({0.5, 0.5})), std::invalid_argument);
}

TEST(Quadrature, SupGrid) {
    const auto g = bdm::sup_grid_1d();
    EXPECT_GE(g.points.size(), 4097u);
    EXPECT_EQ(g.points.front()[0], 0.0);
    EXPECT_EQ(g.points.back()[0], 1.0);
    for (std::size_t i = 1; i < g.points.size(); ++i) {
        EXPECT_LT(g.points[i - 1][0], g.points[i][0]);
    }
    const auto f = [](const Point<1> &x) { return std::sin(7.0 * x[0]); };
    EXPECT_NEAR(bdm::sup_norm(f, g), 1.0, 1e-6);

    const auto g2 = bdm::sup_grid_2d(65);
    bool has_vertex = false;
    for (const auto &x : g2.points) {
        EXPECT_LE(x[0] + x[1], 1.0 + 1e-15);
        has_vertex = has_vertex || (x[0] == 1.0 && x[1] == 0.0);
    }
    EXPECT_TRUE(has_vertex);
}

TEST(Quadrature, HolderMonotonicityOnProbabilityWeight) {
    // w = 1 has unit mass, so p ↦ ‖f‖_p is nondecreasing
    const WeightConfig cfg({0.0, 0.0});
    const bdm::NormContext<1> ctx(bdm::gauss_jacobi_rule(0.0, 0.0, 40), bdm::sup_grid_1d());
    const auto f = [](const Point<1> &x) { return std::exp(x[0]) - 1.7 * x[0] * x[0]; };
    double prev = 0.0;
    for (double p : {1.0, 1.25, 2.0, 3.0, 6.0, 20.0, bdm::kPInfinity}) {
        const double v = ctx.norm(f, p);
        EXPECT_GE(v, prev - 1e-14) << p;
        prev = v;
    }
}

TEST(Quadrature, TriangleInequality) {
    const auto rule = bdm::gauss_jacobi_rule(-0.5, -0.5, 30);
    const auto f = [](const Point<1> &x) { return std::cos(5 * x[0]); };
    const auto g = [](const Point<1> &x) { return x[0] * x[0] - 0.3; };
    for (double p : {1.0, 1.5, 2.0, 4.0}) {
        const double lhs = bdm::lp_norm([&](const Point<1> &x) { return f(x) + g(x); }, rule, p);
        EXPECT_LE(lhs, bdm::lp_norm(f, rule, p) + bdm::lp_norm(g, rule, p) + 1e-14);
    }
}

TEST(Quadrature, ConvergenceOnSmoothIntegrand) {
    // ∫_0^1 e^x x^{-1/2}(1−x)^{-1/2} dx = π e^{1/2} I_0(1/2)
    const double ref = std::numbers::pi * std::exp(0.5) * std::cyl_bessel_i(0.0, 0.5);
    double err_prev = 1.0;
    for (int m : {2, 4, 8}) {
        const auto rule = bdm::gauss_jacobi_rule(-0.5, -0.5, m);
        double s = 0.0;
        for (std::size_t i = 0; i < rule.size(); ++i) {
            s += rule.weights[i] * std::exp(rule.nodes[i][0]);
        }
        const double err = std::abs(s - ref);
        EXPECT_LT(err, err_prev);
        err_prev = err;
    }
    EXPECT_LT(err_prev, 1e-12);
}

TEST(Quadrature, RecurrenceOrthonormality) {
    const auto rec = bdm::jacobi_recurrence(0.5, -0.5, 12);
    const auto rule = bdm::gauss_jacobi_rule(0.5, -0.5, 14);
    std::vector<double> p(13);
    std::vector<std::vector<double>> gram(13, std::vector<double>(13, 0.0));
    for (std::size_t q = 0; q < rule.size(); ++q) {
        rec.eval(rule.nodes[q][0], p);
        for (int i = 0; i < 13; ++i) {
            for (int j = 0; j < 13; ++j) {
                gram[i][j] += rule.weights[q] * p[i] * p[j];
            }
        }
    }
    for (int i = 0; i < 13; ++i) {
        for (int j = 0; j < 13; ++j) {
            EXPECT_NEAR(gram[i][j], i == j ? 1.0 : 0.0, 1e-12);
        }
    }
}

TEST(Quadrature, InvalidArguments) {
    EXPECT_THROW((void)bdm::gauss_jacobi_rule(0.0, 0.0, 0), std::invalid_argument);
    EXPECT_THROW((void)bdm::weighted_rule_1d(WeightConfig({0.0, 0.0, 0.0}), 4), std::invalid_argument);
    EXPECT_THROW((void)bdm::simplex_rule_2d(WeightConfig({0.0, 0.0}), 4), std::invalid_argument);
}
