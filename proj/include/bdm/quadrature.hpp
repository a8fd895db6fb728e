#pragma once
/**
 * @file quadrature.hpp
 * @brief Gauss–Jacobi rules on [0,1], collapsed (Duffy) rules on the triangle,
 * sup-norm sampling grids and weighted L_p norms.
 */

#include "bdm/special_fn.hpp"
#include "bdm/spectrum.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bdm {

template <int Dim> using Point = std::array<double, Dim>;

inline constexpr double kPInfinity = std::numeric_limits<double>::infinity();

/**
 * Three-term recurrence of the orthonormal polynomials for x^a (1−x)^b on [0,1]:
 *   offdiag[k] p_{k+1}(x) = (x − diag[k]) p_k(x) − offdiag[k−1] p_{k−1}(x),
 *   p_0 = 1/sqrt(mass).
 */
struct JacobiRecurrence {
    double a = 0.0;
    double b = 0.0;
    double mass = 1.0;           ///< ∫_0^1 x^a (1−x)^b dx
    std::vector<double> diag;    ///< a_0 .. a_{N−1}
    std::vector<double> offdiag; ///< sqrt(b_1) .. sqrt(b_N)

    [[nodiscard]] int max_degree() const { return static_cast<int>(diag.size()); }

    /// Writes p_0(x) .. p_{out.size()−1}(x).
    void eval(double x, std::span<double> out) const {
        if (out.empty()) {
            return;
        }
        if (out.size() > diag.size() + 1) {
            throw std::out_of_range("JacobiRecurrence::eval: degree exceeds table");
        }
        out[0] = 1.0 / std::sqrt(mass);
        if (out.size() > 1) {
            out[1] = (x - diag[0]) * out[0] / offdiag[0];
        }
        for (std::size_t k = 1; k + 1 < out.size(); ++k) {
            out[k + 1] = ((x - diag[k]) * out[k] - offdiag[k - 1] * out[k - 1]) / offdiag[k];
        }
    }
};

/// Recurrence table able to evaluate degrees 0..max_degree.
inline JacobiRecurrence jacobi_recurrence(double a, double b, int max_degree) {
    if (!(a > -1.0) || !(b > -1.0)) {
        throw std::invalid_argument("jacobi_recurrence: exponents must be > -1");
    }
    JacobiRecurrence rec;
    rec.a = a;
    rec.b = b;
    rec.mass = std::beta(a + 1.0, b + 1.0);
    // Classical Jacobi on [−1,1] with weight (1−t)^al (1+t)^be, t = 2x − 1.
    const double al = b;
    const double be = a;
    const double s = al + be;
    rec.diag.resize(static_cast<std::size_t>(std::max(max_degree, 0)));
    rec.offdiag.resize(rec.diag.size());
    for (int k = 0; k < max_degree; ++k) {
        double alpha_k;
        if (k == 0) {
            alpha_k = (be - al) / (s + 2.0);
        } else {
            alpha_k = (be * be - al * al) / ((2.0 * k + s) * (2.0 * k + s + 2.0));
        }
        const int j = k + 1;
        double beta_j;
        if (j == 1) {
            beta_j = 4.0 * (1.0 + al) * (1.0 + be) / ((2.0 + s) * (2.0 + s) * (3.0 + s));
        } else {
            const double t = 2.0 * j + s;
            beta_j = 4.0 * j * (j + al) * (j + be) * (j + s) / (t * t * (t + 1.0) * (t - 1.0));
        }
        rec.diag[k] = 0.5 * (1.0 + alpha_k);
        rec.offdiag[k] = 0.5 * std::sqrt(beta_j);
    }
    return rec;
}

/// Nodes with positive weights integrating against a stated Jacobi weight.
template <int Dim> struct QuadratureRule {
    std::vector<Point<Dim>> nodes;
    std::vector<double> weights;
    int exact_degree = -1; ///< −1 when the rule is not exact for any positive degree
    WeightConfig weight;   ///< the weight the rule was built for

    explicit QuadratureRule(WeightConfig w) : weight(std::move(w)) {}

    [[nodiscard]] std::size_t size() const { return nodes.size(); }
    [[nodiscard]] double total_mass() const {
        double s = 0.0;
        for (double w : weights) {
            s += w;
        }
        return s;
    }
};

/// Gauss–Jacobi rule with m nodes for x^a (1−x)^b on [0,1] (Golub–Welsch nodes,
/// Christoffel-function weights). Exact for degree ≤ 2m − 1.
inline QuadratureRule<1> gauss_jacobi_rule(double a, double b, int m) {
    if (m < 1) {
        throw std::invalid_argument("gauss_jacobi_rule: need m >= 1");
    }
    const auto rec = jacobi_recurrence(a, b, m);
    Eigen::VectorXd diag(m);
    Eigen::VectorXd sub(std::max(m - 1, 0));
    for (int k = 0; k < m; ++k) {
        diag[k] = rec.diag[k];
        if (k + 1 < m) {
            sub[k] = rec.offdiag[k];
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("gauss_jacobi_rule: tridiagonal eigensolver did not converge");
    }
    QuadratureRule<1> rule(WeightConfig({a, b}));
    rule.exact_degree = 2 * m - 1;
    rule.nodes.resize(m);
    rule.weights.resize(m);
    std::vector<double> p(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        const double x = std::clamp(solver.eigenvalues()[i], 0.0, 1.0);
        rec.eval(x, p);
        double christoffel = 0.0;
        for (double v : p) {
            christoffel += v * v;
        }
        rule.nodes[i] = {x};
        rule.weights[i] = 1.0 / christoffel;
    }
    return rule;
}

/**
 * Rule for w_α on [0,1] split at interior breakpoints, m nodes per piece.
 *
 * The endpoint singular factors are absorbed into Gauss–Jacobi rules on the
 * outer pieces; the remaining factor of w_α (smooth on that piece) multiplies
 * the weights. Integrands with kinks at the breakpoints then converge at the
 * rate of their smooth pieces.
 */
inline QuadratureRule<1> weighted_rule_1d(const WeightConfig &cfg, int m,
                                          std::span<const double> breakpoints = {}) {
    if (cfg.dim() != 1) {
        throw std::invalid_argument("weighted_rule_1d: weight must be one-dimensional");
    }
    const double a = cfg.alpha(0);
    const double b = cfg.alpha(1);
    std::vector<double> cuts{0.0};
    for (double c : breakpoints) {
        if (c > 0.0 && c < 1.0) {
            cuts.push_back(c);
        }
    }
    cuts.push_back(1.0);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    if (cuts.size() == 2) {
        return gauss_jacobi_rule(a, b, m);
    }

    QuadratureRule<1> rule(cfg);
    const auto integer_degree = [](double e) {
        return (e >= 0.0 && e == std::floor(e)) ? static_cast<int>(e) : -1;
    };
    const int da = integer_degree(a);
    const int db = integer_degree(b);
    rule.exact_degree = (da >= 0 && db >= 0) ? 2 * m - 1 - std::max(da, db) : -1;

    const std::size_t pieces = cuts.size() - 1;
    for (std::size_t i = 0; i < pieces; ++i) {
        const double lo = cuts[i];
        const double hi = cuts[i + 1];
        const double h = hi - lo;
        const bool first = (i == 0);
        const bool last = (i + 1 == pieces);
        const auto local = gauss_jacobi_rule(first ? a : 0.0, last ? b : 0.0, m);
        for (std::size_t q = 0; q < local.size(); ++q) {
            const double u = local.nodes[q][0];
            const double x = lo + h * u;
            double w = local.weights[q] * h;
            w *= first ? std::pow(h, a) : std::pow(x, a);
            w *= last ? std::pow(h, b) : std::pow(1.0 - x, b);
            rule.nodes.push_back({x});
            rule.weights.push_back(w);
        }
    }
    return rule;
}

/// Collapsed-coordinate rule on the triangle for w_α, exact for total degree ≤ m.
inline QuadratureRule<2> simplex_rule_2d(const WeightConfig &cfg, int m) {
    if (cfg.dim() != 2) {
        throw std::invalid_argument("simplex_rule_2d: weight must be two-dimensional");
    }
    const int count = std::max(1, m / 2 + 1);
    const double a1 = cfg.alpha(0);
    const double a2 = cfg.alpha(1);
    const double a3 = cfg.alpha(2);
    // x1 = u, x2 = (1−u) v:  w_α dx = u^{a1}(1−u)^{a2+a3+1} v^{a2}(1−v)^{a3} du dv
    const auto ru = gauss_jacobi_rule(a1, a2 + a3 + 1.0, count);
    const auto rv = gauss_jacobi_rule(a2, a3, count);
    QuadratureRule<2> rule(cfg);
    rule.exact_degree = 2 * count - 1;
    rule.nodes.reserve(ru.size() * rv.size());
    rule.weights.reserve(ru.size() * rv.size());
    for (std::size_t i = 0; i < ru.size(); ++i) {
        const double u = ru.nodes[i][0];
        for (std::size_t j = 0; j < rv.size(); ++j) {
            const double v = rv.nodes[j][0];
            rule.nodes.push_back({u, (1.0 - u) * v});
            rule.weights.push_back(ru.weights[i] * rv.weights[j]);
        }
    }
    return rule;
}

/// Dense point set for sup-norms (the weight does not enter L_∞).
template <int Dim> struct SamplingGrid {
    std::vector<Point<Dim>> points;
};

namespace detail {

/// Chebyshev-spaced points on [0,1] with 4x density in the first and last sixteenth
/// of the index range.
inline std::vector<double> chebyshev_grid(int count) {
    std::vector<double> xs;
    xs.reserve(static_cast<std::size_t>(count) * 2);
    const int edge = std::max(1, (count - 1) / 16);
    for (int i = 0; i < count; ++i) {
        const double x = 0.5 * (1.0 - std::cos(std::numbers::pi * i / (count - 1)));
        xs.push_back(x);
        if ((i < edge || i >= count - 1 - edge) && i + 1 < count) {
            const double next = 0.5 * (1.0 - std::cos(std::numbers::pi * (i + 1) / (count - 1)));
            for (int r = 1; r < 4; ++r) {
                xs.push_back(x + (next - x) * r / 4.0);
            }
        }
    }
    std::sort(xs.begin(), xs.end());
    return xs;
}

} // namespace detail

/// 4097-point refined Chebyshev grid on [0,1].
inline SamplingGrid<1> sup_grid_1d(int count = 4097) {
    SamplingGrid<1> grid;
    for (double x : detail::chebyshev_grid(count)) {
        grid.points.push_back({x});
    }
    return grid;
}

/// Tensor Chebyshev grid clipped to the triangle x1 + x2 ≤ 1.
inline SamplingGrid<2> sup_grid_2d(int count = 257) {
    SamplingGrid<2> grid;
    const auto xs = detail::chebyshev_grid(count);
    for (double x1 : xs) {
        for (double x2 : xs) {
            if (x1 + x2 <= 1.0 + 1e-15) {
                grid.points.push_back({x1, std::min(x2, 1.0 - x1)});
            }
        }
    }
    return grid;
}

/// (Σ w_i |v_i|^p)^{1/p} for finite p, max |v_i| for p = ∞.
inline double lp_norm_values(std::span<const double> values, std::span<const double> weights,
                             double p) {
    if (!(p >= 1.0)) {
        throw std::invalid_argument("lp_norm: p must lie in [1, inf]");
    }
    if (std::isinf(p)) {
        double m = 0.0;
        for (double v : values) {
            m = std::max(m, std::abs(v));
        }
        return m;
    }
    if (values.size() != weights.size()) {
        throw std::invalid_argument("lp_norm: values and weights differ in length");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double a = std::abs(values[i]);
        sum += weights[i] * (p == 1.0 ? a : p == 2.0 ? a * a : std::pow(a, p));
    }
    return p == 1.0 ? sum : p == 2.0 ? std::sqrt(sum) : std::pow(sum, 1.0 / p);
}

/// ‖f‖_{p,w_α} by quadrature, p < ∞.
template <int Dim, class F> double lp_norm(F &&f, const QuadratureRule<Dim> &rule, double p) {
    if (std::isinf(p)) {
        throw std::invalid_argument("lp_norm: p = inf needs a SamplingGrid, not a quadrature rule");
    }
    std::vector<double> values(rule.size());
    for (std::size_t i = 0; i < rule.size(); ++i) {
        values[i] = f(rule.nodes[i]);
    }
    return lp_norm_values(values, rule.weights, p);
}

/// As above, but refuses a rule built for a different weight.
template <int Dim, class F>
double lp_norm(F &&f, const QuadratureRule<Dim> &rule, double p, const WeightConfig &expected) {
    if (!(rule.weight == expected)) {
        throw std::invalid_argument("lp_norm: quadrature rule was built for a different weight");
    }
    return lp_norm(std::forward<F>(f), rule, p);
}

/// max |f| over the grid.
template <int Dim, class F> double sup_norm(F &&f, const SamplingGrid<Dim> &grid) {
    double m = 0.0;
    for (const auto &x : grid.points) {
        m = std::max(m, std::abs(f(x)));
    }
    return m;
}

/**
 * Quadrature rule plus sup grid for one weight, so that callers can evaluate a
 * function once on the relevant point set and reduce for any p.
 */
template <int Dim> class NormContext {
  public:
    NormContext(QuadratureRule<Dim> rule, SamplingGrid<Dim> grid)
        : rule_(std::move(rule)), grid_(std::move(grid)) {}

    [[nodiscard]] const QuadratureRule<Dim> &rule() const { return rule_; }
    [[nodiscard]] const SamplingGrid<Dim> &grid() const { return grid_; }

    [[nodiscard]] const std::vector<Point<Dim>> &points(double p) const {
        return std::isinf(p) ? grid_.points : rule_.nodes;
    }

    /// Reduce values sampled on points(p).
    [[nodiscard]] double reduce(std::span<const double> values, double p) const {
        return lp_norm_values(values, rule_.weights, p);
    }

    template <class F> [[nodiscard]] double norm(F &&f, double p) const {
        const auto &pts = points(p);
        std::vector<double> values(pts.size());
        for (std::size_t i = 0; i < pts.size(); ++i) {
            values[i] = f(pts[i]);
        }
        return reduce(values, p);
    }

  private:
    QuadratureRule<Dim> rule_;
    SamplingGrid<Dim> grid_;
};

} // namespace bdm
