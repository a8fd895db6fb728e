#pragma once
/**
 * @file durrmeyer.hpp
 * @brief The Jacobi-weighted Bernstein–Durrmeyer operator M_{n,α} in basis and
 * spectral form, the differential operator P_α(D), the multiplier operator Q_n
 * and the averaged function g_n used in the converse estimate.
 */

#include "bdm/orthopoly.hpp"
#include "bdm/quadrature.hpp"
#include "bdm/spectrum.hpp"

#include <cmath>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bdm {

/// Multi-index k = (k_1..k_d) with |k| ≤ n.
struct BernsteinIndex {
    int n = 0;
    std::vector<int> k;

    [[nodiscard]] int total() const { return std::accumulate(k.begin(), k.end(), 0); }
};

namespace detail {

inline void validate(const BernsteinIndex &idx) {
    if (idx.n < 0 || idx.total() > idx.n) {
        throw std::out_of_range("BernsteinIndex: |k| must not exceed n");
    }
    for (int ki : idx.k) {
        if (ki < 0) {
            throw std::out_of_range("BernsteinIndex: negative component");
        }
    }
}

inline double log_multinomial(const BernsteinIndex &idx) {
    double v = log_gamma(idx.n + 1.0) - log_gamma(idx.n - idx.total() + 1.0);
    for (int ki : idx.k) {
        v -= log_gamma(ki + 1.0);
    }
    return v;
}

} // namespace detail

/// p_{n,k}(x) = n!/(k_1!..k_d!(n−|k|)!) Π x_i^{k_i} (1−|x|)^{n−|k|}.
inline double bernstein_basis(const BernsteinIndex &idx, std::span<const double> x) {
    detail::validate(idx);
    if (x.size() != idx.k.size()) {
        throw std::invalid_argument("bernstein_basis: point and index dimensions differ");
    }
    double log_value = detail::log_multinomial(idx);
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sum += x[i];
        if (idx.k[i] > 0) {
            if (x[i] <= 0.0) {
                return 0.0;
            }
            log_value += idx.k[i] * std::log(x[i]);
        }
    }
    const int rest = idx.n - idx.total();
    if (rest > 0) {
        const double s = 1.0 - sum;
        if (s <= 0.0) {
            return 0.0;
        }
        log_value += rest * std::log(s);
    }
    return std::exp(log_value);
}

/// ∫_S p_{n,k} w_α = multinomial · Π Γ(k_i+α_i+1) · Γ(n−|k|+α_{d+1}+1) / Γ(n+ρ+1).
inline double basis_moment(const WeightConfig &cfg, int n, std::span<const int> k) {
    BernsteinIndex idx{n, std::vector<int>(k.begin(), k.end())};
    detail::validate(idx);
    if (static_cast<int>(k.size()) != cfg.dim()) {
        throw std::invalid_argument("basis_moment: index dimension does not match weight");
    }
    double v = detail::log_multinomial(idx);
    for (std::size_t i = 0; i < k.size(); ++i) {
        v += log_gamma(k[i] + cfg.alpha(static_cast<int>(i)) + 1.0);
    }
    v += log_gamma(n - idx.total() + cfg.alpha(cfg.dim()) + 1.0);
    v -= log_gamma(n + cfg.rho() + 1.0);
    return std::exp(v);
}

/// All multi-indices |k| ≤ n for dimension Dim, in lexicographic order.
template <int Dim> std::vector<std::array<int, Dim>> bernstein_indices(int n) {
    std::vector<std::array<int, Dim>> out;
    if constexpr (Dim == 1) {
        for (int k = 0; k <= n; ++k) {
            out.push_back({k});
        }
    } else {
        static_assert(Dim == 2, "only d = 1 and d = 2 are supported");
        for (int k1 = 0; k1 <= n; ++k1) {
            for (int k2 = 0; k1 + k2 <= n; ++k2) {
                out.push_back({k1, k2});
            }
        }
    }
    return out;
}

/**
 * Precomputed data for the basis form of M_{n,α}: the normalising moments and
 * one shared inner quadrature rule.
 */
template <int Dim> class DurrmeyerPlan {
  public:
    /// The inner rule is exact for integrands f·p_{n,k} with deg f ≤ integrand_degree.
    DurrmeyerPlan(WeightConfig cfg, int n, int integrand_degree, std::span<const double> breakpoints = {})
        : cfg_(std::move(cfg)), n_(n), integrand_degree_(integrand_degree),
          indices_(bernstein_indices<Dim>(n)), rule_(make_rule(cfg_, n + integrand_degree + 8, breakpoints)) {
        detail::require_dim<Dim>(cfg_, "DurrmeyerPlan");
        if (n < 1) {
            throw std::out_of_range("DurrmeyerPlan: n must be >= 1");
        }
        moments_.reserve(indices_.size());
        for (const auto &k : indices_) {
            moments_.push_back(basis_moment(cfg_, n_, k));
        }
        // p_{n,k} at every inner node
        node_basis_.resize(rule_.size() * indices_.size());
        for (std::size_t q = 0; q < rule_.size(); ++q) {
            basis_at(rule_.nodes[q], std::span<double>(node_basis_).subspan(q * indices_.size(), indices_.size()));
        }
    }

    [[nodiscard]] const WeightConfig &config() const { return cfg_; }
    [[nodiscard]] int n() const { return n_; }
    [[nodiscard]] int integrand_degree() const { return integrand_degree_; }
    [[nodiscard]] const std::vector<std::array<int, Dim>> &indices() const { return indices_; }
    [[nodiscard]] const std::vector<double> &moments() const { return moments_; }
    [[nodiscard]] const QuadratureRule<Dim> &rule() const { return rule_; }

    /// Normalised averages ∫ f p_{n,k} w_α / ∫ p_{n,k} w_α.
    template <class F> [[nodiscard]] std::vector<double> averages(F &&f) const {
        const std::size_t m = indices_.size();
        std::vector<double> avg(m, 0.0);
        for (std::size_t q = 0; q < rule_.size(); ++q) {
            const double wf = rule_.weights[q] * f(rule_.nodes[q]);
            const double *row = node_basis_.data() + q * m;
            for (std::size_t i = 0; i < m; ++i) {
                avg[i] += wf * row[i];
            }
        }
        for (std::size_t i = 0; i < m; ++i) {
            avg[i] /= moments_[i];
        }
        return avg;
    }

    /// Σ_k p_{n,k}(x) · averages[k].
    [[nodiscard]] double evaluate(std::span<const double> averages, const Point<Dim> &x) const {
        std::vector<double> p(indices_.size());
        basis_at(x, p);
        double s = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i) {
            s += p[i] * averages[i];
        }
        return s;
    }

  private:
    static QuadratureRule<Dim> make_rule(const WeightConfig &cfg, int degree, std::span<const double> breakpoints) {
        if constexpr (Dim == 1) {
            return weighted_rule_1d(cfg, degree / 2 + 1, breakpoints);
        } else {
            return simplex_rule_2d(cfg, degree);
        }
    }

    void basis_at(const Point<Dim> &x, std::span<double> out) const {
        BernsteinIndex idx{n_, std::vector<int>(Dim)};
        for (std::size_t i = 0; i < indices_.size(); ++i) {
            std::copy(indices_[i].begin(), indices_[i].end(), idx.k.begin());
            out[i] = bernstein_basis(idx, x);
        }
    }

    WeightConfig cfg_;
    int n_;
    int integrand_degree_;
    std::vector<std::array<int, Dim>> indices_;
    QuadratureRule<Dim> rule_;
    std::vector<double> moments_;
    std::vector<double> node_basis_;
};

/// M_{n,α} f (x) in basis form. f_degree is the polynomial degree of f (or the
/// degree its smooth pieces are resolved to).
template <int Dim, class F>
double apply_durrmeyer(const DurrmeyerPlan<Dim> &plan, F &&f, const std::type_identity_t<Point<Dim>> &x, int f_degree) {
    if (f_degree > plan.integrand_degree()) {
        throw std::invalid_argument("apply_durrmeyer: inner quadrature too coarse for degree " +
                                    std::to_string(f_degree));
    }
    const auto avg = plan.averages(f);
    return plan.evaluate(avg, x);
}

namespace detail {
template <int Dim> void require_resolved(const SpectralCoefficients<Dim> &c, int needed, const char *fn) {
    if (!c.band_limited() && needed > c.max_degree()) {
        throw std::out_of_range(std::string(fn) + ": needs degrees up to " + std::to_string(needed) +
                                " but the function has unresolved content above " +
                                std::to_string(c.max_degree()));
    }
}
} // namespace detail

/// M_{n,α} f = Σ_{ℓ≤n} μ_{n,ℓ} 𝒫_ℓ f.
template <int Dim>
SpectralCoefficients<Dim> apply_durrmeyer_spectral(const WeightConfig &cfg, int n, const SpectralCoefficients<Dim> &c) {
    detail::require_resolved(c, n, "apply_durrmeyer_spectral");
    const int top = std::min(n, c.max_degree());
    const auto log_mu = log_eigenvalue_row(cfg, n);
    return c.scaled([&](int ell) { return ell <= top ? std::exp(log_mu[ell]) : 0.0; });
}

/// P_α(D) acting spectrally: block ℓ times −ℓ(ℓ+ρ).
template <int Dim> SpectralCoefficients<Dim> apply_P_spectral(const WeightConfig &cfg, const SpectralCoefficients<Dim> &c) {
    if (!c.band_limited()) {
        throw std::out_of_range("apply_P_spectral: function has unresolved content above the band");
    }
    const double rho = cfg.rho();
    return c.scaled([rho](int ell) { return -ell * (ell + rho); });
}

/// Q_n f = Σ_{1≤ℓ≤n} ν_{n,ℓ} 𝒫_ℓ f.
template <int Dim>
SpectralCoefficients<Dim> apply_Q(const WeightConfig &cfg, int n, const SpectralCoefficients<Dim> &c) {
    detail::require_resolved(c, n, "apply_Q");
    const auto nu = multiplier_row(cfg, n);
    return c.scaled([&](int ell) { return ell >= 1 && ell <= n ? nu[ell] : 0.0; });
}

template <int Dim> struct GnResult {
    SpectralCoefficients<Dim> g;
    double t_n;
};

/**
 * g_n = (1/t_n) Σ_{k=n+1}^{2n} M_{k,α} f / (k(k+ρ)),  t_n = Σ_{k=n+1}^{2n} 1/(k(k+ρ)).
 * Block ℓ of g_n is f̂_ℓ (1/t_n) Σ_{k ≥ max(n+1, ℓ)} μ_{k,ℓ}/(k(k+ρ)).
 */
template <int Dim> GnResult<Dim> build_g_n(const WeightConfig &cfg, int n, const SpectralCoefficients<Dim> &c) {
    if (n < 1) {
        throw std::out_of_range("build_g_n: n must be >= 1");
    }
    detail::require_resolved(c, 2 * n, "build_g_n");
    const double rho = cfg.rho();
    const int top = std::min(2 * n, c.max_degree());
    std::vector<double> factor(static_cast<std::size_t>(top) + 1, 0.0);
    double t_n = 0.0;
    for (int k = n + 1; k <= 2 * n; ++k) {
        const double wk = 1.0 / (k * (k + rho));
        t_n += wk;
        const auto log_mu = log_eigenvalue_row(cfg, k);
        for (int ell = 0; ell <= std::min(k, top); ++ell) {
            factor[ell] += wk * std::exp(log_mu[ell]);
        }
    }
    auto g = c.scaled([&](int ell) { return ell <= top ? factor[ell] / t_n : 0.0; });
    return {std::move(g), t_n};
}

/// Dense univariate polynomial in the power basis, ascending coefficients.
class Polynomial {
  public:
    Polynomial() = default;
    explicit Polynomial(std::vector<double> coeffs) : c_(std::move(coeffs)) {}

    [[nodiscard]] const std::vector<double> &coefficients() const { return c_; }
    [[nodiscard]] int degree() const {
        for (int i = static_cast<int>(c_.size()) - 1; i >= 0; --i) {
            if (c_[i] != 0.0) {
                return i;
            }
        }
        return -1;
    }

    [[nodiscard]] double operator()(double x) const {
        double s = 0.0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
            s = s * x + *it;
        }
        return s;
    }

    [[nodiscard]] Polynomial derivative() const {
        if (c_.size() <= 1) {
            return Polynomial({0.0});
        }
        std::vector<double> d(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) {
            d[i - 1] = static_cast<double>(i) * c_[i];
        }
        return Polynomial(std::move(d));
    }

    friend Polynomial operator*(const Polynomial &a, const Polynomial &b) {
        if (a.c_.empty() || b.c_.empty()) {
            return Polynomial({0.0});
        }
        std::vector<double> r(a.c_.size() + b.c_.size() - 1, 0.0);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            for (std::size_t j = 0; j < b.c_.size(); ++j) {
                r[i + j] += a.c_[i] * b.c_[j];
            }
        }
        return Polynomial(std::move(r));
    }
    friend Polynomial operator+(const Polynomial &a, const Polynomial &b) {
        std::vector<double> r(std::max(a.c_.size(), b.c_.size()), 0.0);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            r[i] += a.c_[i];
        }
        for (std::size_t i = 0; i < b.c_.size(); ++i) {
            r[i] += b.c_[i];
        }
        return Polynomial(std::move(r));
    }
    friend Polynomial operator*(double s, Polynomial a) {
        for (double &v : a.c_) {
            v *= s;
        }
        return a;
    }
    friend Polynomial operator-(const Polynomial &a, const Polynomial &b) { return a + (-1.0) * b; }

  private:
    std::vector<double> c_;
};

/// P_α(D) g = x(1−x) g″ + ((α_1+1) − (ρ+1) x) g′ for d = 1, which is w_α^{-1}(w_α x(1−x) g′)′.
inline Polynomial diff_operator_1d(const WeightConfig &cfg, const Polynomial &g) {
    detail::require_dim<1>(cfg, "diff_operator_1d");
    const Polynomial x_minus_x2({0.0, 1.0, -1.0});
    const Polynomial drift({cfg.alpha(0) + 1.0, -(cfg.rho() + 1.0)});
    const auto d1 = g.derivative();
    return x_minus_x2 * d1.derivative() + drift * d1;
}

/// Power-basis form of the degree-ℓ orthonormal polynomial for a d = 1 weight.
inline Polynomial orthonormal_polynomial_1d(const WeightConfig &cfg, int ell) {
    detail::require_dim<1>(cfg, "orthonormal_polynomial_1d");
    const auto rec = jacobi_recurrence(cfg.alpha(0), cfg.alpha(1), ell);
    Polynomial prev({0.0});
    Polynomial cur({1.0 / std::sqrt(rec.mass)});
    for (int k = 0; k < ell; ++k) {
        const Polynomial shifted({-rec.diag[k], 1.0});
        Polynomial next = shifted * cur;
        if (k > 0) {
            next = next - rec.offdiag[k - 1] * prev;
        }
        next = (1.0 / rec.offdiag[k]) * next;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

} // namespace bdm
