#pragma once
/**
 * @file spectrum.hpp
 * @brief Eigenvalues μ_{n,ℓ} of the Jacobi-weighted Bernstein–Durrmeyer
 * operator, the multipliers ν_{n,ℓ}, and their continuous extensions in τ.
 *
 * Every gamma ratio is evaluated in the log domain. 1 − μ is always formed as
 * −expm1(log μ).
 */

#include "bdm/special_fn.hpp"

#include <cmath>
#include <numeric>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace bdm {

/// Raised when 1 − μ_n(τ) is too small to divide by.
class NumericalDegeneracy : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/**
 * Dimension d and Jacobi exponents α_1..α_{d+1} of the weight
 * w_α(x) = x_1^{α_1} ... x_d^{α_d} (1 − |x|)^{α_{d+1}} on the standard simplex.
 */
class WeightConfig {
  public:
    explicit WeightConfig(std::vector<double> alphas) : alphas_(std::move(alphas)) {
        if (alphas_.size() < 2) {
            throw std::invalid_argument("WeightConfig: need d+1 >= 2 exponents");
        }
        for (std::size_t i = 0; i < alphas_.size(); ++i) {
            if (!(alphas_[i] > -1.0) || !std::isfinite(alphas_[i])) {
                std::ostringstream os;
                os << "WeightConfig: exponent alpha_" << i + 1 << " = " << alphas_[i]
                   << " violates alpha_i > -1";
                throw std::invalid_argument(os.str());
            }
        }
        rho_ = static_cast<double>(dim()) + std::accumulate(alphas_.begin(), alphas_.end(), 0.0);
    }

    /// Unweighted configuration (all α_i = 0) in dimension d.
    static WeightConfig unweighted(int d) { return WeightConfig(std::vector<double>(d + 1, 0.0)); }

    [[nodiscard]] int dim() const { return static_cast<int>(alphas_.size()) - 1; }
    [[nodiscard]] double rho() const { return rho_; }
    [[nodiscard]] const std::vector<double> &alphas() const { return alphas_; }
    [[nodiscard]] double alpha(int i) const { return alphas_.at(static_cast<std::size_t>(i)); }

    bool operator==(const WeightConfig &other) const { return alphas_ == other.alphas_; }

  private:
    std::vector<double> alphas_;
    double rho_ = 0.0;
};

namespace detail {

inline void require_degree(int n, int ell, int lo, const char *fn) {
    if (n < 0 || ell < lo || ell > n) {
        std::ostringstream os;
        os << fn << ": index ell = " << ell << " outside [" << lo << ", " << n << "]";
        throw std::out_of_range(os.str());
    }
}

inline void require_tau(int n, double tau, const char *fn) {
    if (!(tau > 0.0) || tau > static_cast<double>(n)) {
        std::ostringstream os;
        os << fn << ": tau = " << tau << " outside (0, " << n << "]";
        throw std::out_of_range(os.str());
    }
}

inline double one_minus_from_log(double log_mu, const char *fn, int n, double tau) {
    const double value = -std::expm1(log_mu);
    if (value < 1e-14) {
        std::ostringstream os;
        os << fn << ": 1 - mu_n(tau) = " << value << " is degenerate at n = " << n
           << ", tau = " << tau;
        throw NumericalDegeneracy(os.str());
    }
    return value;
}

} // namespace detail

/// log μ_{n,ℓ} = log[n!/(n−ℓ)!] + log[Γ(n+ρ+1)/Γ(n+ℓ+ρ+1)].
inline double log_eigenvalue_mu(const WeightConfig &cfg, int n, int ell) {
    detail::require_degree(n, ell, 0, "eigenvalue_mu");
    const double rho = cfg.rho();
    if (ell <= 64) {
        // short products keep log μ accurate when it is close to 0, which 1 − μ needs
        double s = 0.0;
        for (int i = 0; i < ell; ++i) {
            s += std::log1p(-(2.0 * i + rho + 1.0) / (n + i + rho + 1.0));
        }
        return s;
    }
    return gamma_ratio_log(n + 1.0, n - ell + 1.0) + gamma_ratio_log(n + rho + 1.0, n + ell + rho + 1.0);
}

inline double eigenvalue_mu(const WeightConfig &cfg, int n, int ell) {
    return std::exp(log_eigenvalue_mu(cfg, n, ell));
}

/// log ν_{n,ℓ}, finite even where ν itself underflows.
inline double log_multiplier_nu(const WeightConfig &cfg, int n, int ell) {
    detail::require_degree(n, ell, 1, "multiplier_nu");
    const double rho = cfg.rho();
    const double log_mu = log_eigenvalue_mu(cfg, n, ell);
    return std::log(ell * (ell + rho)) + log_mu - std::log(static_cast<double>(n)) -
           std::log(-std::expm1(log_mu));
}

/// ν_{n,ℓ} = ℓ(ℓ+ρ) μ_{n,ℓ} / (n (1 − μ_{n,ℓ})), 1 ≤ ℓ ≤ n.
inline double multiplier_nu(const WeightConfig &cfg, int n, int ell) {
    return std::exp(log_multiplier_nu(cfg, n, ell));
}

/**
 * log μ_{n,ℓ} for ℓ = 0..n via the ratio μ_{n,ℓ+1}/μ_{n,ℓ} = (n−ℓ)/(n+ℓ+ρ+1).
 * Used by sweeps that need a whole row.
 */
inline std::vector<double> log_eigenvalue_row(const WeightConfig &cfg, int n) {
    if (n < 0) {
        throw std::out_of_range("log_eigenvalue_row: n must be >= 0");
    }
    const double rho = cfg.rho();
    std::vector<double> row(static_cast<std::size_t>(n) + 1);
    row[0] = 0.0;
    for (int ell = 0; ell < n; ++ell) {
        row[ell + 1] = row[ell] + std::log1p(-(2.0 * ell + rho + 1.0) / (n + ell + rho + 1.0));
    }
    return row;
}

/// log ν_{n,ℓ} for ℓ = 1..n; entry 0 is −∞ (ν_{n,0} := 0).
inline std::vector<double> log_multiplier_row(const WeightConfig &cfg, int n) {
    const auto log_mu = log_eigenvalue_row(cfg, n);
    const double rho = cfg.rho();
    std::vector<double> row(log_mu.size(), -INFINITY);
    for (int ell = 1; ell <= n; ++ell) {
        row[ell] = std::log(ell * (ell + rho)) + log_mu[ell] - std::log(static_cast<double>(n)) -
                   std::log(-std::expm1(log_mu[ell]));
    }
    return row;
}

/// ν_{n,ℓ} for ℓ = 0..n with ν_{n,0} = 0.
inline std::vector<double> multiplier_row(const WeightConfig &cfg, int n) {
    auto row = log_multiplier_row(cfg, n);
    for (double &v : row) {
        v = std::exp(v);
    }
    return row;
}

/// log μ_n(τ) = log[Γ(n+1)Γ(n+ρ+1) / (Γ(n−τ+1)Γ(n+τ+ρ+1))].
inline double log_mu_continuous(const WeightConfig &cfg, int n, double tau) {
    detail::require_tau(n, tau, "mu_continuous");
    const double rho = cfg.rho();
    return gamma_ratio_log(n + 1.0, n - tau + 1.0) + gamma_ratio_log(n + rho + 1.0, n + tau + rho + 1.0);
}

inline double mu_continuous(const WeightConfig &cfg, int n, double tau) {
    return std::exp(log_mu_continuous(cfg, n, tau));
}

/// C_n(τ) = ψ(n+τ+ρ+1) − ψ(n−τ+1); μ_n′(τ) = −μ_n(τ) C_n(τ).
inline double c_n(const WeightConfig &cfg, int n, double tau) {
    detail::require_tau(n, tau, "c_n");
    const double rho = cfg.rho();
    return digamma_difference(n + tau + rho + 1.0, n - tau + 1.0);
}

/// C_n′(τ) = ψ′(n+τ+ρ+1) + ψ′(n−τ+1).
inline double c_n_prime(const WeightConfig &cfg, int n, double tau) {
    detail::require_tau(n, tau, "c_n_prime");
    const double rho = cfg.rho();
    return polygamma(1, n + tau + rho + 1.0) + polygamma(1, n - tau + 1.0);
}

/// C_n″(τ) = ψ″(n+τ+ρ+1) − ψ″(n−τ+1).
inline double c_n_second(const WeightConfig &cfg, int n, double tau) {
    detail::require_tau(n, tau, "c_n_second");
    const double rho = cfg.rho();
    return polygamma(2, n + tau + rho + 1.0) - polygamma(2, n - tau + 1.0);
}

/// ν_n(τ) = τ(τ+ρ) μ_n(τ) / (n (1 − μ_n(τ))).
inline double nu_continuous(const WeightConfig &cfg, int n, double tau) {
    const double log_mu = log_mu_continuous(cfg, n, tau);
    const double one_minus = detail::one_minus_from_log(log_mu, "nu_continuous", n, tau);
    const double rho = cfg.rho();
    return tau * (tau + rho) * std::exp(log_mu) / (n * one_minus);
}

/**
 * ν_n′(τ) = (2τ+ρ)μ / (n(1−μ)) − τ(τ+ρ) μ C_n / (n(1−μ)²).
 */
inline double nu_prime(const WeightConfig &cfg, int n, double tau) {
    const double log_mu = log_mu_continuous(cfg, n, tau);
    const double q = detail::one_minus_from_log(log_mu, "nu_prime", n, tau);
    const double mu = std::exp(log_mu);
    const double rho = cfg.rho();
    const double c = c_n(cfg, n, tau);
    return (2.0 * tau + rho) * mu / (n * q) - tau * (tau + rho) * mu * c / (n * q * q);
}

/**
 * ν_n″(τ) assembled from four terms:
 *   2μ/(n(1−μ)) − 2(2τ+ρ)μC/(n(1−μ)²) − τ(τ+ρ)μC′/(n(1−μ)²)
 *   + τ(τ+ρ)(1+μ)μC²/(n(1−μ)³).
 */
inline double nu_second(const WeightConfig &cfg, int n, double tau) {
    const double log_mu = log_mu_continuous(cfg, n, tau);
    const double q = detail::one_minus_from_log(log_mu, "nu_second", n, tau);
    const double mu = std::exp(log_mu);
    const double rho = cfg.rho();
    const double c = c_n(cfg, n, tau);
    const double cp = c_n_prime(cfg, n, tau);
    const double tt = tau * (tau + rho);
    return 2.0 * mu / (n * q) - 2.0 * (2.0 * tau + rho) * mu * c / (n * q * q) -
           tt * mu * cp / (n * q * q) + tt * (1.0 + mu) * mu * c * c / (n * q * q * q);
}

} // namespace bdm
