#pragma once
/**
 * @file orthopoly.hpp
 * @brief Orthonormal eigenbasis of the Bernstein–Durrmeyer operator, spectral
 * coefficient blocks, partial sums and first-order Cesàro means.
 *
 * Degree-ℓ block layout: d = 1 has one coefficient per degree; d = 2 has ℓ+1
 * coefficients stored contiguously from offset ℓ(ℓ+1)/2.
 */

#include "bdm/quadrature.hpp"
#include "bdm/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace bdm {

template <int Dim> constexpr int block_size(int ell) {
    static_assert(Dim == 1 || Dim == 2, "only d = 1 and d = 2 are supported");
    return Dim == 1 ? 1 : ell + 1;
}

template <int Dim> constexpr int block_offset(int ell) {
    return Dim == 1 ? ell : ell * (ell + 1) / 2;
}

template <int Dim> constexpr int coefficient_count(int max_degree) {
    return block_offset<Dim>(max_degree + 1);
}

namespace detail {
template <int Dim> void require_dim(const WeightConfig &cfg, const char *what) {
    if (cfg.dim() != Dim) {
        throw std::invalid_argument(std::string(what) + ": weight dimension " +
                                    std::to_string(cfg.dim()) + " does not match " +
                                    std::to_string(Dim));
    }
}
} // namespace detail

template <int Dim> class SpectralBasis;

/// Orthonormal Jacobi polynomials for x^{α1}(1−x)^{α2} on [0,1].
template <> class SpectralBasis<1> {
  public:
    SpectralBasis(const WeightConfig &cfg, int max_degree)
        : cfg_((detail::require_dim<1>(cfg, "SpectralBasis"), cfg)), max_degree_(max_degree),
          rec_(jacobi_recurrence(cfg.alpha(0), cfg.alpha(1), max_degree)) {}

    [[nodiscard]] const WeightConfig &config() const { return cfg_; }
    [[nodiscard]] int max_degree() const { return max_degree_; }
    [[nodiscard]] int size() const { return max_degree_ + 1; }

    void eval_all(const Point<1> &x, std::span<double> out) const {
        rec_.eval(x[0], out.first(static_cast<std::size_t>(size())));
    }

    [[nodiscard]] double value(int ell, int j, const Point<1> &x) const {
        if (ell < 0 || ell > max_degree_ || j != 0) {
            throw std::out_of_range("SpectralBasis<1>::value: index out of range");
        }
        std::vector<double> tmp(static_cast<std::size_t>(ell) + 1);
        rec_.eval(x[0], tmp);
        return tmp.back();
    }

  private:
    WeightConfig cfg_;
    int max_degree_;
    JacobiRecurrence rec_;
};

/**
 * Orthonormal basis of V_ℓ on the triangle in collapsed coordinates
 * u = x1, v = x2/(1−x1):
 *   φ_{ℓ,j} = q^{(j)}_{ℓ−j}(u) (1−u)^j r_j(v),
 * with r_j orthonormal for v^{α2}(1−v)^{α3} and q^{(j)} orthonormal for
 * u^{α1}(1−u)^{α2+α3+2j+1}.
 */
template <> class SpectralBasis<2> {
  public:
    SpectralBasis(const WeightConfig &cfg, int max_degree)
        : cfg_((detail::require_dim<2>(cfg, "SpectralBasis"), cfg)), max_degree_(max_degree),
          r_(jacobi_recurrence(cfg.alpha(1), cfg.alpha(2), max_degree)) {
        q_.reserve(static_cast<std::size_t>(max_degree) + 1);
        for (int j = 0; j <= max_degree; ++j) {
            q_.push_back(jacobi_recurrence(cfg.alpha(0), cfg.alpha(1) + cfg.alpha(2) + 2.0 * j + 1.0,
                                           max_degree - j));
        }
    }

    [[nodiscard]] const WeightConfig &config() const { return cfg_; }
    [[nodiscard]] int max_degree() const { return max_degree_; }
    [[nodiscard]] int size() const { return coefficient_count<2>(max_degree_); }

    void eval_all(const Point<2> &x, std::span<double> out) const {
        const double u = x[0];
        const double s = 1.0 - u;
        const double v = s > 1e-300 ? std::clamp(x[1] / s, 0.0, 1.0) : 0.0;
        const auto L = static_cast<std::size_t>(max_degree_);
        std::vector<double> r(L + 1);
        std::vector<double> q(L + 1);
        r_.eval(v, r);
        double spow = 1.0;
        for (int j = 0; j <= max_degree_; ++j) {
            const auto qs = std::span<double>(q).first(L - j + 1);
            q_[j].eval(u, qs);
            const double radial = spow * r[j];
            for (int ell = j; ell <= max_degree_; ++ell) {
                out[block_offset<2>(ell) + j] = qs[ell - j] * radial;
            }
            spow *= s;
        }
    }

    [[nodiscard]] double value(int ell, int j, const Point<2> &x) const {
        if (ell < 0 || ell > max_degree_ || j < 0 || j > ell) {
            throw std::out_of_range("SpectralBasis<2>::value: index out of range");
        }
        std::vector<double> all(static_cast<std::size_t>(size()));
        eval_all(x, all);
        return all[block_offset<2>(ell) + j];
    }

  private:
    WeightConfig cfg_;
    int max_degree_;
    JacobiRecurrence r_;
    std::vector<JacobiRecurrence> q_;
};

/// Value of the j-th orthonormal basis polynomial of V_ℓ at x.
template <int Dim> double basis_eval(const WeightConfig &cfg, int ell, int j, const Point<Dim> &x) {
    if (ell < 0) {
        throw std::out_of_range("basis_eval: negative degree");
    }
    return SpectralBasis<Dim>(cfg, ell).value(ell, j, x);
}

/**
 * Coefficients of a function against the orthonormal eigenbasis up to degree L.
 *
 * tail_norm records ‖f − S_L f‖_{2,w_α} when the function is not a polynomial of
 * degree ≤ L; it is zero for band-limited functions.
 */
template <int Dim> class SpectralCoefficients {
  public:
    SpectralCoefficients(WeightConfig cfg, int max_degree)
        : cfg_(std::move(cfg)), max_degree_(max_degree),
          values_(static_cast<std::size_t>(coefficient_count<Dim>(max_degree)), 0.0) {
        detail::require_dim<Dim>(cfg_, "SpectralCoefficients");
        if (max_degree < 0) {
            throw std::out_of_range("SpectralCoefficients: negative max degree");
        }
    }

    [[nodiscard]] const WeightConfig &config() const { return cfg_; }
    [[nodiscard]] int max_degree() const { return max_degree_; }
    [[nodiscard]] double tail_norm() const { return tail_norm_; }
    void set_tail_norm(double t) { tail_norm_ = t; }
    [[nodiscard]] bool band_limited() const { return tail_norm_ == 0.0; }

    [[nodiscard]] std::span<double> values() { return values_; }
    [[nodiscard]] std::span<const double> values() const { return values_; }

    [[nodiscard]] std::span<double> block(int ell) {
        check_degree(ell);
        return std::span<double>(values_).subspan(block_offset<Dim>(ell), block_size<Dim>(ell));
    }
    [[nodiscard]] std::span<const double> block(int ell) const {
        check_degree(ell);
        return std::span<const double>(values_).subspan(block_offset<Dim>(ell), block_size<Dim>(ell));
    }

    [[nodiscard]] double block_norm(int ell) const {
        double s = 0.0;
        for (double c : block(ell)) {
            s += c * c;
        }
        return std::sqrt(s);
    }

    /// Highest degree with a nonzero block, −1 for the zero function.
    [[nodiscard]] int degree() const {
        for (int ell = max_degree_; ell >= 0; --ell) {
            for (double c : block(ell)) {
                if (c != 0.0) {
                    return ell;
                }
            }
        }
        return -1;
    }

    /// ‖f‖_{2,w_α} by Parseval.
    [[nodiscard]] double l2_norm() const {
        double s = tail_norm_ * tail_norm_;
        for (double c : values_) {
            s += c * c;
        }
        return std::sqrt(s);
    }

    /// Copy with block ℓ multiplied by factor(ℓ); the tail is dropped.
    template <class Factor> [[nodiscard]] SpectralCoefficients scaled(Factor &&factor) const {
        SpectralCoefficients out(cfg_, max_degree_);
        for (int ell = 0; ell <= max_degree_; ++ell) {
            const double s = factor(ell);
            auto src = block(ell);
            auto dst = out.block(ell);
            for (std::size_t j = 0; j < src.size(); ++j) {
                dst[j] = s * src[j];
            }
        }
        return out;
    }

    /// Copy re-banded to a new max degree; content above it must be zero.
    [[nodiscard]] SpectralCoefficients with_max_degree(int new_max) const {
        SpectralCoefficients out(cfg_, new_max);
        out.tail_norm_ = tail_norm_;
        for (int ell = 0; ell <= std::max(max_degree_, new_max); ++ell) {
            if (ell > max_degree_) {
                break;
            }
            if (ell > new_max) {
                if (block_norm(ell) != 0.0) {
                    throw std::out_of_range("with_max_degree: nonzero content above new band");
                }
                continue;
            }
            auto src = block(ell);
            std::copy(src.begin(), src.end(), out.block(ell).begin());
        }
        return out;
    }

    SpectralCoefficients &operator+=(const SpectralCoefficients &o) {
        require_compatible(o);
        for (std::size_t i = 0; i < values_.size(); ++i) {
            values_[i] += o.values_[i];
        }
        return *this;
    }
    SpectralCoefficients &operator-=(const SpectralCoefficients &o) {
        require_compatible(o);
        for (std::size_t i = 0; i < values_.size(); ++i) {
            values_[i] -= o.values_[i];
        }
        return *this;
    }
    SpectralCoefficients &operator*=(double s) {
        for (double &c : values_) {
            c *= s;
        }
        tail_norm_ *= std::abs(s);
        return *this;
    }
    friend SpectralCoefficients operator+(SpectralCoefficients a, const SpectralCoefficients &b) {
        return a += b;
    }
    friend SpectralCoefficients operator-(SpectralCoefficients a, const SpectralCoefficients &b) {
        return a -= b;
    }
    friend SpectralCoefficients operator*(double s, SpectralCoefficients a) { return a *= s; }

  private:
    void check_degree(int ell) const {
        if (ell < 0 || ell > max_degree_) {
            throw std::out_of_range("SpectralCoefficients: degree " + std::to_string(ell) +
                                    " outside band [0, " + std::to_string(max_degree_) + "]");
        }
    }
    void require_compatible(const SpectralCoefficients &o) const {
        if (o.max_degree_ != max_degree_ || !(o.cfg_ == cfg_)) {
            throw std::invalid_argument("SpectralCoefficients: incompatible operands");
        }
        if (o.tail_norm_ != 0.0 || tail_norm_ != 0.0) {
            throw std::invalid_argument(
                "SpectralCoefficients: arithmetic on functions with an unresolved tail");
        }
    }

    WeightConfig cfg_;
    int max_degree_;
    std::vector<double> values_;
    double tail_norm_ = 0.0;
};

/// Basis values at a fixed point set, for repeated evaluation of expansions.
template <int Dim> class EvaluationTable {
  public:
    EvaluationTable(const SpectralBasis<Dim> &basis, const std::vector<Point<Dim>> &points)
        : stride_(static_cast<std::size_t>(basis.size())), max_degree_(basis.max_degree()),
          rows_(points.size()), table_(rows_ * stride_) {
        for (std::size_t i = 0; i < rows_; ++i) {
            basis.eval_all(points[i], std::span<double>(table_).subspan(i * stride_, stride_));
        }
    }

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] int max_degree() const { return max_degree_; }

    [[nodiscard]] std::span<const double> row(std::size_t i) const {
        return std::span<const double>(table_).subspan(i * stride_, stride_);
    }

    /// Values of the expansion at every point; only degrees ≤ min(band, table) are used.
    [[nodiscard]] std::vector<double> evaluate(const SpectralCoefficients<Dim> &c) const {
        const int top = std::min(c.degree(), max_degree_);
        if (c.degree() > max_degree_) {
            throw std::out_of_range("EvaluationTable: expansion degree exceeds table");
        }
        std::vector<double> out(rows_, 0.0);
        if (top < 0) {
            return out;
        }
        const auto n = static_cast<std::size_t>(coefficient_count<Dim>(top));
        const auto coeffs = c.values();
        for (std::size_t i = 0; i < rows_; ++i) {
            const double *r = table_.data() + i * stride_;
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                s += r[k] * coeffs[k];
            }
            out[i] = s;
        }
        return out;
    }

  private:
    std::size_t stride_;
    int max_degree_;
    std::size_t rows_;
    std::vector<double> table_;
};

/// Point evaluation of an expansion.
template <int Dim>
double evaluate(const SpectralCoefficients<Dim> &c, const SpectralBasis<Dim> &basis, const std::type_identity_t<Point<Dim>> &x) {
    std::vector<double> phi(static_cast<std::size_t>(basis.size()));
    basis.eval_all(x, phi);
    const auto coeffs = c.values();
    const std::size_t n = std::min(coeffs.size(), phi.size());
    if (c.degree() > basis.max_degree()) {
        throw std::out_of_range("evaluate: expansion degree exceeds basis");
    }
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        s += phi[k] * coeffs[k];
    }
    return s;
}

/**
 * ⟨f, φ_{ℓ,j}⟩_{w_α} for ℓ ≤ L by quadrature. The rule must integrate
 * f·φ against w_α accurately; no tail is recorded.
 */
template <int Dim, class F>
SpectralCoefficients<Dim> project(F &&f, const SpectralBasis<Dim> &basis, const QuadratureRule<Dim> &rule) {
    if (!(rule.weight == basis.config())) {
        throw std::invalid_argument("project: quadrature rule weight does not match basis weight");
    }
    SpectralCoefficients<Dim> out(basis.config(), basis.max_degree());
    auto c = out.values();
    std::vector<double> phi(static_cast<std::size_t>(basis.size()));
    for (std::size_t i = 0; i < rule.size(); ++i) {
        basis.eval_all(rule.nodes[i], phi);
        const double wf = rule.weights[i] * f(rule.nodes[i]);
        for (std::size_t k = 0; k < phi.size(); ++k) {
            c[k] += wf * phi[k];
        }
    }
    return out;
}

/// Projection that also measures ‖f − S_L f‖_{2,w_α} on the same rule.
template <int Dim, class F>
SpectralCoefficients<Dim> project_with_tail(F &&f, const SpectralBasis<Dim> &basis,
                                            const QuadratureRule<Dim> &rule) {
    auto out = project(f, basis, rule);
    const EvaluationTable<Dim> table(basis, rule.nodes);
    const auto approx = table.evaluate(out);
    double s = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
        const double r = f(rule.nodes[i]) - approx[i];
        s += rule.weights[i] * r * r;
    }
    out.set_tail_norm(std::sqrt(s));
    return out;
}

/// S_n f: blocks above n dropped.
template <int Dim> SpectralCoefficients<Dim> partial_sum(const SpectralCoefficients<Dim> &c, int n) {
    if (n < 0 || (n > c.max_degree() && !c.band_limited())) {
        throw std::out_of_range("partial_sum: n outside the resolved spectral band");
    }
    return c.scaled([n](int ell) { return ell <= n ? 1.0 : 0.0; });
}

/// S̃_n f = (1/(n+1)) Σ_{k≤n} S_k f: block ℓ scaled by (n+1−ℓ)/(n+1).
template <int Dim> SpectralCoefficients<Dim> cesaro_mean(const SpectralCoefficients<Dim> &c, int n) {
    if (n < 0 || (n > c.max_degree() && !c.band_limited())) {
        throw std::out_of_range("cesaro_mean: n outside the resolved spectral band");
    }
    return c.scaled([n](int ell) { return ell <= n ? (n + 1.0 - ell) / (n + 1.0) : 0.0; });
}

} // namespace bdm
