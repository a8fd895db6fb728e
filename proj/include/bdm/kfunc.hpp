#pragma once
/**
 * @file kfunc.hpp
 * @brief Numerical estimates of the K-functional
 *   K_α(f,t)_p = inf_g ‖f − g‖_{p,w_α} + t ‖P_α(D) g‖_{p,w_α}.
 *
 * At p = 2 the infimum over the spectral band of f is computed exactly: the
 * minimiser is a diagonal shrinkage ĝ_ℓ = f̂_ℓ/(1 + sλ_ℓ²), λ_ℓ = ℓ(ℓ+ρ), and
 * only the scalar s needs to be searched. For other p the functional is
 * bracketed between ‖M_n f − f‖/2 and the best of a fixed candidate set.
 */

#include "bdm/durrmeyer.hpp"
#include "bdm/orthopoly.hpp"
#include "bdm/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bdm {

struct KBracket {
    double lower = 0.0;
    double upper = 0.0;
    std::string witness; ///< the candidate g that achieved upper
};

namespace detail {

inline std::string fmt_g(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

/// Squared block norms with their eigenvalues λ_ℓ = ℓ(ℓ+ρ).
template <int Dim> struct BlockEnergy {
    std::vector<double> lambda;
    std::vector<double> energy;
    double tail2 = 0.0;

    BlockEnergy(const SpectralCoefficients<Dim> &c, double rho) : tail2(c.tail_norm() * c.tail_norm()) {
        const int top = std::max(c.degree(), 0);
        for (int ell = 1; ell <= top; ++ell) {
            const double b = c.block_norm(ell);
            if (b != 0.0) {
                lambda.push_back(ell * (ell + rho));
                energy.push_back(b * b);
            }
        }
    }

    /// h(s) = ‖f − g_s‖ + t‖Λ g_s‖ on the shrinkage curve.
    [[nodiscard]] double objective(double s, double t) const {
        double a2 = tail2;
        double b2 = 0.0;
        for (std::size_t i = 0; i < lambda.size(); ++i) {
            const double l = lambda[i];
            const double q = 1.0 / (1.0 + s * l * l);
            const double shrink = s * l * l * q;
            a2 += shrink * shrink * energy[i];
            b2 += l * l * q * q * energy[i];
        }
        return std::sqrt(a2) + t * std::sqrt(b2);
    }

    /// s = 0: g = f on the band.
    [[nodiscard]] double at_identity(double t) const {
        double b2 = 0.0;
        for (std::size_t i = 0; i < lambda.size(); ++i) {
            b2 += lambda[i] * lambda[i] * energy[i];
        }
        return std::sqrt(tail2) + t * std::sqrt(b2);
    }

    /// s = ∞: g = f̂_0 φ_0.
    [[nodiscard]] double at_constant() const {
        double a2 = tail2;
        for (double e : energy) {
            a2 += e;
        }
        return std::sqrt(a2);
    }
};

struct ShrinkageOptimum {
    double value;
    double s; ///< 0 for g = f, +∞ for g = constant
};

/**
 * Minimises h over σ = ln s ∈ [−80, 80]: a coarse scan locates the basin,
 * golden-section refines it, and both endpoints are compared.
 */
template <int Dim> ShrinkageOptimum minimize_shrinkage(const BlockEnergy<Dim> &e, double t) {
    ShrinkageOptimum best{e.at_identity(t), 0.0};
    const double hc = e.at_constant();
    if (hc < best.value) {
        best = {hc, std::numeric_limits<double>::infinity()};
    }
    if (e.lambda.empty() || t == 0.0) {
        return best;
    }
    constexpr double lo = -80.0;
    constexpr double hi = 80.0;
    constexpr int scan = 640;
    const double step = (hi - lo) / scan;
    int arg = 0;
    double hmin = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= scan; ++i) {
        const double h = e.objective(std::exp(lo + i * step), t);
        if (h < hmin) {
            hmin = h;
            arg = i;
        }
    }
    double a = lo + std::max(arg - 1, 0) * step;
    double b = lo + std::min(arg + 1, scan) * step;
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - phi * (b - a);
    double x2 = a + phi * (b - a);
    double f1 = e.objective(std::exp(x1), t);
    double f2 = e.objective(std::exp(x2), t);
    for (int it = 0; it < 200 && b - a > 1e-12; ++it) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = e.objective(std::exp(x1), t);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = e.objective(std::exp(x2), t);
        }
    }
    double fm = std::min(f1, f2);
    double sm = std::exp(f1 <= f2 ? x1 : x2);
    if (hmin < fm) {
        fm = hmin;
        sm = std::exp(lo + arg * step);
    }
    if (fm < best.value) {
        best = {fm, sm};
    }
    return best;
}

} // namespace detail

/// K_α(f,t)_2 minimised over the spectral band of f. f must be band-limited.
template <int Dim> double k_exact_p2(const WeightConfig &cfg, const SpectralCoefficients<Dim> &f, double t) {
    if (!f.band_limited()) {
        throw std::invalid_argument("k_exact_p2: f has content above its band; use k_bracket_p2");
    }
    if (!(t >= 0.0)) {
        throw std::invalid_argument("k_exact_p2: t must be >= 0");
    }
    return detail::minimize_shrinkage(detail::BlockEnergy<Dim>(f, cfg.rho()), t).value;
}

/// The shrinkage minimiser itself, as coefficients.
template <int Dim>
SpectralCoefficients<Dim> k_minimizer_p2(const WeightConfig &cfg, const SpectralCoefficients<Dim> &f, double t) {
    const double rho = cfg.rho();
    const auto opt = detail::minimize_shrinkage(detail::BlockEnergy<Dim>(f, rho), t);
    if (std::isinf(opt.s)) {
        return f.scaled([](int ell) { return ell == 0 ? 1.0 : 0.0; });
    }
    return f.scaled([&](int ell) {
        const double l = ell * (ell + rho);
        return 1.0 / (1.0 + opt.s * l * l);
    });
}

/**
 * p = 2 bracket that also covers functions with an unresolved tail τ:
 * the band problem with τ folded into ‖f − g‖ is an upper bound, and since K
 * is 1-Lipschitz in f, the band problem for S_L f minus τ is a lower bound.
 */
template <int Dim> KBracket k_bracket_p2(const WeightConfig &cfg, const SpectralCoefficients<Dim> &f, double t) {
    const detail::BlockEnergy<Dim> with_tail(f, cfg.rho());
    const auto up = detail::minimize_shrinkage(with_tail, t);
    KBracket out;
    out.upper = up.value;
    out.witness = "p2-shrinkage s=" + detail::fmt_g(up.s);
    if (f.band_limited()) {
        out.lower = up.value;
    } else {
        detail::BlockEnergy<Dim> band = with_tail;
        band.tail2 = 0.0;
        out.lower = std::max(0.0, detail::minimize_shrinkage(band, t).value - f.tail_norm());
    }
    return out;
}

/// A function sampled for norm evaluation: its coefficients and point values.
template <int Dim> struct Target {
    SpectralCoefficients<Dim> coeffs;
    std::vector<double> at_nodes; ///< values at the quadrature nodes (finite p)
    std::vector<double> at_grid;  ///< values on the sup grid (p = ∞)

    [[nodiscard]] std::span<const double> values(double p) const { return std::isinf(p) ? at_grid : at_nodes; }
};

/**
 * Norm machinery for one weight, band and set of breakpoints. Polynomials up
 * to the band are evaluated through cached basis tables; ‖·‖₂ uses Parseval.
 */
template <int Dim> class KEvaluator {
  public:
    KEvaluator(const WeightConfig &cfg, int band, std::span<const double> breakpoints = {})
        : cfg_(cfg), band_(band), basis_(cfg, band), ctx_(make_rule(cfg, band, breakpoints), make_grid()),
          node_table_(basis_, ctx_.rule().nodes), grid_table_(basis_, ctx_.grid().points) {}

    [[nodiscard]] const WeightConfig &config() const { return cfg_; }
    [[nodiscard]] int band() const { return band_; }
    [[nodiscard]] const SpectralBasis<Dim> &basis() const { return basis_; }
    [[nodiscard]] const NormContext<Dim> &context() const { return ctx_; }

    /// Samples f; coefficients are projected on the evaluator's rule unless supplied.
    template <class F> [[nodiscard]] Target<Dim> sample(F &&f, bool with_tail) const {
        auto c = with_tail ? project_with_tail(f, basis_, ctx_.rule()) : project(f, basis_, ctx_.rule());
        return sample(std::forward<F>(f), std::move(c));
    }
    template <class F> [[nodiscard]] Target<Dim> sample(F &&f, SpectralCoefficients<Dim> c) const {
        Target<Dim> out{std::move(c), {}, {}};
        out.at_nodes.reserve(ctx_.rule().size());
        for (const auto &x : ctx_.rule().nodes) {
            out.at_nodes.push_back(f(x));
        }
        out.at_grid.reserve(ctx_.grid().points.size());
        for (const auto &x : ctx_.grid().points) {
            out.at_grid.push_back(f(x));
        }
        return out;
    }

    [[nodiscard]] std::vector<double> values(const SpectralCoefficients<Dim> &g, double p) const {
        return std::isinf(p) ? grid_table_.evaluate(fit(g)) : node_table_.evaluate(fit(g));
    }

    /// ‖g‖_p for a polynomial in the band.
    [[nodiscard]] double norm(const SpectralCoefficients<Dim> &g, double p) const {
        if (p == 2.0) {
            return g.l2_norm();
        }
        return ctx_.reduce(values(g, p), p);
    }

    [[nodiscard]] double norm(const Target<Dim> &f, double p) const {
        if (p == 2.0) {
            return f.coeffs.l2_norm();
        }
        return ctx_.reduce(f.values(p), p);
    }

    /// ‖f − g‖_p; at p = 2 the tail of f enters through Parseval.
    [[nodiscard]] double distance(const Target<Dim> &f, const SpectralCoefficients<Dim> &g, double p) const {
        if (p == 2.0) {
            const auto fc = fit(f.coeffs);
            const auto gc = fit(g);
            double s = f.coeffs.tail_norm() * f.coeffs.tail_norm();
            const auto a = fc.values();
            const auto b = gc.values();
            for (std::size_t i = 0; i < a.size(); ++i) {
                const double d = a[i] - b[i];
                s += d * d;
            }
            return std::sqrt(s);
        }
        const auto gv = values(g, p);
        const auto fv = f.values(p);
        std::vector<double> diff(gv.size());
        for (std::size_t i = 0; i < gv.size(); ++i) {
            diff[i] = fv[i] - gv[i];
        }
        return ctx_.reduce(diff, p);
    }

    /// ‖f − g‖_p + t‖P_α(D)g‖_p.
    [[nodiscard]] double objective(const Target<Dim> &f, const SpectralCoefficients<Dim> &g, double t,
                                   double p) const {
        return distance(f, g, p) + t * norm(apply_P_spectral(cfg_, g), p);
    }

  private:
    static QuadratureRule<Dim> make_rule(const WeightConfig &cfg, int band, std::span<const double> breakpoints) {
        if constexpr (Dim == 1) {
            return weighted_rule_1d(cfg, std::max(band + 8, 400), breakpoints);
        } else {
            return simplex_rule_2d(cfg, std::max(2 * band + 8, 60));
        }
    }
    static SamplingGrid<Dim> make_grid() {
        if constexpr (Dim == 1) {
            return sup_grid_1d();
        } else {
            return sup_grid_2d();
        }
    }

    [[nodiscard]] SpectralCoefficients<Dim> fit(const SpectralCoefficients<Dim> &g) const {
        if (g.max_degree() == band_) {
            return g;
        }
        auto copy = g;
        copy.set_tail_norm(0.0);
        return copy.with_max_degree(band_);
    }

    WeightConfig cfg_;
    int band_;
    SpectralBasis<Dim> basis_;
    NormContext<Dim> ctx_;
    EvaluationTable<Dim> node_table_;
    EvaluationTable<Dim> grid_table_;
};

/**
 * Upper bound for K_α(f,t)_p: the minimum of ‖f − g‖ + t‖P_α(D)g‖ over
 * g ∈ {0, M_k f (k = n, 2n, 4n), g_n, S̃_m f (m = n, 2n), p = 2 shrinkage},
 * n = ⌈1/t⌉. Candidates needing degrees beyond a function's resolved band
 * are skipped.
 */
template <int Dim> KBracket k_upper(const KEvaluator<Dim> &ev, const Target<Dim> &f, double t, double p) {
    const WeightConfig &cfg = ev.config();
    const auto &c = f.coeffs;
    KBracket best;
    best.upper = ev.norm(f, p);
    best.witness = "zero";
    const auto consider = [&](const SpectralCoefficients<Dim> &g, const std::string &name) {
        const double v = ev.objective(f, g, t, p);
        if (v < best.upper) {
            best.upper = v;
            best.witness = name;
        }
    };
    const int n = t > 0.0 ? static_cast<int>(std::ceil(1.0 / t - 1e-12)) : 0;
    const auto resolved = [&](int degree) { return c.band_limited() || degree <= c.max_degree(); };
    if (n >= 1) {
        for (int k : {n, 2 * n, 4 * n}) {
            if (resolved(k)) {
                consider(apply_durrmeyer_spectral(cfg, k, c), "M_" + std::to_string(k));
            }
        }
        if (resolved(2 * n)) {
            consider(build_g_n(cfg, n, c).g, "g_" + std::to_string(n));
        }
        for (int m : {n, 2 * n}) {
            if (resolved(m)) {
                consider(cesaro_mean(c, m), "cesaro_" + std::to_string(m));
            }
        }
    }
    auto shrink = k_minimizer_p2(cfg, c, t);
    shrink.set_tail_norm(0.0);
    consider(shrink, "p2-shrinkage");
    best.lower = 0.0;
    return best;
}

/// ‖M_{n,α}f − f‖_p / 2, the lower bound implied by the direct estimate.
template <int Dim> double k_lower(const KEvaluator<Dim> &ev, const Target<Dim> &f, int n, double p) {
    if (n < 1) {
        throw std::invalid_argument("k_lower: n must be >= 1");
    }
    return ev.distance(f, apply_durrmeyer_spectral(ev.config(), n, f.coeffs), p) / 2.0;
}

} // namespace bdm
