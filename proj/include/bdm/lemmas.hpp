#pragma once
/**
 * @file lemmas.hpp
 * @brief Checks of the statements about μ_{n,ℓ}, ν_{n,ℓ} and C_n(τ): strict
 * inequalities, exact identities and "bounded by some c" claims.
 *
 * A claim of the form "≤ c with c independent of n" cannot be falsified at
 * finite n. It is checked on a doubling ladder of n: the sup over the upper
 * half of the ladder may exceed the sup over the lower half by at most 5%.
 * Every check emits one summary row per sub-check and ρ; ladder checks also
 * emit one informational row per n with the sup at that n.
 */

#include "bdm/durrmeyer.hpp"
#include "bdm/orthopoly.hpp"
#include "bdm/quadrature.hpp"
#include "bdm/report.hpp"
#include "bdm/spectrum.hpp"
#include "bdm/suite.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace bdm {

enum class LemmaId { L1, L1_xi, L3, L4, L5, L6, HAT, EQ24, MULT_ID };

inline const std::vector<LemmaId> &all_lemmas() {
    static const std::vector<LemmaId> ids{LemmaId::L1, LemmaId::L1_xi, LemmaId::L3,   LemmaId::L4,     LemmaId::L5,
                                          LemmaId::L6, LemmaId::HAT,   LemmaId::EQ24, LemmaId::MULT_ID};
    return ids;
}

inline std::string lemma_name(LemmaId id) {
    switch (id) {
    case LemmaId::L1:
        return "L1";
    case LemmaId::L1_xi:
        return "L1-xi";
    case LemmaId::L3:
        return "L3";
    case LemmaId::L4:
        return "L4";
    case LemmaId::L5:
        return "L5";
    case LemmaId::L6:
        return "L6";
    case LemmaId::HAT:
        return "HAT";
    case LemmaId::EQ24:
        return "EQ24";
    case LemmaId::MULT_ID:
        return "MULT-ID";
    }
    return "";
}

inline LemmaId parse_lemma(const std::string &s) {
    for (LemmaId id : all_lemmas()) {
        if (lemma_name(id) == s) {
            return id;
        }
    }
    throw ConfigError("unknown lemma id '" + s + "'");
}

/// Integer sweep: start..stop with a step, or the powers of two in [start, stop].
struct NRange {
    int start = 1;
    int stop = 1;
    int step = 1;
    bool dyadic = false;

    [[nodiscard]] std::vector<int> values() const {
        if (start < 1 || stop < start || step < 1) {
            throw ConfigError("invalid n-range " + std::to_string(start) + ".." + std::to_string(stop));
        }
        std::vector<int> out;
        if (dyadic) {
            int n = 1;
            while (n < start) {
                n *= 2;
            }
            for (; n <= stop; n *= 2) {
                out.push_back(n);
            }
        } else {
            for (int n = start; n <= stop; n += step) {
                out.push_back(n);
            }
        }
        if (out.empty()) {
            throw ConfigError("n-range " + std::to_string(start) + ".." + std::to_string(stop) + " is empty");
        }
        return out;
    }

    [[nodiscard]] std::string describe() const {
        return std::to_string(start) + ".." + std::to_string(stop) +
               (dyadic ? " dyadic" : step == 1 ? "" : " step " + std::to_string(step));
    }
};

struct LemmaOptions {
    std::vector<double> rhos;
    NRange n;
    double delta = 0.25; ///< Lemma l6: n²ν_{n,ℓ} is taken over δn ≤ ℓ ≤ n
    double b = 4.0;      ///< Lemma l6: τ²|ν″| is taken over [1, √(bn)]
    int tau_points = 200;
    std::uint64_t seed = 2024;
    Tolerances tol;
};

/// Published defaults for each check.
inline LemmaOptions default_lemma_options(LemmaId id) {
    LemmaOptions o;
    switch (id) {
    case LemmaId::L1:
    case LemmaId::L1_xi:
        o.rhos = {-0.9, -0.5, 0.0, 0.5, 1.0, 2.5, 6.0};
        o.n = {2, 512, 1, false};
        break;
    case LemmaId::MULT_ID:
        o.rhos = {-0.9, -0.5, 0.0, 0.5, 1.0, 2.5, 6.0};
        o.n = {2, 200, 1, false};
        break;
    case LemmaId::L3:
    case LemmaId::L4:
    case LemmaId::L6:
        o.rhos = {0.0, 1.0, 3.0};
        o.n = {8, 2048, 1, true};
        break;
    case LemmaId::L5:
        o.rhos = {0.0, 0.5, 1.0, 3.0};
        o.n = {8, 256, 1, true};
        break;
    case LemmaId::HAT:
    case LemmaId::EQ24:
        o.rhos = {0.0, 0.5, 1.0, 3.0};
        o.n = {2, 64, 1, false};
        break;
    }
    return o;
}

/// A one-dimensional weight with the given ρ, split evenly over both exponents.
inline WeightConfig weight_for_rho(double rho) {
    if (!(rho > -1.0)) {
        throw ConfigError("rho = " + detail::fmt_full(rho) + " needs alpha_i > -1, i.e. rho > -1");
    }
    return WeightConfig({(rho - 1.0) / 2.0, (rho - 1.0) / 2.0});
}

namespace detail {

struct Worst {
    double margin = std::numeric_limits<double>::infinity();
    int n = 0;
    std::optional<double> at;
    double lhs = std::numeric_limits<double>::quiet_NaN();
    double rhs = std::numeric_limits<double>::quiet_NaN();
    bool seen = false;

    void offer(double m, int n_, std::optional<double> at_, double l, double r) {
        if (std::isnan(m)) {
            m = -std::numeric_limits<double>::infinity();
        }
        if (!seen || m < margin) {
            margin = m;
            n = n_;
            at = at_;
            lhs = l;
            rhs = r;
            seen = true;
        }
    }

    [[nodiscard]] ReportRow row(const std::string &id, double rho, bool ok) const {
        ReportRow r;
        r.check_id = id;
        r.rho = rho;
        if (seen) {
            r.n = n;
            r.ell_or_tau = at;
            r.lhs = lhs;
            r.rhs = rhs;
            r.margin = margin;
        }
        r.verdict = seen ? judge(ok, true) : Verdict::skipped;
        return r;
    }
};

/// (rhs − lhs) scaled by the larger magnitude.
inline double rel_margin(double lhs, double rhs) {
    const double scale = std::max(std::abs(lhs), std::abs(rhs));
    return scale > 0.0 ? (rhs - lhs) / scale : 0.0;
}

inline std::string describe(const std::string &what, const LemmaOptions &o) {
    std::ostringstream os;
    os << what << "; rho={";
    for (std::size_t i = 0; i < o.rhos.size(); ++i) {
        os << (i ? "," : "") << o.rhos[i];
    }
    os << "}; n=" << o.n.describe();
    return os.str();
}

inline void require_nonnegative_rho(const std::string &id, double rho) {
    if (rho < 0.0) {
        throw ConfigError(id + " is stated for rho >= 0, got rho = " + fmt_full(rho));
    }
}

/// Interior τ-grid: points a + (b − a)·i/(count + 1), i = 1..count.
inline std::vector<double> open_grid(double a, double b, int count) {
    std::vector<double> out(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        out[i] = a + (b - a) * (i + 1) / (count + 1);
    }
    return out;
}

/// Logarithmically spaced closed grid on [a, b].
inline std::vector<double> log_grid(double a, double b, int count) {
    std::vector<double> out(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        out[i] = count == 1 ? a : a * std::pow(b / a, static_cast<double>(i) / (count - 1));
    }
    out.back() = b;
    return out;
}

/**
 * Boundedness proxy on a ladder of sups: lower half is the first ⌈k/2⌉ points.
 * lhs = upper-half sup, rhs = 1.05 × lower-half sup.
 */
inline ReportRow ladder_summary(const std::string &id, double rho, const std::vector<int> &ns,
                                const std::vector<double> &sups) {
    if (sups.size() < 2) {
        throw ConfigError(id + " needs at least two n values on its ladder");
    }
    const std::size_t half = (sups.size() + 1) / 2;
    const double lower = *std::max_element(sups.begin(), sups.begin() + static_cast<std::ptrdiff_t>(half));
    const double upper = *std::max_element(sups.begin() + static_cast<std::ptrdiff_t>(half), sups.end());
    const auto top = std::max_element(sups.begin(), sups.end());
    ReportRow r;
    r.check_id = id;
    r.rho = rho;
    r.n = ns[static_cast<std::size_t>(top - sups.begin())];
    r.lhs = upper;
    r.rhs = 1.05 * lower;
    r.margin = (1.05 * lower - upper) / (1.05 * lower);
    r.empirical_constant = *top;
    r.verdict = judge(*r.margin >= 0.0, true);
    return r;
}

inline ReportRow ladder_point(const std::string &id, double rho, int n, double sup) {
    ReportRow r;
    r.check_id = id + ".ladder";
    r.rho = rho;
    r.n = n;
    r.empirical_constant = sup;
    r.verdict = Verdict::info_pass;
    return r;
}

struct LadderCheck {
    std::string id;
    std::vector<int> ns;
    std::vector<double> sups;
};

inline void add_ladder(CheckReport &rep, const LadderCheck &l, double rho) {
    for (std::size_t i = 0; i < l.ns.size(); ++i) {
        rep.add(ladder_point(l.id, rho, l.ns[i], l.sups[i]));
    }
    auto s = ladder_summary(l.id, rho, l.ns, l.sups);
    rep.empirical_constant = std::max(rep.empirical_constant.value_or(0.0), *s.empirical_constant);
    rep.add(std::move(s));
}

/// Composite Gauss–Legendre on [a, b], doubling panels until two levels agree.
template <class F> std::array<double, 2> adaptive_pair_integral(F &&f, double a, double b) {
    static const auto gl = gauss_jacobi_rule(0.0, 0.0, 16);
    const auto level = [&](int panels) {
        std::array<double, 2> s{0.0, 0.0};
        const double h = (b - a) / panels;
        for (int k = 0; k < panels; ++k) {
            for (std::size_t q = 0; q < gl.size(); ++q) {
                const auto v = f(a + h * (k + gl.nodes[q][0]));
                s[0] += h * gl.weights[q] * v[0];
                s[1] += h * gl.weights[q] * v[1];
            }
        }
        return s;
    };
    auto prev = level(1);
    for (int panels = 2; panels <= 256; panels *= 2) {
        const auto cur = level(panels);
        if (std::abs(cur[0] - prev[0]) <= 1e-14 * std::max(cur[1], 1e-300)) {
            return cur;
        }
        prev = cur;
    }
    return prev;
}

} // namespace detail

/// ν_{n,ℓ} > ν_{n,ℓ+1}; the margin is 1 − ν_{n,ℓ+1}/ν_{n,ℓ}, formed from logs.
inline CheckReport check_l1(const LemmaOptions &o) {
    CheckReport rep;
    rep.check_id = "L1";
    rep.grid = detail::describe("1 <= ell <= n-1", o);
    const auto ns = o.n.values();
    for (double rho : o.rhos) {
        const auto cfg = weight_for_rho(rho);
        detail::Worst w;
        for (int n : ns) {
            if (n < 2) {
                continue;
            }
            const auto lnu = log_multiplier_row(cfg, n);
            for (int ell = 1; ell <= n - 1; ++ell) {
                const double m = -std::expm1(lnu[ell + 1] - lnu[ell]);
                w.offer(m, n, ell, std::exp(lnu[ell + 1]), std::exp(lnu[ell]));
            }
        }
        rep.add(w.row("L1", rho, w.margin > 0.0));
    }
    return rep;
}

/**
 * ξ_{n,ℓ} = (n−ℓ−1)! Γ(n+ℓ+ρ+1) [n − ℓ(ℓ+ρ+1)] is decreasing in ℓ. Both values
 * are rescaled by the larger of their magnitudes before the signed comparison;
 * lhs/rhs in the row are those rescaled values.
 */
inline CheckReport check_l1_xi(const LemmaOptions &o) {
    CheckReport rep;
    rep.check_id = "L1-xi";
    rep.grid = detail::describe("1 <= ell <= n-2, n >= 3", o);
    const auto ns = o.n.values();
    for (double rho : o.rhos) {
        (void)weight_for_rho(rho);
        struct Xi {
            double sign;
            double log_abs;
        };
        const auto xi = [rho](int n, int ell) {
            const double bracket = n - ell * (ell + rho + 1.0);
            if (bracket == 0.0) {
                return Xi{0.0, -std::numeric_limits<double>::infinity()};
            }
            return Xi{bracket > 0 ? 1.0 : -1.0,
                      log_gamma(n - ell) + log_gamma(n + ell + rho + 1.0) + std::log(std::abs(bracket))};
        };
        detail::Worst w;
        for (int n : ns) {
            if (n < 3) {
                continue;
            }
            for (int ell = 1; ell <= n - 2; ++ell) {
                const Xi a = xi(n, ell);
                const Xi b = xi(n, ell + 1);
                const double top = std::max(a.log_abs, b.log_abs);
                const double va = a.sign == 0.0 ? 0.0 : a.sign * std::exp(a.log_abs - top);
                const double vb = b.sign == 0.0 ? 0.0 : b.sign * std::exp(b.log_abs - top);
                w.offer(va - vb, n, ell, vb, va);
            }
        }
        rep.add(w.row("L1-xi", rho, w.margin > 0.0));
    }
    return rep;
}

/// μ_{k,ℓ} − μ_{k−1,ℓ} = ℓ(ℓ+ρ)/(k(k+ρ)) μ_{k,ℓ}, divided through by μ_{k,ℓ}.
inline CheckReport check_mult_id(const LemmaOptions &o) {
    CheckReport rep;
    rep.check_id = "MULT-ID";
    rep.grid = detail::describe("1 <= ell < k; k over the n-range", o);
    const auto ks = o.n.values();
    for (double rho : o.rhos) {
        const auto cfg = weight_for_rho(rho);
        detail::Worst w;
        for (int k : ks) {
            if (k < 2) {
                continue;
            }
            const auto lk = log_eigenvalue_row(cfg, k);
            const auto lk1 = log_eigenvalue_row(cfg, k - 1);
            for (int ell = 1; ell < k; ++ell) {
                const double lhs = -std::expm1(lk1[ell] - lk[ell]);
                const double rhs = ell * (ell + rho) / (k * (k + rho));
                const double residual = std::abs(lhs - rhs) / std::abs(rhs);
                w.offer(-residual, k, ell, lhs, rhs);
            }
        }
        rep.add(w.row("MULT-ID", rho, w.margin >= -o.tol.identity));
    }
    return rep;
}

/// sup_ℓ ℓ(ν_{n,ℓ} − ν_{n,ℓ+1}), ℓ = 1..n−1.
inline double l3_sup(const WeightConfig &cfg, int n) {
    const auto nu = multiplier_row(cfg, n);
    double s = 0.0;
    for (int ell = 1; ell <= n - 1; ++ell) {
        s = std::max(s, ell * (nu[ell] - nu[ell + 1]));
    }
    return s;
}

/// Σ_{ℓ=1}^{n−2} (ℓ+1)|Δ²ν_{n,ℓ}|.
inline double l4_sum(const WeightConfig &cfg, int n) {
    const auto nu = multiplier_row(cfg, n);
    double s = 0.0;
    for (int ell = 1; ell <= n - 2; ++ell) {
        s += (ell + 1) * std::abs(nu[ell + 2] - 2.0 * nu[ell + 1] + nu[ell]);
    }
    return s;
}

inline CheckReport check_l3(const LemmaOptions &o) {
    CheckReport rep;
    rep.check_id = "L3";
    rep.grid = detail::describe("sup over 1 <= ell <= n-1", o);
    for (double rho : o.rhos) {
        detail::require_nonnegative_rho("L3", rho);
        const auto cfg = weight_for_rho(rho);
        detail::LadderCheck l{"L3", {}, {}};
        for (int n : o.n.values()) {
            if (n >= 2) {
                l.ns.push_back(n);
                l.sups.push_back(l3_sup(cfg, n));
            }
        }
        detail::add_ladder(rep, l, rho);
    }
    return rep;
}

inline CheckReport check_l4(const LemmaOptions &o) {
    CheckReport rep;
    rep.check_id = "L4";
    rep.grid = detail::describe("sum over 1 <= ell <= n-2", o);
    for (double rho : o.rhos) {
        detail::require_nonnegative_rho("L4", rho);
        const auto cfg = weight_for_rho(rho);
        detail::LadderCheck l{"L4", {}, {}};
        for (int n : o.n.values()) {
            if (n >= 3) {
                l.ns.push_back(n);
                l.sups.push_back(l4_sum(cfg, n));
            }
        }
        detail::add_ladder(rep, l, rho);
    }
    return rep;
}

/**
 * Bounds on C_n, C_n′, C_n″ and the logarithmic bracket of C_n, each on an
 * interior τ-grid of its own interval. Strict margins are required.
 *
 * The stated lower bound for C_n″ rests on ψ″(x) ≤ −2/x², which is false
 * (ψ″(x) ~ −1/x²); it fails by about a factor 2. L5.e-half reports the bound
 * that the correct estimate −1/(x−1)² ≤ ψ″(x) ≤ −1/x² yields, unasserted.
 */
inline CheckReport check_l5(const LemmaOptions &o) {
    CheckReport rep;
    rep.check_id = "L5";
    rep.grid = detail::describe(std::to_string(o.tau_points) + " interior tau points per bound", o);
    const auto ns = o.n.values();
    for (double rho : o.rhos) {
        detail::require_nonnegative_rho("L5", rho);
        const auto cfg = weight_for_rho(rho);
        detail::Worst a, b, c, d, e, e_half, dlo, dhi;
        for (int n : ns) {
            for (double tau : detail::open_grid(0.0, n, o.tau_points)) {
                const double cn = c_n(cfg, n, tau);
                const double cp = c_n_prime(cfg, n, tau);
                const double cpp = c_n_second(cfg, n, tau);
                const double s = 2.0 * tau + rho;
                const double ra = s / (n - tau);
                a.offer(detail::rel_margin(cn, ra), n, tau, cn, ra);
                const double rc = (2.0 * n + rho) / ((n + tau + rho) * (n - tau));
                c.offer(detail::rel_margin(cp, rc), n, tau, cp, rc);
                const double ld = (2.0 * n + rho + 2.0) / ((n + tau + rho + 1.0) * (n - tau + 1.0));
                d.offer(detail::rel_margin(ld, cp), n, tau, ld, cp);
                const double le = 2.0 * (s - 1.0) * (2.0 * n + rho + 1.0) /
                                  ((n + tau + rho) * (n + tau + rho) * (n - tau + 1.0) * (n - tau + 1.0));
                e.offer(detail::rel_margin(le, cpp), n, tau, le, cpp);
                // −1/(x−1)² ≤ ψ″(x) ≤ −1/x² gives the same bound without the leading 2
                e_half.offer(detail::rel_margin(le / 2.0, cpp), n, tau, le / 2.0, cpp);
                const double lo = std::log1p(s / (n - tau + 1.0));
                const double hi = std::log1p(s / (n - tau));
                dlo.offer(detail::rel_margin(lo, cn), n, tau, lo, cn);
                dhi.offer(detail::rel_margin(cn, hi), n, tau, cn, hi);
            }
            if (n > rho) {
                for (double tau : detail::open_grid(0.0, (n - rho) / 3.0, o.tau_points)) {
                    const double cn = c_n(cfg, n, tau);
                    const double lb = (2.0 * tau + rho) / (2.0 * (n - tau + 1.0));
                    b.offer(detail::rel_margin(lb, cn), n, tau, lb, cn);
                }
            }
        }
        rep.add(a.row("L5.a", rho, a.margin > 0.0));
        rep.add(b.row("L5.b", rho, b.margin > 0.0));
        rep.add(c.row("L5.c", rho, c.margin > 0.0));
        rep.add(d.row("L5.d", rho, d.margin > 0.0));
        rep.add(e.row("L5.e", rho, e.margin > 0.0));
        auto half = e_half.row("L5.e-half", rho, e_half.margin > 0.0);
        half.verdict = judge(e_half.margin > 0.0, false);
        rep.add(std::move(half));
        rep.add(dlo.row("L5.darboux-lower", rho, dlo.margin > 0.0));
        rep.add(dhi.row("L5.darboux-upper", rho, dhi.margin > 0.0));
    }
    return rep;
}

/// n admissible for Lemma l6: n ≥ 3 and 1 ≤ √(bn) ≤ n − 1.
inline bool l6_admissible(int n, double b) {
    const double r = std::sqrt(b * n);
    return n >= 3 && r >= 1.0 && r <= n - 1.0;
}

struct L6Sups {
    double nu_tail;   ///< max n²ν_{n,ℓ}, δn ≤ ℓ ≤ n
    double first;     ///< max τ|ν_n′(τ)|, τ ∈ [1, n−1]
    double second;    ///< max τ²|ν_n″(τ)|, τ ∈ [1, √(bn)]
};

inline L6Sups l6_sups(const WeightConfig &cfg, int n, double delta, double b, int points) {
    L6Sups s{0.0, 0.0, 0.0};
    const auto lnu = log_multiplier_row(cfg, n);
    for (int ell = std::max(1, static_cast<int>(std::ceil(delta * n - 1e-12))); ell <= n; ++ell) {
        s.nu_tail = std::max(s.nu_tail, static_cast<double>(n) * n * std::exp(lnu[ell]));
    }
    for (double tau : detail::log_grid(1.0, n - 1.0, points)) {
        s.first = std::max(s.first, tau * std::abs(nu_prime(cfg, n, tau)));
    }
    for (double tau : detail::log_grid(1.0, std::sqrt(b * n), points)) {
        s.second = std::max(s.second, tau * tau * std::abs(nu_second(cfg, n, tau)));
    }
    return s;
}

inline CheckReport check_l6(const LemmaOptions &o) {
    if (!(o.delta > 0.0 && o.delta <= 1.0) || !(o.b > 0.0)) {
        throw ConfigError("L6 needs 0 < delta <= 1 and b > 0");
    }
    CheckReport rep;
    rep.check_id = "L6";
    rep.grid = detail::describe("delta=" + detail::fmt_full(o.delta) + ", b=" + detail::fmt_full(o.b) + ", " +
                                    std::to_string(2 * o.tau_points) + " log-spaced tau points",
                                o);
    for (double rho : o.rhos) {
        detail::require_nonnegative_rho("L6", rho);
        const auto cfg = weight_for_rho(rho);
        detail::LadderCheck l0{"L6.0", {}, {}}, la{"L6.a", {}, {}}, lb{"L6.b", {}, {}};
        for (int n : o.n.values()) {
            if (!l6_admissible(n, o.b)) {
                continue;
            }
            const auto s = l6_sups(cfg, n, o.delta, o.b, 2 * o.tau_points);
            for (auto *l : {&l0, &la, &lb}) {
                l->ns.push_back(n);
            }
            l0.sups.push_back(s.nu_tail);
            la.sups.push_back(s.first);
            lb.sups.push_back(s.second);
        }
        detail::add_ladder(rep, l0, rho);
        detail::add_ladder(rep, la, rho);
        detail::add_ladder(rep, lb, rho);
    }
    return rep;
}

/// The hat function M(τ) = τ on [0,1], 2 − τ on [1,2].
inline double hat(double tau) {
    if (tau < 0.0 || tau > 2.0) {
        return 0.0;
    }
    return tau <= 1.0 ? tau : 2.0 - tau;
}

/**
 * Δ²ν_{n,ℓ} against ∫_ℓ^{ℓ+2} M(τ−ℓ)ν_n″(τ)dτ. The residual is scaled by
 * max(|Δ²ν|, ∫M|ν″|).
 */
inline CheckReport check_hat(const LemmaOptions &o) {
    CheckReport rep;
    rep.check_id = "HAT";
    rep.grid = detail::describe("1 <= ell <= n-2, adaptive Gauss-Legendre", o);
    const auto ns = o.n.values();
    for (double rho : o.rhos) {
        detail::require_nonnegative_rho("HAT", rho);
        const auto cfg = weight_for_rho(rho);
        detail::Worst w;
        for (int n : ns) {
            if (n < 3) {
                continue;
            }
            const auto nu = multiplier_row(cfg, n);
            for (int ell = 1; ell <= n - 2; ++ell) {
                const auto integrand = [&](double tau) {
                    const double v = hat(tau - ell) * nu_second(cfg, n, tau);
                    return std::array<double, 2>{v, std::abs(v)};
                };
                const auto left = detail::adaptive_pair_integral(integrand, ell, ell + 1.0);
                const auto right = detail::adaptive_pair_integral(integrand, ell + 1.0, ell + 2.0);
                const double integral = left[0] + right[0];
                const double diff2 = nu[ell + 2] - 2.0 * nu[ell + 1] + nu[ell];
                const double scale = std::max({std::abs(diff2), left[1] + right[1], 1e-300});
                w.offer(-std::abs(diff2 - integral) / scale, n, ell, diff2, integral);
            }
        }
        rep.add(w.row("HAT", rho, w.margin >= -o.tol.hat));
    }
    return rep;
}

/// Coefficients uniform in [−1, 1) up to degree L.
template <int Dim> SpectralCoefficients<Dim> random_coefficients(const WeightConfig &cfg, int L, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    SpectralCoefficients<Dim> c(cfg, L);
    for (double &v : c.values()) {
        v = portable_uniform(gen);
    }
    return c;
}

/**
 * Q_n f = Σ_{ℓ=1}^{n−2}(ℓ+1)Δ²ν_{n,ℓ} S̃_ℓ f + n(ν_{n,n−1} − 2ν_{n,n})S̃_{n−1}f
 *         + (n+1)ν_{n,n} S̃_n f + (ν_{n,2} − 2ν_{n,1}) S̃_0 f, n ≥ 2.
 */
template <int Dim>
SpectralCoefficients<Dim> cesaro_decomposition(const WeightConfig &cfg, int n, const SpectralCoefficients<Dim> &c) {
    if (n < 2) {
        throw ConfigError("the Cesaro decomposition of Q_n needs n >= 2");
    }
    const auto nu = multiplier_row(cfg, n);
    auto out = (nu[2] - 2.0 * nu[1]) * cesaro_mean(c, 0);
    for (int ell = 1; ell <= n - 2; ++ell) {
        out += ((ell + 1) * (nu[ell + 2] - 2.0 * nu[ell + 1] + nu[ell])) * cesaro_mean(c, ell);
    }
    out += (n * (nu[n - 1] - 2.0 * nu[n])) * cesaro_mean(c, n - 1);
    out += ((n + 1) * nu[n]) * cesaro_mean(c, n);
    return out;
}

inline CheckReport check_eq24(const LemmaOptions &o) {
    CheckReport rep;
    rep.check_id = "EQ24";
    rep.grid = detail::describe("random coefficient vectors of degree n, seed " + std::to_string(o.seed), o);
    const auto ns = o.n.values();
    for (double rho : o.rhos) {
        const auto cfg = weight_for_rho(rho);
        detail::Worst w;
        for (int n : ns) {
            if (n < 2) {
                continue;
            }
            const auto c = random_coefficients<1>(cfg, n, o.seed + static_cast<std::uint64_t>(n));
            const auto q = apply_Q(cfg, n, c);
            const auto rhs = cesaro_decomposition(cfg, n, c);
            const double residual = (q - rhs).l2_norm() / q.l2_norm();
            w.offer(-residual, n, std::nullopt, q.l2_norm(), rhs.l2_norm());
        }
        rep.add(w.row("EQ24", rho, w.margin >= -o.tol.identity));
    }
    return rep;
}

inline CheckReport check_lemma(LemmaId id, const LemmaOptions &o) {
    const Stopwatch clock;
    CheckReport rep;
    switch (id) {
    case LemmaId::L1:
        rep = check_l1(o);
        break;
    case LemmaId::L1_xi:
        rep = check_l1_xi(o);
        break;
    case LemmaId::L3:
        rep = check_l3(o);
        break;
    case LemmaId::L4:
        rep = check_l4(o);
        break;
    case LemmaId::L5:
        rep = check_l5(o);
        break;
    case LemmaId::L6:
        rep = check_l6(o);
        break;
    case LemmaId::HAT:
        rep = check_hat(o);
        break;
    case LemmaId::EQ24:
        rep = check_eq24(o);
        break;
    case LemmaId::MULT_ID:
        rep = check_mult_id(o);
        break;
    }
    rep.runtime_ms = clock.ms();
    return rep;
}

} // namespace bdm
