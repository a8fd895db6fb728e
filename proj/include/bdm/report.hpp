#pragma once
/**
 * @file report.hpp
 * @brief Check results and their CSV / JSON serialisation.
 *
 * Every row carries the fixed column set
 *   check_id, d, alphas, rho, p, n, ell_or_tau, f_id, lhs, rhs, margin,
 *   empirical_constant, passed
 * with empty cells where a column does not apply. Runtimes are kept out of the
 * files so that identical configurations give byte-identical output.
 */

#include "json.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace bdm {

/// Invalid sweep or weight parameters; the CLI maps it to exit status 2.
class ConfigError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

struct Tolerances {
    double identity = 1e-12;    ///< algebraic identities
    double quadrature = 1e-9;   ///< inequalities whose sides go through quadrature
    double telescoping = 1e-10;
    double q_identity = 1e-11;
    double eigen = 1e-8;        ///< basis form of M_n against μ_{n,ℓ}φ_ℓ, max-abs
    double hat = 1e-6;          ///< numerical integral of M(τ−ℓ)ν″
    double k_closed = 1e-8;
};

enum class Verdict { pass, fail, info_pass, info_fail, skipped };

inline const char *verdict_token(Verdict v) {
    switch (v) {
    case Verdict::pass:
        return "yes";
    case Verdict::fail:
        return "no";
    case Verdict::info_pass:
        return "yes*";
    case Verdict::info_fail:
        return "no*";
    case Verdict::skipped:
        return "skip";
    }
    return "";
}

struct ReportRow {
    std::string check_id;
    std::optional<int> d;
    std::optional<std::vector<double>> alphas;
    std::optional<double> rho;
    std::optional<double> p;
    std::optional<int> n;
    std::optional<double> ell_or_tau;
    std::string f_id;
    std::optional<double> lhs;
    std::optional<double> rhs;
    std::optional<double> margin;
    std::optional<double> empirical_constant;
    Verdict verdict = Verdict::pass;
};

struct CheckReport {
    std::string check_id;
    std::string grid;
    double worst_margin = std::numeric_limits<double>::infinity();
    std::optional<double> empirical_constant;
    bool passed = true;
    bool asserted = true; ///< false for reports that are diagnostic rather than a stated result
    int criterion = 0;    ///< acceptance criterion this report feeds, 0 if none
    long long runtime_ms = 0;
    std::vector<ReportRow> rows;

    /// Folds a row into the summary; only asserted rows can fail the report.
    void add(ReportRow row) {
        if (row.verdict == Verdict::pass || row.verdict == Verdict::fail) {
            if (row.margin) {
                worst_margin = std::min(worst_margin, *row.margin);
            }
            if (row.verdict == Verdict::fail) {
                passed = false;
            }
        }
        rows.push_back(std::move(row));
    }
};

inline Verdict judge(bool ok, bool asserted) {
    if (asserted) {
        return ok ? Verdict::pass : Verdict::fail;
    }
    return ok ? Verdict::info_pass : Verdict::info_fail;
}

/// Wall-clock timer for CheckReport::runtime_ms.
class Stopwatch {
  public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    [[nodiscard]] long long ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_)
            .count();
    }

  private:
    std::chrono::steady_clock::time_point start_;
};

namespace detail {

inline std::string fmt_full(double v) {
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    if (std::isnan(v)) {
        return "nan";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string cell(const std::optional<double> &v) { return v ? fmt_full(*v) : std::string(); }

inline std::string csv_escape(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

inline std::string join_alphas(const std::vector<double> &a) {
    std::string out;
    for (std::size_t i = 0; i < a.size(); ++i) {
        out += (i ? ";" : "") + fmt_full(a[i]);
    }
    return out;
}

} // namespace detail

inline constexpr const char *kCsvHeader =
    "check_id,d,alphas,rho,p,n,ell_or_tau,f_id,lhs,rhs,margin,empirical_constant,passed";

/// Reports in the given order, rows in insertion order.
inline void write_csv(std::ostream &os, const std::vector<CheckReport> &reports) {
    os << kCsvHeader << '\n';
    for (const auto &r : reports) {
        for (const auto &row : r.rows) {
            os << detail::csv_escape(row.check_id) << ',' << (row.d ? std::to_string(*row.d) : "") << ','
               << (row.alphas ? detail::join_alphas(*row.alphas) : "") << ',' << detail::cell(row.rho) << ','
               << detail::cell(row.p) << ',' << (row.n ? std::to_string(*row.n) : "") << ','
               << detail::cell(row.ell_or_tau) << ',' << detail::csv_escape(row.f_id) << ','
               << detail::cell(row.lhs) << ',' << detail::cell(row.rhs) << ',' << detail::cell(row.margin) << ','
               << detail::cell(row.empirical_constant) << ',' << verdict_token(row.verdict) << '\n';
        }
    }
}

inline std::string to_csv(const std::vector<CheckReport> &reports) {
    std::ostringstream os;
    write_csv(os, reports);
    return os.str();
}

namespace detail {

inline nlohmann::json opt_json(const std::optional<double> &v) {
    if (!v || std::isnan(*v)) {
        return nullptr;
    }
    if (std::isinf(*v)) {
        return *v > 0 ? "inf" : "-inf";
    }
    return *v;
}

} // namespace detail

/// Same content as the CSV plus the per-report summaries (runtime excluded).
inline nlohmann::json to_json(const std::vector<CheckReport> &reports) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto &r : reports) {
        nlohmann::json j;
        j["check_id"] = r.check_id;
        j["grid"] = r.grid;
        j["worst_margin"] = detail::opt_json(r.worst_margin);
        j["empirical_constant"] = detail::opt_json(r.empirical_constant);
        j["passed"] = r.passed;
        j["asserted"] = r.asserted;
        j["criterion"] = r.criterion;
        nlohmann::json rows = nlohmann::json::array();
        for (const auto &row : r.rows) {
            nlohmann::json x;
            x["check_id"] = row.check_id;
            x["d"] = row.d ? nlohmann::json(*row.d) : nlohmann::json(nullptr);
            x["alphas"] = row.alphas ? nlohmann::json(*row.alphas) : nlohmann::json(nullptr);
            x["rho"] = detail::opt_json(row.rho);
            x["p"] = detail::opt_json(row.p);
            x["n"] = row.n ? nlohmann::json(*row.n) : nlohmann::json(nullptr);
            x["ell_or_tau"] = detail::opt_json(row.ell_or_tau);
            x["f_id"] = row.f_id;
            x["lhs"] = detail::opt_json(row.lhs);
            x["rhs"] = detail::opt_json(row.rhs);
            x["margin"] = detail::opt_json(row.margin);
            x["empirical_constant"] = detail::opt_json(row.empirical_constant);
            x["passed"] = verdict_token(row.verdict);
            rows.push_back(std::move(x));
        }
        j["rows"] = std::move(rows);
        out.push_back(std::move(j));
    }
    return out;
}

/// Stable sort by check_id.
inline void sort_reports(std::vector<CheckReport> &reports) {
    std::stable_sort(reports.begin(), reports.end(),
                     [](const CheckReport &a, const CheckReport &b) { return a.check_id < b.check_id; });
}

} // namespace bdm
