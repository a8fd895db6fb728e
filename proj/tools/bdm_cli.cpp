// bdm: command-line front end for the Bernstein–Durrmeyer verification harness.

#include "bdm/acceptance.hpp"
#include "bdm/harness.hpp"
#include "bdm/lemmas.hpp"
#include "bdm/report.hpp"
#include "bdm/spectrum.hpp"
#include "bdm/suite.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;

enum ExitCode { kOk = 0, kCheckFailed = 1, kConfigError = 2, kDegenerate = 3, kInternal = 4 };

const std::vector<std::string> kCommands{"verify-lemmas", "verify-direct",  "verify-converse", "verify-proposition",
                                         "kfunc",         "norms",          "report-all"};

struct RunConfig {
    std::string command = "report-all";
    int d = 1;
    std::vector<double> alpha{0.0, 0.0};
    bool weight_given = false;
    std::optional<std::vector<double>> ps;
    std::optional<int> n_start, n_stop, n_step;
    std::optional<bool> dyadic;
    std::string suite = "full";
    std::vector<std::string> lemmas;
    std::uint64_t seed = 2024;
    std::string out = "-";
    std::string format = "csv";
    bdm::Tolerances tol;
    double delta = 0.25;
    double b = 4.0;

    [[nodiscard]] bdm::NRange range(bdm::NRange fallback) const {
        const bool any = n_start || n_stop || n_step || dyadic;
        if (!any) {
            return fallback;
        }
        bdm::NRange r = fallback;
        r.start = n_start.value_or(r.start);
        r.stop = n_stop.value_or(r.stop);
        r.step = n_step.value_or(1);
        r.dyadic = dyadic.value_or(n_step ? false : r.dyadic);
        return r;
    }
    [[nodiscard]] std::vector<double> p_list(std::vector<double> fallback) const { return ps.value_or(fallback); }
};

std::string as_text(const json &v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

std::vector<std::string> split(const std::string &s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        const auto a = tok.find_first_not_of(" \t");
        const auto b = tok.find_last_not_of(" \t");
        if (a != std::string::npos) {
            out.push_back(tok.substr(a, b - a + 1));
        }
    }
    return out;
}

std::vector<std::string> tokens(const json &v) {
    if (v.is_array()) {
        std::vector<std::string> out;
        for (const auto &x : v) {
            out.push_back(as_text(x));
        }
        return out;
    }
    return split(as_text(v));
}

double parse_double(const std::string &key, const std::string &s) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used == s.size()) {
            return v;
        }
    } catch (const std::exception &) {
    }
    throw bdm::ConfigError("--" + key + ": '" + s + "' is not a number");
}

long long parse_int(const std::string &key, const std::string &s) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(s, &used);
        if (used == s.size()) {
            return v;
        }
    } catch (const std::exception &) {
    }
    throw bdm::ConfigError("--" + key + ": '" + s + "' is not an integer");
}

double parse_p(const std::string &s) {
    if (s == "inf" || s == "Inf" || s == "infinity") {
        return bdm::kPInfinity;
    }
    const double p = parse_double("p", s);
    if (!(p >= 1.0)) {
        throw bdm::ConfigError("--p: " + s + " is outside [1, inf]");
    }
    return p;
}

bool parse_bool(const std::string &key, const json &v) {
    if (v.is_boolean()) {
        return v.get<bool>();
    }
    const auto s = as_text(v);
    if (s == "true" || s == "1") {
        return true;
    }
    if (s == "false" || s == "0") {
        return false;
    }
    throw bdm::ConfigError("--" + key + ": '" + s + "' is not a boolean");
}

/// Settings keyed by flag name; the config file is read first and flags overwrite it.
RunConfig interpret(const std::map<std::string, json> &s) {
    RunConfig c;
    const auto get = [&](const std::string &k) -> const json * {
        const auto it = s.find(k);
        return it == s.end() ? nullptr : &it->second;
    };
    if (const auto *v = get("command")) {
        c.command = as_text(*v);
        if (std::find(kCommands.begin(), kCommands.end(), c.command) == kCommands.end()) {
            throw bdm::ConfigError("unknown command '" + c.command + "'");
        }
    }
    if (const auto *v = get("alpha")) {
        c.alpha.clear();
        for (const auto &t : tokens(*v)) {
            c.alpha.push_back(parse_double("alpha", t));
        }
        c.d = static_cast<int>(c.alpha.size()) - 1;
        c.weight_given = true;
    }
    if (const auto *v = get("d")) {
        const auto d = static_cast<int>(parse_int("d", as_text(*v)));
        if (get("alpha") && d != c.d) {
            throw bdm::ConfigError("--alpha has " + std::to_string(c.alpha.size()) + " entries but d = " +
                                   std::to_string(d) + " needs d + 1");
        }
        if (!get("alpha")) {
            c.alpha.assign(static_cast<std::size_t>(std::max(d, 0)) + 1, 0.0);
        }
        c.d = d;
        c.weight_given = true;
    }
    if (c.d < 1) {
        throw bdm::ConfigError("d must be at least 1");
    }
    if (const auto *v = get("p")) {
        std::vector<double> ps;
        for (const auto &t : tokens(*v)) {
            ps.push_back(parse_p(t));
        }
        c.ps = ps;
    }
    const auto positive = [&](const std::string &k) -> std::optional<int> {
        const auto *v = get(k);
        if (!v) {
            return std::nullopt;
        }
        const auto n = parse_int(k, as_text(*v));
        if (n < 1 || n > 1 << 20) {
            throw bdm::ConfigError("--" + k + " must lie in 1..2^20");
        }
        return static_cast<int>(n);
    };
    c.n_start = positive("n-start");
    c.n_stop = positive("n-stop");
    c.n_step = positive("n-step");
    if (const auto *v = get("dyadic")) {
        c.dyadic = parse_bool("dyadic", *v);
    }
    if (const auto *v = get("suite")) {
        c.suite = as_text(*v);
        (void)bdm::parse_suite(c.suite);
    }
    if (const auto *v = get("lemma")) {
        c.lemmas = tokens(*v);
        for (const auto &l : c.lemmas) {
            (void)bdm::parse_lemma(l);
        }
    }
    if (const auto *v = get("seed")) {
        const auto seed = parse_int("seed", as_text(*v));
        if (seed < 0) {
            throw bdm::ConfigError("--seed must be non-negative");
        }
        c.seed = static_cast<std::uint64_t>(seed);
    }
    if (const auto *v = get("out")) {
        c.out = as_text(*v);
    }
    if (const auto *v = get("format")) {
        c.format = as_text(*v);
        if (c.format != "csv" && c.format != "json") {
            throw bdm::ConfigError("--format must be csv or json");
        }
    }
    const auto tolerance = [&](const std::string &k, double &dst) {
        if (const auto *v = get(k)) {
            dst = parse_double(k, as_text(*v));
            if (!(dst >= 0.0)) {
                throw bdm::ConfigError("--" + k + " must be non-negative");
            }
        }
    };
    tolerance("tol-identity", c.tol.identity);
    tolerance("tol-quadrature", c.tol.quadrature);
    if (const auto *v = get("delta")) {
        c.delta = parse_double("delta", as_text(*v));
        if (!(c.delta > 0.0 && c.delta <= 1.0)) {
            throw bdm::ConfigError("--delta must lie in (0, 1]");
        }
    }
    if (const auto *v = get("b")) {
        c.b = parse_double("b", as_text(*v));
        if (!(c.b > 0.0)) {
            throw bdm::ConfigError("--b must be positive");
        }
    }
    return c;
}

std::map<std::string, json> read_config_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw bdm::ConfigError("cannot open config file " + path);
    }
    json j;
    try {
        in >> j;
    } catch (const json::parse_error &e) {
        throw bdm::ConfigError("config file " + path + ": " + e.what());
    }
    if (!j.is_object()) {
        throw bdm::ConfigError("config file " + path + " must hold a JSON object");
    }
    std::map<std::string, json> out;
    for (const auto &[k, v] : j.items()) {
        std::string key = k;
        std::replace(key.begin(), key.end(), '_', '-');
        out[key] = v;
    }
    return out;
}

std::vector<bdm::CheckReport> run_lemmas(const RunConfig &c) {
    std::vector<bdm::LemmaId> ids;
    for (const auto &l : c.lemmas) {
        ids.push_back(bdm::parse_lemma(l));
    }
    if (ids.empty()) {
        ids = bdm::all_lemmas();
    }
    std::vector<bdm::CheckReport> out;
    for (auto id : ids) {
        auto o = bdm::default_lemma_options(id);
        o.n = c.range(o.n);
        o.seed = c.seed;
        o.tol = c.tol;
        o.delta = c.delta;
        o.b = c.b;
        if (c.weight_given) {
            o.rhos = {bdm::WeightConfig(c.alpha).rho()};
        }
        out.push_back(bdm::check_lemma(id, o));
    }
    return out;
}

template <int Dim> std::vector<bdm::CheckReport> run_functions(const RunConfig &c, const bdm::WeightConfig &cfg) {
    const auto suite = bdm::make_suite<Dim>(cfg, c.seed, bdm::parse_suite(c.suite));
    if (suite.empty()) {
        throw bdm::ConfigError("suite '" + c.suite + "' is empty for d = " + std::to_string(Dim));
    }
    const std::string grid = "d=" + std::to_string(Dim) + ", suite " + c.suite + ", seed " + std::to_string(c.seed);
    const std::vector<double> all_p{1.0, 2.0, bdm::kPInfinity};
    bdm::SuitePlan plan;
    if (c.command == "verify-direct") {
        plan.direct_ps = c.p_list(all_p);
        plan.direct_ns = c.range({4, 64, 1, true}).values();
        return {bdm::run_suite<Dim>(cfg, suite, plan, c.tol, grid).direct};
    }
    if (c.command == "verify-converse") {
        plan.theorem_ps = c.p_list(all_p);
        plan.theorem_ns = c.range({4, 64, 1, true}).values();
        return {bdm::run_suite<Dim>(cfg, suite, plan, c.tol, grid).theorem};
    }
    if (c.command == "verify-proposition") {
        plan.proposition_ps = c.p_list({2.0});
        plan.proposition_ns = c.range({1, 128, 1, true}).values();
        std::vector<bdm::CheckReport> out;
        for (double p : plan.proposition_ps) {
            auto one = plan;
            one.proposition_ps = {p};
            if (p != 2.0 && p > 4.0 / 3.0 && p < 4.0) {
                one.varsigma = bdm::empirical_varsigma(p, 64, c.seed);
            }
            out.push_back(bdm::run_suite<Dim>(cfg, suite, one, c.tol, grid).proposition);
        }
        return out;
    }
    // kfunc
    bdm::CheckReport rep;
    rep.check_id = "KFUNC";
    rep.grid = grid;
    const bdm::Stopwatch clock;
    const auto ps = c.p_list(all_p);
    const auto ns = c.range({4, 64, 1, true}).values();
    for (const auto &tf : suite) {
        const auto fc = bdm::prepare_case(cfg, tf);
        for (double p : ps) {
            for (int n : ns) {
                rep.add(bdm::kfunc_row(fc, p, n, c.tol));
            }
        }
    }
    rep.runtime_ms = clock.ms();
    return {rep};
}

std::vector<bdm::CheckReport> run_norms(const RunConfig &c, const bdm::WeightConfig &cfg) {
    const auto ps = c.p_list({2.0, 3.0, 6.0});
    const auto ns = c.range({1, 64, 1, true}).values();
    if (c.d == 1) {
        return {bdm::operator_norms<1>(cfg, {bdm::OperatorKind::partial_sum, bdm::OperatorKind::cesaro}, ps, ns,
                                       c.seed, c.tol)};
    }
    return {bdm::operator_norms<2>(cfg, {bdm::OperatorKind::cesaro}, ps, ns, c.seed, c.tol)};
}

void emit(const RunConfig &c, const std::vector<bdm::CheckReport> &reports) {
    const std::string body = c.format == "json" ? bdm::to_json(reports).dump(2) + "\n" : bdm::to_csv(reports);
    if (c.out == "-") {
        std::cout << body;
        return;
    }
    std::ofstream f(c.out, std::ios::binary);
    if (!f) {
        throw bdm::ConfigError("cannot write " + c.out);
    }
    f << body;
}

int run(const RunConfig &c) {
    // with the report on stdout, keep the summary on stderr
    std::ostream &log = c.out == "-" ? std::cerr : std::cout;
    std::vector<bdm::CheckReport> reports;
    if (c.command == "report-all") {
        bdm::AcceptanceOptions opt;
        opt.seed = c.seed;
        opt.tol = c.tol;
        opt.delta = c.delta;
        opt.b = c.b;
        reports = bdm::run_acceptance(opt);
        emit(c, reports);
        for (const auto &crit : bdm::evaluate_criteria(reports)) {
            log << bdm::criterion_line(crit) << '\n';
        }
    } else {
        if (c.command == "verify-lemmas") {
            reports = run_lemmas(c);
        } else {
            const bdm::WeightConfig cfg(c.alpha);
            if (c.command == "norms") {
                reports = run_norms(c, cfg);
            } else if (c.d == 1) {
                reports = run_functions<1>(c, cfg);
            } else if (c.d == 2) {
                reports = run_functions<2>(c, cfg);
            } else {
                throw bdm::ConfigError("function-level checks support d = 1 and d = 2");
            }
        }
        bdm::sort_reports(reports);
        emit(c, reports);
    }

    bool ok = true;
    for (const auto &r : reports) {
        std::size_t asserted = 0;
        std::size_t failed = 0;
        for (const auto &row : r.rows) {
            asserted += row.verdict == bdm::Verdict::pass || row.verdict == bdm::Verdict::fail;
            failed += row.verdict == bdm::Verdict::fail;
        }
        log << (r.passed ? "ok    " : "FAIL  ") << r.check_id << ": " << asserted - failed << "/" << asserted
            << " asserted rows pass, " << r.rows.size() - asserted << " reported only, worst margin "
            << bdm::detail::fmt_full(r.worst_margin) << ", " << r.runtime_ms << " ms\n";
        if (!r.passed) {
            std::map<std::string, int> ids;
            for (const auto &row : r.rows) {
                if (row.verdict == bdm::Verdict::fail) {
                    ++ids[row.check_id];
                }
            }
            for (const auto &[id, count] : ids) {
                log << "      failing " << id << " x" << count << '\n';
            }
        }
        ok = ok && r.passed;
    }
    return ok ? kOk : kCheckFailed;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Numerical verification of the strong converse inequality for Bernstein-Durrmeyer operators"};
    app.set_version_flag("--version", "bdm 1.0");

    const std::vector<std::string> keys{"command", "alpha",  "d",      "p",    "n-start",      "n-stop",
                                        "n-step",  "suite",  "lemma",  "seed", "out",          "format",
                                        "tol-identity", "tol-quadrature", "delta", "b"};
    std::map<std::string, std::string> raw;
    std::map<std::string, CLI::Option *> opts;
    const std::map<std::string, std::string> help{
        {"command", "verify-lemmas | verify-direct | verify-converse | verify-proposition | kfunc | norms | "
                    "report-all (default)"},
        {"alpha", "Jacobi exponents, comma list of d+1 values, each > -1 (default 0,0)"},
        {"d", "dimension of the simplex (default 1, or from --alpha)"},
        {"p", "comma list of p values: 1, 2, inf or a decimal >= 1"},
        {"n-start", "first n"},
        {"n-stop", "last n"},
        {"n-step", "step between consecutive n (linear ranges)"},
        {"suite", "function suite: full, poly, eigen, kink, smooth"},
        {"lemma", "verify-lemmas only: comma list of L1, L1-xi, MULT-ID, L3, L4, L5, L6, HAT, EQ24"},
        {"seed", "seed for randomized suites (default 2024)"},
        {"out", "report path, - for stdout (default)"},
        {"format", "csv (default) or json"},
        {"tol-identity", "tolerance for algebraic identities (default 1e-12)"},
        {"tol-quadrature", "tolerance for inequalities evaluated by quadrature (default 1e-9)"},
        {"delta", "Lemma l6 split parameter, 0 < delta <= 1 (default 0.25)"},
        {"b", "Lemma l6 range parameter, b > 0 (default 4)"},
    };
    for (const auto &k : keys) {
        opts[k] = app.add_option("--" + k, raw[k], help.at(k));
    }
    bool dyadic = false;
    auto *dyadic_opt = app.add_flag("--dyadic", dyadic, "use n = powers of two in [n-start, n-stop]");
    std::string config_path;
    app.add_option("--config", config_path, "JSON file mirroring the flags; flags override it");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfigError;
    }

    try {
        std::map<std::string, json> settings;
        if (!config_path.empty()) {
            settings = read_config_file(config_path);
        }
        for (const auto &k : keys) {
            if (opts[k]->count() > 0) {
                settings[k] = raw[k];
            }
        }
        if (dyadic_opt->count() > 0) {
            settings["dyadic"] = dyadic;
        }
        return run(interpret(settings));
    } catch (const bdm::NumericalDegeneracy &e) {
        std::cerr << "numerical degeneracy: " << e.what() << '\n';
        return kDegenerate;
    } catch (const std::invalid_argument &e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInternal;
    }
}
