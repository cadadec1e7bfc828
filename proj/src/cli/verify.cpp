#include "cli/verify.hpp"

#include <cmath>
#include <functional>

#include "casym/asymptotics.hpp"
#include "casym/cli.hpp"
#include "casym/exact_metrics.hpp"
#include "casym/mc_oracle.hpp"

namespace casym::cli {

namespace {

struct Checks {
    Table& table;
    bool& passed;
    std::string suite;

    void add(const std::string& check, double value, const std::string& target, bool ok) {
        table.rows.push_back({suite, check, value, target, ok ? "pass" : "FAIL"});
        passed = passed && ok;
    }
    void info(const std::string& check, double value) {
        table.rows.push_back({suite, check, value, "", "info"});
    }
};

std::string num(double v) { return format_double(v); }

void limit_suite(LimitMetric metric, const Setup& s, const RunOptions& o, Checks& out) {
    constexpr double kArgument = 6.0;
    constexpr double kSpanDb = 15.0;
    constexpr double kStepDb = 0.5;
    constexpr double kTailDb = 6.0;
    constexpr double kBand = 0.08;
    const auto& c = s.constellation;
    const double stop = rho_db_at_q_argument(c, kArgument);
    std::vector<double> grid;
    const int steps = static_cast<int>(kSpanDb / kStepDb);
    for (int i = 0; i <= steps; ++i) grid.push_back(stop - kSpanDb + i * kStepDb);

    LimitOptions lo;
    lo.band = kBand;
    lo.threads = o.threads;
    const auto report =
        verify_limit(metric, c, s.distribution, &s.labeling, grid, QuadratureSpec(o.nodes), lo);
    out.info("limit_constant", report.limit_constant);
    if (report.rows.empty()) {
        out.add("rows", 0.0, "> 0", false);
        return;
    }
    const auto& last = report.rows.back();
    for (const auto& row : report.rows)
        if (row.rho_db >= last.rho_db - kTailDb - 1e-9)
            out.info("ratio@" + num(row.rho_db) + "dB", row.ratio);
    out.add("ratio_at_q_argument_6", last.ratio, "[" + num(1 - kBand) + ", " + num(1 + kBand) + "]",
            std::abs(last.ratio - 1.0) <= kBand && last.q_argument > kArgument - 1e-9);
    out.add("monotone_last_6dB", report.monotone_tail(kTailDb) ? 1.0 : 0.0, "1",
            report.monotone_tail(kTailDb));
}

struct OracleCase {
    std::string name;
    Constellation c;
    InputDistribution p;
    Labeling lab;
    double rho;
};

std::vector<OracleCase> oracle_corpus() {
    std::vector<OracleCase> cases;
    cases.push_back({"ref4_rho9", Constellation({-4, -2, 2, 4}), InputDistribution({0.1, 0.2, 0.3, 0.4}),
                     nbc(2), 9.0});
    cases.push_back({"4pam_gc_10dB", mpam_unit_energy(2), InputDistribution::uniform(4), brgc(2),
                     db_to_linear(10.0)});
    cases.push_back({"8pam_agc_12dB", mpam_unit_energy(3), InputDistribution::uniform(8), agc(3),
                     db_to_linear(12.0)});
    cases.push_back({"skewed_low_snr", mpam_unit_energy(2), InputDistribution({0.97, 0.01, 0.01, 0.01}),
                     nbc(2), 0.01});
    cases.push_back({"irregular_3dB", Constellation({-1.3, -0.2, 0.5, 1.7}),
                     InputDistribution({0.3, 0.2, 0.1, 0.4}), brgc(2), db_to_linear(3.0)});
    return cases;
}

void oracle_suite(const RunOptions& o, Checks& out) {
    const QuadratureSpec quad(o.nodes);
    for (const auto& k : oracle_corpus()) {
        const SimConfig cfg{o.samples, o.seed, k.rho, o.threads};
        const auto ch = ChannelPoint::from_rho(k.rho);
        const auto compare = [&](const std::string& what, double exact, EstimateWithError mc) {
            const double z = mc.standard_error > 0 ? std::abs(mc.estimate - exact) / mc.standard_error
                                                   : (mc.estimate == exact ? 0.0 : INFINITY);
            out.add(k.name + "/" + what + "_z", z, "<= 4", z <= 4.0);
        };
        compare("sep", sep_exact(k.c, k.p, ch), simulate_sep(k.c, k.p, cfg));
        compare("bep", bep_exact(k.c, k.p, k.lab, ch), simulate_bep(k.c, k.p, k.lab, cfg));
        compare("mi", mi_exact(k.c, k.p, ch, quad), simulate_mi(k.c, k.p, cfg));
        compare("mmse", mmse_exact(k.c, k.p, ch, quad), simulate_mmse(k.c, k.p, cfg));
    }
}

void mi_mmse_suite(const Setup& s, const RunOptions& o, Checks& out) {
    constexpr double kStep = 1e-4;
    constexpr double kTol = 1e-5;
    const QuadratureSpec quad(o.nodes);
    const auto& c = s.constellation;
    const auto& p = s.distribution;
    for (double rho : {0.5, 1.0, 2.0, 5.0}) {
        const auto at = [](double r) { return ChannelPoint::from_rho(r); };
        const double dmi = (mi_exact(c, p, at(rho + kStep), quad) - mi_exact(c, p, at(rho - kStep), quad)) /
                           (2 * kStep);
        const double mi_err = std::abs(dmi - 0.5 * mmse_exact(c, p, at(rho), quad));
        out.add("mi_rho" + num(rho), mi_err, "<= " + num(kTol), mi_err <= kTol);
        const double dgmi = (bicm_gmi(c, p, s.labeling, at(rho + kStep), quad) -
                             bicm_gmi(c, p, s.labeling, at(rho - kStep), quad)) /
                            (2 * kStep);
        const double gmi_err = std::abs(dgmi - 0.5 * bicm_mmse(c, p, s.labeling, at(rho), quad));
        out.add("gmi_rho" + num(rho), gmi_err, "<= " + num(kTol), gmi_err <= kTol);
    }
}

using Suite = std::function<void(const Setup&, const RunOptions&, Checks&)>;

std::vector<std::pair<std::string, Suite>> suites() {
    std::vector<std::pair<std::string, Suite>> out;
    for (int t = 1; t <= 6; ++t) {
        const auto metric = *parse_limit_metric("theorem" + std::to_string(t));
        out.emplace_back("theorem" + std::to_string(t), [metric](const Setup& s, const RunOptions& o,
                                                                 Checks& c) { limit_suite(metric, s, o, c); });
    }
    out.emplace_back("oracle", [](const Setup&, const RunOptions& o, Checks& c) { oracle_suite(o, c); });
    out.emplace_back("mi-mmse", mi_mmse_suite);
    return out;
}

}  // namespace

std::vector<std::string> suite_names() {
    std::vector<std::string> names;
    for (const auto& [name, fn] : suites()) names.push_back(name);
    return names;
}

Table run_suite(const std::string& suite, const Setup& setup, const RunOptions& options,
                bool& passed) {
    Table t;
    t.header["tool"] = "casym";
    t.header["version"] = std::string(kVersion);
    t.header["command"] = "verify";
    t.header["suite"] = suite;
    t.header["seed"] = options.seed;
    t.header["nodes"] = options.nodes;
    t.header["samples"] = options.samples;
    t.header["setup"] = setup.describe();
    t.columns = {"suite", "check", "value", "target", "status"};
    passed = true;
    for (const auto& [name, fn] : suites()) {
        if (suite != "all" && suite != name) continue;
        Checks checks{t, passed, name};
        fn(setup, options, checks);
    }
    t.header["passed"] = passed;
    return t;
}

}  // namespace casym::cli
