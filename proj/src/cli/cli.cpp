#include "casym/cli.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "casym/asymptotics.hpp"
#include "casym/exact_metrics.hpp"
#include "cli/context.hpp"
#include "cli/verify.hpp"
#include "detail/parallel.hpp"

namespace casym::cli {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct SourceFlags {
    int mpam = 0;
    std::string constellation_file;
    bool uniform = false;
    std::string probs;
    std::string bitprobs;
    std::string labeling = "brgc";
    bool no_normalize = false;
};

struct OutputFlags {
    std::string out;
    std::string format = "csv";
};

std::vector<double> parse_list(const std::string& text, const std::string& flag) {
    std::vector<double> values;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = std::min(text.find(',', start), text.size());
        const char* first = text.data() + start;
        const char* last = text.data() + end;
        while (first < last && *first == ' ') ++first;
        double v = 0.0;
        const auto res = std::from_chars(first, last, v);
        if (res.ec != std::errc{} || res.ptr != last)
            throw UsageError(flag + ": cannot parse '" + std::string(first, last) + "' as a number");
        values.push_back(v);
        start = end + 1;
    }
    return values;
}

struct Grid {
    double start, stop, step;
    std::vector<double> points;
};

Grid parse_grid(const std::string& text) {
    std::vector<double> parts;
    std::string joined = text;
    for (char& ch : joined)
        if (ch == ':') ch = ',';
    parts = parse_list(joined, "--snr");
    if (parts.size() != 3) throw UsageError("--snr expects start:stop:step");
    Grid g{parts[0], parts[1], parts[2], {}};
    if (!(g.step > 0.0)) throw UsageError("--snr step must be positive");
    if (g.stop < g.start) throw UsageError("--snr stop must not be below start");
    const auto count = static_cast<std::size_t>(std::floor((g.stop - g.start) / g.step + 1e-9)) + 1;
    for (std::size_t i = 0; i < count; ++i) g.points.push_back(g.start + static_cast<double>(i) * g.step);
    return g;
}

ordered_json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    try {
        return ordered_json::parse(in);
    } catch (const ordered_json::exception& e) {
        throw UsageError(path + ": " + e.what());
    }
}

Labeling resolve_labeling(const std::string& name, int bits) {
    if (name == "nbc") return nbc(bits);
    if (name == "brgc" || name == "gc") return brgc(bits);
    if (name == "agc") return agc(bits);
    if (!std::filesystem::exists(name))
        throw UsageError("--labeling: expected nbc, brgc, gc, agc or an existing file, got '" + name + "'");
    const auto doc = read_json_file(name);
    try {
        Labeling lab(doc.get<std::vector<int>>());
        if (lab.bits() != bits) throw UsageError(name + ": labeling size does not match the constellation");
        return lab;
    } catch (const ordered_json::exception& e) {
        throw UsageError(name + ": expected a JSON integer array");
    }
}

Setup resolve_setup(const SourceFlags& f) {
    std::vector<double> points;
    std::optional<std::vector<double>> file_probs;
    if (!f.constellation_file.empty()) {
        const auto doc = read_json_file(f.constellation_file);
        try {
            points = doc.at("points").get<std::vector<double>>();
            if (doc.contains("probs")) file_probs = doc.at("probs").get<std::vector<double>>();
        } catch (const ordered_json::exception& e) {
            throw UsageError(f.constellation_file + ": expected {\"points\": [...], \"probs\": [...]}");
        }
    } else {
        const int m = f.mpam > 0 ? f.mpam : 2;
        if (m > 12) throw UsageError("--mpam must be between 1 and 12");
        const auto pam = mpam(m, 1.0);
        points.assign(pam.points().begin(), pam.points().end());
    }
    try {
        Constellation c(points);
        Labeling lab = resolve_labeling(f.labeling, c.bits());
        std::optional<InputDistribution> p;
        if (!f.bitprobs.empty())
            p = induced_distribution(lab, BitProbabilities(parse_list(f.bitprobs, "--bitprobs")));
        else if (!f.probs.empty())
            p = InputDistribution(parse_list(f.probs, "--probs"));
        else if (!f.uniform && file_probs)
            p = InputDistribution(*file_probs);
        else
            p = InputDistribution::uniform(c.size());
        if (p->size() != c.size()) throw UsageError("distribution length does not match the constellation");
        if (!f.no_normalize) c = normalize_energy(c, *p);
        std::string name = f.labeling == "gc" ? "brgc" : f.labeling;
        return Setup{std::move(c), std::move(*p), std::move(lab), std::move(name), !f.no_normalize};
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

void add_source_flags(CLI::App* sub, SourceFlags& f, bool with_distribution) {
    auto* mp = sub->add_option("--mpam", f.mpam, "Built-in M-PAM with m bits per symbol")->check(CLI::Range(1, 12));
    auto* file = sub->add_option("--constellation", f.constellation_file,
                                 "JSON file {\"points\": [..], \"probs\": [..]}");
    mp->excludes(file);
    if (with_distribution) {
        auto* u = sub->add_flag("--uniform", f.uniform, "Uniform input distribution");
        auto* p = sub->add_option("--probs", f.probs, "Comma-separated symbol probabilities");
        auto* b = sub->add_option("--bitprobs", f.bitprobs,
                                  "Comma-separated P(Q_k = 0), inducing the symbol distribution");
        u->excludes(p)->excludes(b);
        p->excludes(b);
        sub->add_option("--labeling", f.labeling, "nbc, brgc (alias gc), agc, or a JSON array file");
        sub->add_flag("--no-normalize", f.no_normalize, "Keep raw coordinates instead of E_s = 1");
    }
}

void add_output_flags(CLI::App* sub, OutputFlags& o) {
    sub->add_option("--out", o.out, "Output path (default stdout)");
    sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

ordered_json base_header(const std::string& command, const RunOptions& o) {
    ordered_json h;
    h["tool"] = "casym";
    h["version"] = std::string(kVersion);
    h["command"] = command;
    h["seed"] = o.seed;
    h["nodes"] = o.nodes;
    return h;
}

// ---- curve -----------------------------------------------------------------

enum class CurveKind { Mi, Gmi, Limit, Kmi, Kmmse };

struct CurveMetric {
    CurveKind kind;
    LimitMetric limit;
};

std::optional<CurveMetric> parse_curve_metric(const std::string& name) {
    if (name == "mi") return CurveMetric{CurveKind::Mi, LimitMetric::ConditionalEntropy};
    if (name == "gmi") return CurveMetric{CurveKind::Gmi, LimitMetric::GmiGap};
    if (name == "kmi") return CurveMetric{CurveKind::Kmi, LimitMetric::GmiGap};
    if (name == "kmmse") return CurveMetric{CurveKind::Kmmse, LimitMetric::BicmMmse};
    if (name == "gap") return CurveMetric{CurveKind::Limit, LimitMetric::ConditionalEntropy};
    if (auto m = parse_limit_metric(name)) return CurveMetric{CurveKind::Limit, *m};
    return std::nullopt;
}

struct CurvePoint {
    double value = 0.0;
    double log_exact = 0.0;
    double log_asym = 0.0;
    bool valid = true;
};

Table cmd_curve(const Setup& s, const std::string& metric_name, const Grid& grid,
                const RunOptions& o, std::ostream& err) {
    const auto metric = parse_curve_metric(metric_name);
    if (!metric) throw UsageError("unknown --metric '" + metric_name + "'");
    const QuadratureSpec quad(o.nodes);
    const auto& c = s.constellation;
    const auto& p = s.distribution;
    const Labeling* lab = &s.labeling;
    const double r_limit = r_value(c, p, s.labeling);

    std::vector<CurvePoint> points(grid.points.size());
    detail::parallel_for(points.size(), o.threads, [&](std::size_t i) {
        const auto ch = ChannelPoint::from_db(grid.points[i]);
        CurvePoint pt;
        switch (metric->kind) {
            case CurveKind::Mi:
                pt.value = mi_exact(c, p, ch, quad);
                break;
            case CurveKind::Gmi:
                pt.value = bicm_gmi(c, p, s.labeling, ch, quad);
                break;
            case CurveKind::Kmi:
            case CurveKind::Kmmse: {
                const auto k = metric->kind == CurveKind::Kmi ? k_mi(c, p, s.labeling, ch, quad)
                                                              : k_mmse(c, p, s.labeling, ch, quad);
                pt.valid = k.has_value() && *k > 0.0;
                pt.log_exact = pt.valid ? std::log(*k) : -kInf;
                pt.log_asym = std::log(r_limit);
                points[i] = pt;
                return;
            }
            case CurveKind::Limit:
                break;
        }
        pt.log_exact = log_exact_metric(metric->limit, c, p, lab, ch, quad);
        pt.log_asym = log_asymptotic_metric(metric->limit, c, p, lab, ch);
        pt.valid = std::isfinite(pt.log_exact);
        points[i] = pt;
    });

    Table t;
    t.header = base_header("curve", o);
    t.header["metric"] = metric_name;
    t.header["snr_db"] = {{"start", grid.start}, {"stop", grid.stop}, {"step", grid.step}};
    t.header["setup"] = s.describe();
    const bool is_k = metric->kind == CurveKind::Kmi || metric->kind == CurveKind::Kmmse;
    t.header["limit_constant"] = is_k ? r_limit : limit_coefficient(metric->limit, c, p, lab);
    if (!is_k) t.header["q_argument"] = "sqrt(rho) d / 2";

    switch (metric->kind) {
        case CurveKind::Mi: t.columns = {"rho_db", "mi", "gap", "asymptotic", "ratio"}; break;
        case CurveKind::Gmi: t.columns = {"rho_db", "gmi", "gap", "asymptotic", "ratio"}; break;
        default: t.columns = {"rho_db", "exact", "asymptotic", "ratio"}; break;
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& pt = points[i];
        if (!pt.valid) {
            err << "warning: exact value underflows at " << format_double(grid.points[i])
                << " dB; curve truncated after " << i << " rows\n";
            break;
        }
        std::vector<ordered_json> row{grid.points[i]};
        if (metric->kind == CurveKind::Mi || metric->kind == CurveKind::Gmi) row.emplace_back(pt.value);
        row.emplace_back(std::exp(pt.log_exact));
        row.emplace_back(std::exp(pt.log_asym));
        row.emplace_back(std::exp(pt.log_exact - pt.log_asym));
        t.rows.push_back(std::move(row));
    }
    return t;
}

// ---- classify / sample -----------------------------------------------------

std::string join_codes(std::span<const int> codes) {
    std::string s;
    for (std::size_t i = 0; i < codes.size(); ++i) s += (i ? " " : "") + std::to_string(codes[i]);
    return s;
}

Table cmd_classify(const Setup& s, const RunOptions& o, std::ostream& err) {
    const auto& c = s.constellation;
    if (c.size() > kMaxEnumerationSize)
        throw UsageError("classify enumerates all labelings and supports M <= 8; use sample");
    const ClassTable table = enumerate_classes(c);
    const int bound = class_count_bound(c);
    Table t;
    t.header = base_header("classify", o);
    t.header["points"] = std::vector<double>(c.points().begin(), c.points().end());
    t.header["A"] = table.a;
    t.header["labelings"] = table.total;
    t.header["classes"] = table.by_c.size();
    t.header["class_count_bound"] = bound;
    t.columns = {"C", "R", "count", "is_gray_class", "representative"};
    for (const auto& [cv, entry] : table.by_c)
        t.rows.push_back({cv, table.r_of(cv).str(), entry.count, cv == table.a,
                          join_codes(entry.representative)});
    if (static_cast<int>(table.by_c.size()) > bound)
        err << "error: " << table.by_c.size() << " classes exceed the bound " << bound << '\n';
    return t;
}

Table cmd_sample(const Setup& s, const RunOptions& o) {
    const auto& c = s.constellation;
    const ClassTable table = sample_classes(c, o.samples, o.seed, o.threads);
    const int m = c.bits();
    const auto ref = [&](const Labeling& lab) {
        const int cv = c_constant(c, lab);
        return ordered_json{{"C", cv}, {"R", Ratio::of(cv, table.a).str()}};
    };
    Table t;
    t.header = base_header("sample", o);
    t.header["points"] = std::vector<double>(c.points().begin(), c.points().end());
    t.header["samples"] = o.samples;
    t.header["A"] = table.a;
    t.header["classes_observed"] = table.by_c.size();
    t.header["class_count_bound"] = class_count_bound(c);
    t.header["reference"] = {{"gray", ref(brgc(m))}, {"nbc", ref(nbc(m))}, {"agc", ref(agc(m))}};
    t.columns = {"R", "count", "frequency"};
    for (const auto& [cv, entry] : table.by_c)
        t.rows.push_back({table.r_of(cv).value(), entry.count,
                          static_cast<double>(entry.count) / static_cast<double>(table.total)});
    return t;
}

void emit(const std::string& text, const OutputFlags& o, std::ostream& out) {
    if (o.out.empty()) {
        out << text;
        return;
    }
    std::ofstream file(o.out, std::ios::binary);
    if (!file) throw IoError("cannot open " + o.out + " for writing");
    file << text;
    if (!file) throw IoError("failed writing " + o.out);
}

}  // namespace

ordered_json Setup::describe() const {
    ordered_json j;
    j["points"] = std::vector<double>(constellation.points().begin(), constellation.points().end());
    j["probs"] = std::vector<double>(distribution.probs().begin(), distribution.probs().end());
    j["normalized"] = normalized;
    j["labeling"] = {{"name", labeling_name},
                     {"codes", std::vector<int>(labeling.codes().begin(), labeling.codes().end())}};
    return j;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact and high-SNR asymptotic metrics for 1-D constellations and binary labelings",
                 "casym"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    SourceFlags src;
    OutputFlags dst;
    RunOptions opts;
    std::string metric, snr = "0:30:0.5", generator, suite;
    int gen_bits = 0;

    auto* curve = app.add_subcommand("curve", "Sweep an SNR grid: exact value, asymptote and ratio");
    add_source_flags(curve, src, true);
    add_output_flags(curve, dst);
    curve->add_option("--metric", metric,
                      "mi, gmi, gap, conditional_entropy, mmse, sep, gmi_gap, bicm_mmse, bep, kmi, kmmse")
        ->required();
    curve->add_option("--snr", snr, "start:stop:step in dB");
    curve->add_option("--nodes", opts.nodes, "Gauss-Hermite nodes")->check(CLI::Range(2, 4000));
    curve->add_option("--seed", opts.seed, "Recorded in the header");
    curve->add_option("--threads", opts.threads, "Worker threads (0 = all cores)");

    auto* classify = app.add_subcommand("classify", "Exhaustive classes of C over all labelings (M <= 8)");
    add_source_flags(classify, src, false);
    add_output_flags(classify, dst);

    auto* sample = app.add_subcommand("sample", "Histogram of R over random labelings");
    add_source_flags(sample, src, false);
    add_output_flags(sample, dst);
    sample->add_option("--samples,-n", opts.samples, "Number of labelings")->check(CLI::PositiveNumber);
    sample->add_option("--seed", opts.seed, "Master seed");
    sample->add_option("--threads", opts.threads, "Worker threads (0 = all cores)");

    auto* labeling = app.add_subcommand("labeling", "Print a generated labeling as a JSON array");
    labeling->add_option("generator", generator, "nbc, brgc, gc or agc")
        ->required()
        ->check(CLI::IsMember({"nbc", "brgc", "gc", "agc"}));
    labeling->add_option("m", gen_bits, "Bits per symbol")->required()->check(CLI::Range(1, 20));
    labeling->add_option("--out", dst.out, "Output path (default stdout)");

    auto* verify = app.add_subcommand("verify", "Run a verification suite and print a per-check table");
    verify->add_option("suite", suite, "Suite name")->required();
    add_source_flags(verify, src, true);
    add_output_flags(verify, dst);
    verify->add_option("--nodes", opts.nodes, "Gauss-Hermite nodes")->check(CLI::Range(2, 4000));
    verify->add_option("--seed", opts.seed, "Monte Carlo seed");
    verify->add_option("--samples,-n", opts.samples, "Monte Carlo samples")->check(CLI::PositiveNumber);
    verify->add_option("--threads", opts.threads, "Worker threads (0 = all cores)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        std::ostringstream buf;
        int status = kOk;
        if (*labeling) {
            const Labeling lab = generator == "nbc" ? nbc(gen_bits)
                                 : generator == "agc" ? agc(gen_bits)
                                                      : brgc(gen_bits);
            buf << ordered_json(std::vector<int>(lab.codes().begin(), lab.codes().end())).dump() << '\n';
        } else if (*curve) {
            const Grid grid = parse_grid(snr);
            cmd_curve(resolve_setup(src), metric, grid, opts, err).write(buf, dst.format);
        } else if (*classify) {
            const Table t = cmd_classify(resolve_setup(src), opts, err);
            t.write(buf, dst.format);
            if (t.header["classes"].get<int>() > t.header["class_count_bound"].get<int>())
                status = kVerificationFailed;
        } else if (*sample) {
            cmd_sample(resolve_setup(src), opts).write(buf, dst.format);
        } else if (*verify) {
            const auto names = suite_names();
            if (suite != "all" && std::find(names.begin(), names.end(), suite) == names.end())
                throw UsageError("unknown suite '" + suite + "'");
            bool passed = true;
            run_suite(suite, resolve_setup(src), opts, passed).write(buf, dst.format);
            if (!passed) status = kVerificationFailed;
        }
        emit(buf.str(), dst, out);
        return status;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kIoError;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
}

}  // namespace casym::cli
