// iatpcs command line: generate censored samples, analyze datasets, run
// replication studies. Links the shared library through its C API.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "iatpcs.h"

namespace {

[[noreturn]] void die(int status, const std::string& message) {
    std::cerr << "iatpcs: " << message << "\n";
    std::exit(status == IATPCS_OK ? IATPCS_E_INTERNAL : status);
}

void check(int status) {
    if (status != IATPCS_OK) die(status, iatpcs_last_error());
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) die(IATPCS_E_IO, "cannot open '" + path + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) die(IATPCS_E_IO, "cannot open '" + path + "' for writing");
    out << content;
    if (!out) die(IATPCS_E_IO, "failed writing '" + path + "'");
}

std::string fmt6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("IATPCS_SEED")) {
        char* end = nullptr;
        const std::uint64_t v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0') return v;
        die(IATPCS_E_USAGE, std::string("IATPCS_SEED is not a valid integer: '") + env + "'");
    }
    return 20260810;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = text.find(sep, start);
        if (pos == std::string::npos) {
            parts.push_back(text.substr(start));
            return parts;
        }
        parts.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
}

int scheme_code(const std::string& name) {
    if (name == "I" || name == "1") return IATPCS_SCHEME_I;
    if (name == "II" || name == "2") return IATPCS_SCHEME_II;
    if (name == "III" || name == "3") return IATPCS_SCHEME_III;
    die(IATPCS_E_USAGE, "unknown scheme '" + name + "' (use I, II or III)");
}

int a_mode_code(const std::string& name) {
    if (name == "paper") return IATPCS_A_PAPER;
    if (name == "corrected") return IATPCS_A_CORRECTED;
    die(IATPCS_E_USAGE, "unknown A mode '" + name + "' (use paper or corrected)");
}

const char* case_name(int tag) {
    switch (tag) {
        case IATPCS_CASE_I:
            return "I";
        case IATPCS_CASE_II:
            return "II";
        case IATPCS_CASE_III:
            return "III";
    }
    return "?";
}

// Shared plan-building flags. Either --scheme or an explicit --removals list.
struct PlanArgs {
    int n = 0;
    int m = 0;
    std::string scheme;
    std::string removals;
    double t1 = 0.0;
    double t2 = 0.0;

    iatpcs_plan* build() const {
        iatpcs_plan* plan = nullptr;
        if (!removals.empty()) {
            std::vector<int> r;
            for (const auto& field : split(removals, ',')) {
                char* end = nullptr;
                const long v = std::strtol(field.c_str(), &end, 10);
                if (end == field.c_str() || *end != '\0') {
                    die(IATPCS_E_USAGE, "bad removal entry '" + field + "'");
                }
                r.push_back(static_cast<int>(v));
            }
            if (static_cast<int>(r.size()) != m) {
                die(IATPCS_E_VALIDATION, "--removals must list exactly m=" + std::to_string(m) +
                                             " entries, got " + std::to_string(r.size()));
            }
            check(iatpcs_plan_new(n, m, r.data(), t1, t2, &plan));
        } else {
            check(iatpcs_plan_scheme(scheme_code(scheme.empty() ? "I" : scheme), n, m, t1, t2,
                                     &plan));
        }
        return plan;
    }
};

void add_plan_flags(CLI::App* cmd, PlanArgs& args, bool design_required) {
    auto* n = cmd->add_option("--n", args.n, "Units on test");
    auto* m = cmd->add_option("--m", args.m, "Target number of failures");
    cmd->add_option("--scheme", args.scheme, "Removal scheme: I, II or III");
    cmd->add_option("--removals", args.removals, "Explicit comma-separated removal vector");
    cmd->add_option("--t1", args.t1, "First threshold")->required();
    cmd->add_option("--t2", args.t2, "Second threshold")->required();
    if (design_required) {
        n->required();
        m->required();
    }
}

struct PriorArgs {
    bool prior0 = false;
    std::vector<std::string> informative;  // "label:a,b,c,d" or "a,b,c,d"

    // label/value pairs in declaration order; Prior0 first when requested,
    // and used as the default when nothing is specified.
    std::vector<std::pair<std::string, iatpcs_gamma_prior>> resolve() const {
        std::vector<std::pair<std::string, iatpcs_gamma_prior>> priors;
        if (prior0 || informative.empty()) priors.push_back({"Prior0", {0, 0, 0, 0}});
        int counter = 0;
        for (const auto& spec : informative) {
            std::string label = "Prior" + std::string(1, static_cast<char>('A' + counter));
            std::string values = spec;
            const std::size_t colon = spec.find(':');
            if (colon != std::string::npos) {
                label = spec.substr(0, colon);
                values = spec.substr(colon + 1);
            }
            const auto fields = split(values, ',');
            if (fields.size() != 4) {
                die(IATPCS_E_USAGE, "--prior expects 'label:a,b,c,d' or 'a,b,c,d', got '" + spec + "'");
            }
            iatpcs_gamma_prior prior;
            double* slots[4] = {&prior.a, &prior.b, &prior.c, &prior.d};
            for (int i = 0; i < 4; ++i) {
                char* end = nullptr;
                *slots[i] = std::strtod(fields[i].c_str(), &end);
                if (end == fields[i].c_str() || *end != '\0') {
                    die(IATPCS_E_USAGE, "bad prior value '" + fields[i] + "'");
                }
            }
            priors.push_back({label, prior});
            ++counter;
        }
        return priors;
    }
};

void add_prior_flags(CLI::App* cmd, PriorArgs& args) {
    cmd->add_flag("--prior0", args.prior0, "Use the non-informative prior (a=b=c=d=0)");
    cmd->add_option("--prior", args.informative,
                    "Informative gamma prior 'label:a,b,c,d' (repeatable)");
}

struct LossArgs {
    std::vector<double> linex;
    std::vector<double> gelf;

    std::vector<iatpcs_loss> resolve() const {
        std::vector<iatpcs_loss> losses = {{IATPCS_LOSS_SELF, 0.0}};
        for (double p : linex) losses.push_back({IATPCS_LOSS_LINEX, p});
        for (double q : gelf) losses.push_back({IATPCS_LOSS_GELF, q});
        return losses;
    }
};

void add_loss_flags(CLI::App* cmd, LossArgs& args) {
    cmd->add_option("--linex", args.linex, "Add a LINEX loss with parameter p (repeatable)");
    cmd->add_option("--gelf", args.gelf, "Add a GELF loss with parameter q (repeatable)");
}

std::string loss_name(const iatpcs_loss& loss) {
    char buf[48];
    switch (loss.kind) {
        case IATPCS_LOSS_LINEX:
            std::snprintf(buf, sizeof(buf), "LINEX(p=%g)", loss.param);
            return buf;
        case IATPCS_LOSS_GELF:
            std::snprintf(buf, sizeof(buf), "GELF(q=%g)", loss.param);
            return buf;
        default:
            return "SELF";
    }
}

/* ---------------- generate ---------------- */

struct GenerateArgs {
    PlanArgs plan;
    double tau1 = 0.0, tau2 = 0.0;
    std::uint64_t seed = 0;
    std::string out_path;
};

int cmd_generate(const GenerateArgs& args) {
    iatpcs_plan* plan = args.plan.build();
    iatpcs_sample* sample = nullptr;
    check(iatpcs_generate(plan, args.tau1, args.tau2, args.seed, &sample));
    char* csv = nullptr;
    check(iatpcs_sample_to_csv(sample, &csv));
    if (args.out_path.empty()) {
        std::cout << csv;
    } else {
        write_file(args.out_path, csv);
    }
    iatpcs_string_free(csv);
    iatpcs_sample_free(sample);
    iatpcs_plan_free(plan);
    return 0;
}

/* ---------------- analyze ---------------- */

struct AnalyzeArgs {
    std::string input_path;
    bool hoel = false;
    PlanArgs plan;
    PriorArgs priors;
    LossArgs losses;
    double gamma = 0.05;
    std::string a_mode = "paper";
    int hpd_draws = 5000;
    std::uint64_t seed = 0;
};

int cmd_analyze(const AnalyzeArgs& args) {
    iatpcs_dataset* dataset = nullptr;
    iatpcs_plan* plan = nullptr;
    int plan_n = args.plan.n, plan_m = args.plan.m;
    if (args.hoel) {
        if (args.plan.n != 0 || args.plan.m != 0 || !args.plan.scheme.empty() ||
            !args.plan.removals.empty()) {
            die(IATPCS_E_USAGE, "--hoel fixes the design; do not pass --n/--m/--scheme/--removals");
        }
        check(iatpcs_dataset_hoel(&dataset));
        std::vector<int> removals(25, 2);
        removals[24] = 4;
        check(iatpcs_plan_new(77, 25, removals.data(), args.plan.t1, args.plan.t2, &plan));
        plan_n = 77;
        plan_m = 25;
    } else {
        if (args.input_path.empty()) die(IATPCS_E_USAGE, "analyze needs --input FILE or --hoel");
        if (args.plan.n <= 0 || args.plan.m <= 0) {
            die(IATPCS_E_USAGE, "analyze --input needs the design flags --n and --m");
        }
        check(iatpcs_dataset_parse(read_file(args.input_path).c_str(), &dataset));
        plan = args.plan.build();
    }

    iatpcs_sample* sample = nullptr;
    check(iatpcs_replay(dataset, plan, &sample));

    int n_records = 0;
    check(iatpcs_dataset_size(dataset, &n_records));
    int d = 0, d1 = 0, d2 = 0, tag = 0, k1 = 0, k2 = 0, r_star = 0;
    double t_star = 0.0;
    check(iatpcs_sample_size(sample, &d));
    check(iatpcs_sample_counts(sample, &d1, &d2));
    check(iatpcs_sample_case(sample, &tag, &k1, &k2));
    check(iatpcs_sample_termination(sample, &r_star, &t_star));

    const int a_mode = a_mode_code(args.a_mode);
    double a_stat = 0.0;
    check(iatpcs_stat_a(sample, a_mode, &a_stat));

    std::cout << "dataset: " << (args.hoel ? "hoel (embedded)" : args.input_path) << ", "
              << n_records << " records\n";
    std::cout << "plan: n=" << plan_n << " m=" << plan_m << " t1=" << fmt6(args.plan.t1)
              << " t2=" << fmt6(args.plan.t2) << " a_mode=" << args.a_mode << "\n";
    std::cout << "case=" << case_name(tag) << " k1=" << k1 << " k2=" << k2 << "\n";
    std::cout << "D=" << d << " D1=" << d1 << " D2=" << d2 << " R_star=" << r_star
              << " T_star=" << fmt6(t_star) << "\n";
    std::cout << "A=" << fmt6(a_stat) << "\n";
    if (args.hoel) {
        std::cout << "note: published summaries of this dataset report D1=7, D2=14 at thresholds "
                     "(450, 600) and D1=6, D2=14 at (350, 530); the counts above follow from the "
                     "records as listed.\n";
    }

    iatpcs_mle_result fit;
    check(iatpcs_mle(sample, a_mode, &fit));
    iatpcs_interval ci1, ci2;
    check(iatpcs_asymptotic_ci(&fit, args.gamma, &ci1, &ci2));
    const double level_pct = 100.0 * (1.0 - args.gamma);
    std::cout << "MLE: tau1=" << fmt6(fit.tau1_hat) << " tau2=" << fmt6(fit.tau2_hat)
              << " (var1=" << fmt6(fit.var1) << ", var2=" << fmt6(fit.var2) << ")\n";
    std::cout << "ACI " << fmt6(level_pct) << "%: tau1=(" << fmt6(ci1.lower) << ", "
              << fmt6(ci1.upper) << ") tau2=(" << fmt6(ci2.lower) << ", " << fmt6(ci2.upper)
              << ")\n";

    const auto priors = args.priors.resolve();
    const auto losses = args.losses.resolve();
    std::uint64_t hpd_seed = args.seed;
    for (const auto& [label, prior] : priors) {
        iatpcs_posterior post;
        check(iatpcs_posterior_params(sample, &prior, a_mode, &post));
        std::cout << label << ": posterior Gamma(" << fmt6(post.shape1) << ", " << fmt6(post.rate1)
                  << ") x Gamma(" << fmt6(post.shape2) << ", " << fmt6(post.rate2) << ")\n";
        for (const auto& loss : losses) {
            double e1 = 0.0, e2 = 0.0;
            int status = IATPCS_OK;
            switch (loss.kind) {
                case IATPCS_LOSS_LINEX:
                    status = iatpcs_estimate_linex(&post, loss.param, &e1, &e2);
                    break;
                case IATPCS_LOSS_GELF:
                    status = iatpcs_estimate_gelf(&post, loss.param, &e1, &e2);
                    break;
                default:
                    status = iatpcs_estimate_self(&post, &e1, &e2);
                    break;
            }
            check(status);
            std::cout << "  " << loss_name(loss) << ": tau1=" << fmt6(e1) << " tau2=" << fmt6(e2)
                      << "\n";
        }
        iatpcs_interval h1, h2;
        check(iatpcs_posterior_hpd(&post, args.hpd_draws, args.gamma, hpd_seed, &h1, &h2));
        ++hpd_seed;
        std::cout << "  HPD " << fmt6(level_pct) << "%: tau1=(" << fmt6(h1.lower) << ", "
                  << fmt6(h1.upper) << ") tau2=(" << fmt6(h2.lower) << ", " << fmt6(h2.upper)
                  << ")\n";
    }

    iatpcs_sample_free(sample);
    iatpcs_plan_free(plan);
    iatpcs_dataset_free(dataset);
    return 0;
}

/* ---------------- simulate / tables ---------------- */

struct SimulateArgs {
    std::string pairs;    // "30:10,30:15"
    std::string schemes;  // "I,II,III"
    double t1 = 0.0, t2 = 0.0;
    double tau1 = 0.0, tau2 = 0.0;
    int reps = 10000;
    PriorArgs priors;
    LossArgs losses;
    double gamma = 0.05;
    std::string a_mode = "paper";
    int hpd_draws = 5000;
    std::uint64_t seed = 0;
    int threads = 0;
    std::string out_prefix = "sim";
};

struct CellSpec {
    int n, m;
    std::string scheme;
    double t1, t2, tau1, tau2;
};

struct TableSink {
    std::string points_csv, intervals_csv;
    std::string points_md, intervals_md;
    bool first = true;

    void add_heading(const CellSpec& cell) {
        std::ostringstream head;
        head << "## n=" << cell.n << " m=" << cell.m << " scheme=" << cell.scheme
             << " T=(" << fmt6(cell.t1) << ", " << fmt6(cell.t2) << ") tau=(" << fmt6(cell.tau1)
             << ", " << fmt6(cell.tau2) << ")\n\n";
        points_md += head.str();
        intervals_md += head.str();
    }

    void add(const iatpcs_sim* sim) {
        char* text = nullptr;
        check(iatpcs_sim_render(sim, IATPCS_TABLE_POINTS, IATPCS_FORMAT_CSV, first ? 1 : 0, &text));
        points_csv += text;
        iatpcs_string_free(text);
        check(iatpcs_sim_render(sim, IATPCS_TABLE_INTERVALS, IATPCS_FORMAT_CSV, first ? 1 : 0,
                                &text));
        intervals_csv += text;
        iatpcs_string_free(text);
        check(iatpcs_sim_render(sim, IATPCS_TABLE_POINTS, IATPCS_FORMAT_MARKDOWN, 1, &text));
        points_md += text;
        points_md += '\n';
        iatpcs_string_free(text);
        check(iatpcs_sim_render(sim, IATPCS_TABLE_INTERVALS, IATPCS_FORMAT_MARKDOWN, 1, &text));
        intervals_md += text;
        intervals_md += '\n';
        iatpcs_string_free(text);
        first = false;
    }

    void add_error(const CellSpec& cell, const std::string& message) {
        std::ostringstream line;
        line << "# error: n=" << cell.n << ",m=" << cell.m << ",scheme=" << cell.scheme << ": "
             << message << "\n";
        points_csv += line.str();
        intervals_csv += line.str();
        points_md += "(error: " + message + ")\n\n";
        intervals_md += "(error: " + message + ")\n\n";
    }

    void write(const std::string& prefix) {
        write_file(prefix + "_points.csv", points_csv);
        write_file(prefix + "_intervals.csv", intervals_csv);
        write_file(prefix + "_points.md", points_md);
        write_file(prefix + "_intervals.md", intervals_md);
    }
};

// Runs one simulation cell; returns false (and the error message) if the
// design is infeasible for this scheme.
bool run_cell(const CellSpec& cell, const SimulateArgs& args,
              const std::vector<std::pair<std::string, iatpcs_gamma_prior>>& priors,
              const std::vector<iatpcs_loss>& losses, TableSink& sink, std::string* error) {
    iatpcs_plan* plan = nullptr;
    int status = iatpcs_plan_scheme(scheme_code(cell.scheme), cell.n, cell.m, cell.t1, cell.t2,
                                    &plan);
    if (status != IATPCS_OK) {
        *error = iatpcs_last_error();
        return false;
    }

    std::vector<iatpcs_gamma_prior> prior_values;
    std::vector<const char*> prior_labels;
    for (const auto& [label, prior] : priors) {
        prior_values.push_back(prior);
        prior_labels.push_back(label.c_str());
    }

    iatpcs_sim* sim = nullptr;
    status = iatpcs_simulate(plan, cell.scheme.c_str(), cell.tau1, cell.tau2, args.reps,
                             prior_values.data(), prior_labels.data(),
                             static_cast<int>(prior_values.size()), losses.data(),
                             static_cast<int>(losses.size()), 1.0 - args.gamma, args.hpd_draws,
                             args.seed, a_mode_code(args.a_mode), args.threads, &sim);
    iatpcs_plan_free(plan);
    if (status != IATPCS_OK) {
        *error = iatpcs_last_error();
        return false;
    }

    long skipped = 0;
    check(iatpcs_sim_skipped(sim, &skipped));
    sink.add_heading(cell);
    sink.add(sim);
    std::cout << "cell n=" << cell.n << " m=" << cell.m << " scheme=" << cell.scheme << " T=("
              << fmt6(cell.t1) << ", " << fmt6(cell.t2) << ") tau=(" << fmt6(cell.tau1) << ", "
              << fmt6(cell.tau2) << "): done, skipped=" << skipped << "\n";
    iatpcs_sim_free(sim);
    return true;
}

int cmd_simulate(const SimulateArgs& args) {
    if (args.reps < 1) die(IATPCS_E_VALIDATION, "--reps must be >= 1");
    std::vector<std::pair<int, int>> pairs;
    for (const auto& item : split(args.pairs, ',')) {
        const auto nm = split(item, ':');
        if (nm.size() != 2) die(IATPCS_E_USAGE, "--pairs expects 'n:m' entries, got '" + item + "'");
        auto to_int = [&](const std::string& s) {
            char* end = nullptr;
            const long v = std::strtol(s.c_str(), &end, 10);
            if (end == s.c_str() || *end != '\0') {
                die(IATPCS_E_USAGE, "--pairs expects integers, got '" + item + "'");
            }
            return static_cast<int>(v);
        };
        pairs.push_back({to_int(nm[0]), to_int(nm[1])});
    }
    const auto schemes = split(args.schemes, ',');
    const auto priors = args.priors.resolve();
    const auto losses = args.losses.resolve();

    TableSink sink;
    for (const auto& [n, m] : pairs) {
        for (const auto& scheme : schemes) {
            const CellSpec cell{n, m, scheme, args.t1, args.t2, args.tau1, args.tau2};
            std::string error;
            if (!run_cell(cell, args, priors, losses, sink, &error)) {
                sink.add_heading(cell);
                sink.add_error(cell, error);
                std::cout << "cell n=" << n << " m=" << m << " scheme=" << scheme
                          << ": error: " << error << "\n";
            }
        }
    }
    sink.write(args.out_prefix);
    return 0;
}

int cmd_tables(SimulateArgs args) {
    if (args.reps < 1) die(IATPCS_E_VALIDATION, "--reps must be >= 1");
    const std::vector<std::pair<int, int>> pairs = {{30, 10}, {30, 15}, {40, 10}, {40, 20}};
    const std::vector<std::string> schemes = {"I", "II", "III"};
    const std::vector<std::pair<double, double>> thresholds = {{0.5, 1.0}, {1.0, 1.5}};

    struct RateSetting {
        double tau1, tau2;
        std::vector<std::pair<std::string, iatpcs_gamma_prior>> priors;
    };
    const std::vector<RateSetting> settings = {
        {0.6, 0.8, {{"Prior0", {0, 0, 0, 0}}, {"PriorI", {3, 5, 4, 5}}}},
        {1.0, 1.5, {{"Prior0", {0, 0, 0, 0}}, {"PriorII", {2, 2, 3, 3}}}},
    };
    LossArgs losses;
    losses.linex = {-0.05, 0.5};
    losses.gelf = {-0.05, 0.5};
    const auto loss_list = losses.resolve();

    TableSink sink;
    for (const auto& setting : settings) {
        for (const auto& [t1, t2] : thresholds) {
            for (const auto& [n, m] : pairs) {
                for (const auto& scheme : schemes) {
                    const CellSpec cell{n, m, scheme, t1, t2, setting.tau1, setting.tau2};
                    std::string error;
                    if (!run_cell(cell, args, setting.priors, loss_list, sink, &error)) {
                        sink.add_heading(cell);
                        sink.add_error(cell, error);
                        std::cout << "cell n=" << n << " m=" << m << " scheme=" << scheme
                                  << ": error: " << error << "\n";
                    }
                }
            }
        }
    }
    sink.write(args.out_prefix);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Competing-risks inference under improved adaptive type-II progressive censoring"};
    app.set_version_flag("--version", iatpcs_version());
    app.require_subcommand(1);

    const std::uint64_t seed0 = default_seed();

    GenerateArgs gen;
    gen.seed = seed0;
    auto* generate = app.add_subcommand("generate", "Draw one censored sample and write it as CSV");
    add_plan_flags(generate, gen.plan, true);
    generate->add_option("--tau1", gen.tau1, "Cause-1 hazard rate")->required();
    generate->add_option("--tau2", gen.tau2, "Cause-2 hazard rate")->required();
    generate->add_option("--seed", gen.seed, "RNG seed (default: IATPCS_SEED or built-in)");
    generate->add_option("--out", gen.out_path, "Output path (default: stdout)");

    AnalyzeArgs ana;
    ana.seed = seed0;
    auto* analyze = app.add_subcommand("analyze", "Estimate rates from a recorded dataset");
    auto* input = analyze->add_option("--input", ana.input_path, "Dataset CSV (time,cause rows)");
    auto* hoel = analyze->add_flag("--hoel", ana.hoel,
                                   "Use the embedded mouse-mortality dataset and its design");
    input->excludes(hoel);
    hoel->excludes(input);
    add_plan_flags(analyze, ana.plan, false);
    add_prior_flags(analyze, ana.priors);
    add_loss_flags(analyze, ana.losses);
    analyze->add_option("--gamma", ana.gamma, "Interval significance level (default 0.05)");
    analyze->add_option("--a-mode", ana.a_mode, "Time-on-test statistic: paper | corrected");
    analyze->add_option("--hpd-draws", ana.hpd_draws, "Posterior draws per HPD interval");
    analyze->add_option("--seed", ana.seed, "RNG seed for posterior sampling");

    SimulateArgs sim;
    sim.seed = seed0;
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo replication study over designs");
    simulate->add_option("--pairs", sim.pairs, "Comma-separated n:m pairs, e.g. 30:10,30:15")
        ->required();
    simulate->add_option("--schemes", sim.schemes, "Comma-separated schemes (default I)")
        ->default_val("I");
    simulate->add_option("--t1", sim.t1, "First threshold")->required();
    simulate->add_option("--t2", sim.t2, "Second threshold")->required();
    simulate->add_option("--tau1", sim.tau1, "True cause-1 hazard")->required();
    simulate->add_option("--tau2", sim.tau2, "True cause-2 hazard")->required();
    simulate->add_option("--reps", sim.reps, "Replicates per cell (default 10000)");
    add_prior_flags(simulate, sim.priors);
    add_loss_flags(simulate, sim.losses);
    simulate->add_option("--gamma", sim.gamma, "Interval significance level (default 0.05)");
    simulate->add_option("--a-mode", sim.a_mode, "Time-on-test statistic: paper | corrected");
    simulate->add_option("--hpd-draws", sim.hpd_draws, "Posterior draws per HPD interval");
    simulate->add_option("--seed", sim.seed, "Root RNG seed");
    simulate->add_option("--threads", sim.threads, "Worker threads (0 = hardware)");
    simulate->add_option("--out-prefix", sim.out_prefix, "Output file prefix (default 'sim')");

    SimulateArgs tab;
    tab.seed = seed0;
    tab.out_prefix = "tables";
    auto* tables = app.add_subcommand("tables", "Run the full reference design grid");
    tables->add_option("--reps", tab.reps, "Replicates per cell (default 10000)");
    tables->add_option("--hpd-draws", tab.hpd_draws, "Posterior draws per HPD interval");
    tables->add_option("--a-mode", tab.a_mode, "Time-on-test statistic: paper | corrected");
    tables->add_option("--seed", tab.seed, "Root RNG seed");
    tables->add_option("--threads", tab.threads, "Worker threads (0 = hardware)");
    tables->add_option("--out-prefix", tab.out_prefix, "Output file prefix (default 'tables')");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return IATPCS_E_USAGE;
    }

    if (generate->parsed()) return cmd_generate(gen);
    if (analyze->parsed()) return cmd_analyze(ana);
    if (simulate->parsed()) return cmd_simulate(sim);
    if (tables->parsed()) return cmd_tables(tab);
    return IATPCS_E_USAGE;
}
