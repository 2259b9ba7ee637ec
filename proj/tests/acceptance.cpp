// Acceptance runner: exercises the library end to end against its
// numerical contracts and the reference-study values it reproduces.
// Prints one PASS/FAIL line per criterion; the exit code is the number of
// failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "core/bayes.hpp"
#include "core/censoring.hpp"
#include "core/dataset.hpp"
#include "core/estimate.hpp"
#include "core/montecarlo.hpp"
#include "core/special.hpp"
#include "oracles.hpp"

using namespace iatpcs;

namespace {

int g_failures = 0;
std::vector<std::string> g_details;

void detail(const std::string& line) { g_details.push_back(line); }

bool check_in(const std::string& what, double value, double lo, double hi) {
    char buf[256];
    const bool ok = value >= lo && value <= hi;
    std::snprintf(buf, sizeof(buf), "%s: %.4g in [%.4g, %.4g]  %s", what.c_str(), value, lo, hi,
                  ok ? "ok" : "OUT");
    detail(buf);
    return ok;
}

bool check_le(const std::string& what, double value, double bound) {
    char buf[256];
    const bool ok = value <= bound;
    std::snprintf(buf, sizeof(buf), "%s: %.4g <= %.4g  %s", what.c_str(), value, bound,
                  ok ? "ok" : "OUT");
    detail(buf);
    return ok;
}

void report(int index, const std::string& name, bool pass, double seconds) {
    std::printf("[%2d] %s  %s (%.1f s)\n", index, pass ? "PASS" : "FAIL", name.c_str(), seconds);
    for (const auto& line : g_details) std::printf("      %s\n", line.c_str());
    g_details.clear();
    if (!pass) ++g_failures;
}

void run_criterion(int index, const std::string& name, const std::function<bool()>& body) {
    const auto start = std::chrono::steady_clock::now();
    bool pass = false;
    try {
        pass = body();
    } catch (const std::exception& e) {
        detail(std::string("exception: ") + e.what());
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report(index, name, pass, seconds);
}

IatSample random_small_sample(std::uint64_t seed) {
    Rng rng(seed);
    for (;;) {
        const int n = 4 + static_cast<int>(rng.uniform() * 17);  // n <= 20
        const int m = 2 + static_cast<int>(rng.uniform() * (n - 1));
        std::vector<int> removals(m, 0);
        int left = n - m;
        for (int i = 0; i < m && left > 0; ++i) {
            const int take = static_cast<int>(rng.uniform() * (left + 1));
            removals[i] = take;
            left -= take;
        }
        removals[m - 1] += left;
        const double t1 = 0.1 + rng.uniform();
        const CensoringPlan plan = make_plan(n, m, removals, t1, t1 + 0.2 + rng.uniform());
        const RatePair rates{0.3 + 2.0 * rng.uniform(), 0.3 + 2.0 * rng.uniform()};
        const IatSample s = generate(plan, rates, rng);
        if (s.d1 >= 1 && s.d2 >= 1) return s;
    }
}

// ---- shared simulation cells -------------------------------------------

struct CellKey {
    int n, m;
    Scheme scheme;
    const char* label;
    double t1, t2;
    bool with_priors;
    AMode mode;
};

SimReport run_cell(const CellKey& key) {
    SimConfig cfg;
    cfg.plan = make_plan(key.n, key.m, scheme_removals(key.scheme, key.n, key.m), key.t1, key.t2);
    cfg.scheme_label = key.label;
    cfg.rates = {0.6, 0.8};
    cfg.reps = 10000;
    if (key.with_priors) {
        cfg.priors = {{"Prior0", {}}, {"PriorI", {3, 5, 4, 5}}};
        cfg.losses = {make_self(), make_linex(-0.05), make_linex(0.5), make_gelf(-0.05),
                      make_gelf(0.5)};
    }
    cfg.hpd_draws = 5000;
    cfg.seed = 20260810;
    cfg.a_mode = key.mode;
    cfg.threads = 0;
    return run(cfg);
}

const EstimatorStats& mle_stats(const SimReport& r) { return r.points.front(); }

const IntervalStats& interval_stats(const SimReport& r, const std::string& name) {
    for (const auto& iv : r.intervals) {
        if (iv.name == name) return iv;
    }
    throw std::runtime_error("no interval column " + name);
}

// ---- CLI helpers ---------------------------------------------------------

struct CliResult {
    int exit_code;
    std::string output;
};

CliResult run_cli(const std::string& args) {
    const std::string path = "acceptance_cli_out.tmp";
    const std::string cmd = std::string(IATPCS_CLI_PATH) + " " + args + " > " + path + " 2>&1";
    const int rc = std::system(cmd.c_str());
    std::ifstream in(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    std::remove(path.c_str());
    return {WEXITSTATUS(rc), buf.str()};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

int main() {
    std::printf("acceptance suite: competing-risks inference under adaptive progressive censoring\n");

    // 1. Closed-form MLE agrees with direct numerical maximization of the
    //    log likelihood on 200 randomized small designs.
    run_criterion(1, "closed-form MLE matches numerical maximization (200 samples, <=1e-6)", [] {
        const auto start = std::chrono::steady_clock::now();
        double worst = 0.0;
        for (std::uint64_t seed = 0; seed < 200; ++seed) {
            const IatSample s = random_small_sample(substream_seed(111, seed));
            const MleResult fit = mle(s, AMode::paper);
            const auto [t1, t2] = oracles::maximize_positive2(
                [&](double a, double b) { return log_likelihood(a, b, s, AMode::paper); }, 0.5,
                0.5);
            worst = std::max(worst, std::abs(t1 - fit.tau1_hat) / fit.tau1_hat);
            worst = std::max(worst, std::abs(t2 - fit.tau2_hat) / fit.tau2_hat);
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        char buf[128];
        std::snprintf(buf, sizeof(buf), "max relative deviation %.3g", worst);
        detail(buf);
        return worst <= 1e-6 && check_le("runtime (s)", secs, 10.0);
    });

    // 2. Closed-form Bayes rules agree with adaptive quadrature of the
    //    posterior expectations on 200 randomized proper posteriors.
    run_criterion(2, "Bayes estimators match posterior quadrature (200 posteriors, <=1e-6)", [] {
        const auto start = std::chrono::steady_clock::now();
        Rng rng(222);
        double worst = 0.0;
        for (int trial = 0; trial < 200; ++trial) {
            const double shape = 0.8 + 29.0 * rng.uniform();
            const double rate = 0.5 + 39.0 * rng.uniform();
            const PosteriorParams post{shape, rate, shape, rate};

            auto rel = [](double got, double want) { return std::abs(got - want) / std::abs(want); };

            const double mean_quad =
                oracles::gamma_expect(shape, rate, [](double t) { return t; }, 1.0, 0.0);
            worst = std::max(worst, rel(estimate_self(post).first, mean_quad));

            for (double p : {-0.05, 0.5}) {
                const double mgf = oracles::gamma_expect(
                    shape, rate, [p](double t) { return std::exp(-p * t); }, 0.0, p);
                worst = std::max(worst, rel(estimate_linex(post, p).first, -std::log(mgf) / p));
            }
            for (double q : {-0.05, 0.5}) {
                const double moment = oracles::gamma_expect(
                    shape, rate, [q](double t) { return std::pow(t, -q); }, -q, 0.0);
                worst =
                    std::max(worst, rel(estimate_gelf(post, q).first, std::pow(moment, -1.0 / q)));
            }
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        char buf[128];
        std::snprintf(buf, sizeof(buf), "max relative deviation %.3g", worst);
        detail(buf);
        return worst <= 1e-6 && check_le("runtime (s)", secs, 30.0);
    });

    // 3. Exact identities between estimators. The LINEX small-p bound
    //    |linex(p) - self| ~ p * shape/(2 rate^2) is an absolute 1e-6
    //    statement, so it is checked where that envelope applies (which
    //    covers every study-scale posterior).
    run_criterion(3, "estimator identities (Prior0 SELF = MLE, GELF(-1) = SELF, LINEX -> SELF)", [] {
        bool exact_ok = true;
        int limit_checked = 0;
        bool limit_ok = true;
        for (std::uint64_t seed = 300; seed < 360; ++seed) {
            const IatSample s = random_small_sample(substream_seed(333, seed));
            const MleResult fit = mle(s, AMode::paper);
            const PosteriorParams post = posterior(s, GammaPrior{}, AMode::paper);
            const auto [self1, self2] = estimate_self(post);
            exact_ok = exact_ok && self1 == fit.tau1_hat && self2 == fit.tau2_hat;

            const auto [g1, g2] = estimate_gelf(post, -1.0);
            exact_ok = exact_ok && g1 == self1 && g2 == self2;

            if (post.shape1 < post.rate1 * post.rate1 &&
                post.shape2 < post.rate2 * post.rate2) {
                ++limit_checked;
                const auto [l1, l2] = estimate_linex(post, 1e-6);
                limit_ok = limit_ok && std::abs(l1 - self1) < 1e-6 && std::abs(l2 - self2) < 1e-6;
            }
        }
        // the worked-example posterior
        const PosteriorParams canon{5.0, 15.5, 5.0, 15.5};
        const auto [c_self, c_self2] = estimate_self(canon);
        const auto [c_linex, c_linex2] = estimate_linex(canon, 1e-6);
        limit_ok = limit_ok && std::abs(c_linex - c_self) < 1e-6 &&
                   std::abs(c_linex2 - c_self2) < 1e-6;

        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "exact identities on 60 samples: %s; linex limit on %d posteriors: %s",
                      exact_ok ? "held" : "FAILED", limit_checked + 1,
                      limit_ok ? "held" : "FAILED");
        detail(buf);
        return exact_ok && limit_ok && limit_checked > 20;
    });

    // Shared heavy cells (reps = 10^4 each, literal-statistic mode).
    double slowest_cell = 0.0;
    const auto timed_cell = [&slowest_cell](const CellKey& key) {
        const auto start = std::chrono::steady_clock::now();
        SimReport r = run_cell(key);
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        slowest_cell = std::max(slowest_cell, secs);
        std::printf("      [cell n=%d m=%d scheme %s T=(%g,%g) mode=%s: %.1f s, %ld redrawn]\n",
                    key.n, key.m, key.label, key.t1, key.t2,
                    key.mode == AMode::paper ? "paper" : "corrected", secs, r.skipped);
        return r;
    };
    const SimReport cell_30_10 =
        timed_cell({30, 10, Scheme::I, "I", 0.5, 1.0, true, AMode::paper});
    const SimReport cell_30_15 =
        timed_cell({30, 15, Scheme::I, "I", 0.5, 1.0, true, AMode::paper});
    const SimReport cell_30_15_wide =
        timed_cell({30, 15, Scheme::I, "I", 1.0, 1.5, true, AMode::paper});
    // Exposure-weighted variant of the same two key cells, reported for
    // diagnosis next to the literal-mode numbers.
    const SimReport corr_30_10 =
        timed_cell({30, 10, Scheme::I, "I", 0.5, 1.0, true, AMode::corrected});
    const SimReport corr_30_15 =
        timed_cell({30, 15, Scheme::I, "I", 0.5, 1.0, true, AMode::corrected});

    // 4. Reference-table point estimates at desk scale.
    run_criterion(4, "reference-table point estimates (reps=10^4, T=(0.5,1), tau=(0.6,0.8))", [&] {
        bool ok = true;
        ok &= check_in("(30,10) scheme I MLE avg tau1", mle_stats(cell_30_10).tau[0].average,
                       0.625 - 0.05, 0.625 + 0.05);
        ok &= check_in("(30,10) scheme I MLE MSE tau1", mle_stats(cell_30_10).tau[0].mse,
                       0.050 - 0.02, 0.050 + 0.02);
        ok &= check_in("(30,15) scheme I MLE avg tau1", mle_stats(cell_30_15).tau[0].average,
                       0.588 - 0.05, 0.588 + 0.05);
        char buf[256];
        std::snprintf(buf, sizeof(buf),
                      "info: corrected-mode values: (30,10) avg %.4g mse %.4g; (30,15) avg %.4g mse %.4g",
                      mle_stats(corr_30_10).tau[0].average, mle_stats(corr_30_10).tau[0].mse,
                      mle_stats(corr_30_15).tau[0].average, mle_stats(corr_30_15).tau[0].mse);
        detail(buf);
        ok &= check_le("slowest simulation cell runtime (s)", slowest_cell, 300.0);
        return ok;
    });

    // 5. Reference-table interval behaviour.
    run_criterion(5, "reference-table coverage and interval ordering", [&] {
        bool ok = true;
        ok &= check_in("(30,15) scheme I ACI coverage tau1",
                       interval_stats(cell_30_15, "ACI").tau[0].coverage, 0.959 - 0.05,
                       0.959 + 0.05);
        ok &= check_in("(30,15) scheme I HPD[PriorI] coverage tau1",
                       interval_stats(cell_30_15, "HPD[PriorI]").tau[0].coverage, 0.995 - 0.02,
                       0.995 + 0.02);
        char buf[256];
        std::snprintf(buf, sizeof(buf), "info: corrected-mode HPD[PriorI] coverage %.4g",
                      interval_stats(corr_30_15, "HPD[PriorI]").tau[0].coverage);
        detail(buf);

        int cells = 0, shorter = 0;
        for (const SimReport* r : {&cell_30_10, &cell_30_15, &cell_30_15_wide}) {
            const IntervalStats& aci = interval_stats(*r, "ACI");
            for (const char* hpd_name : {"HPD[Prior0]", "HPD[PriorI]"}) {
                const IntervalStats& h = interval_stats(*r, hpd_name);
                for (int j = 0; j < 2; ++j) {
                    ++cells;
                    if (h.tau[j].avg_length <= aci.tau[j].avg_length) ++shorter;
                }
            }
        }
        std::snprintf(buf, sizeof(buf), "HPD shorter than ACI in %d of %d interval cells", shorter,
                      cells);
        detail(buf);
        ok &= (shorter >= 0.9 * cells);
        return ok;
    });

    // 6. Qualitative trends: MSE falls with more data; intervals shrink
    //    with later thresholds.
    run_criterion(6, "trend properties across designs and thresholds", [&] {
        bool ok = true;
        for (Scheme scheme : {Scheme::I, Scheme::II, Scheme::III}) {
            const char* label = scheme == Scheme::I ? "I" : (scheme == Scheme::II ? "II" : "III");
            const SimReport small =
                (scheme == Scheme::I)
                    ? cell_30_10
                    : timed_cell({30, 10, scheme, label, 0.5, 1.0, false, AMode::paper});
            const SimReport big = timed_cell({40, 20, scheme, label, 0.5, 1.0, false, AMode::paper});
            for (int j = 0; j < 2; ++j) {
                const double se = std::hypot(mle_stats(small).tau[j].mse_stderr,
                                             mle_stats(big).tau[j].mse_stderr);
                ok &= check_le(std::string("scheme ") + label + " MSE(40,20) tau" +
                                   std::to_string(j + 1) + " vs MSE(30,10)+2se",
                               mle_stats(big).tau[j].mse,
                               mle_stats(small).tau[j].mse + 2.0 * se);
            }
        }
        for (const char* method : {"ACI", "HPD[Prior0]", "HPD[PriorI]"}) {
            const IntervalStats& tight = interval_stats(cell_30_15, method);
            const IntervalStats& wide = interval_stats(cell_30_15_wide, method);
            for (int j = 0; j < 2; ++j) {
                const double se =
                    std::hypot(tight.tau[j].length_stderr, wide.tau[j].length_stderr);
                ok &= check_le(std::string(method) + " length tau" + std::to_string(j + 1) +
                                   " at T=(1,1.5) vs T=(0.5,1)+2se",
                               wide.tau[j].avg_length, tight.tau[j].avg_length + 2.0 * se);
            }
        }
        return ok;
    });

    // 7. Real-data pipeline through the command line.
    run_criterion(7, "recorded-dataset analysis pipeline", [] {
        bool ok = true;
        const CliResult first = run_cli("analyze --hoel --t1 450 --t2 600 --prior0 --seed 1");
        ok &= first.exit_code == 0;
        ok &= first.output.find("D=21 ") != std::string::npos;
        ok &= first.output.find("T_star=600") != std::string::npos;
        detail(std::string("thresholds (450,600): ") +
               (ok ? "D=21, T*=600 reported" : "unexpected output"));

        const CliResult second = run_cli("analyze --hoel --t1 350 --t2 530 --prior0 --seed 1");
        bool ok2 = second.exit_code == 0;
        ok2 &= second.output.find("D=20 ") != std::string::npos;
        ok2 &= second.output.find("T_star=530") != std::string::npos;
        detail(std::string("thresholds (350,530): ") +
               (ok2 ? "D=20, T*=530 reported" : "unexpected output"));
        ok &= ok2;

        // estimator identity tau_j * A = D_j, exact
        const auto& data = hoel_dataset();
        std::vector<double> times;
        std::vector<int> causes;
        for (const auto& rec : data) {
            times.push_back(rec.time);
            causes.push_back(rec.cause);
        }
        for (const auto& setting : {std::pair<double, double>{450, 600}, {350, 530}}) {
            const IatSample s = replay(hoel_plan(setting.first, setting.second), times, causes);
            const MleResult fit = mle(s, AMode::paper);
            const bool exact = fit.tau1_hat * fit.a_stat == static_cast<double>(s.d1) &&
                               fit.tau2_hat * fit.a_stat == static_cast<double>(s.d2);
            detail(std::string("tau_j * A = D_j ") + (exact ? "exactly" : "VIOLATED"));
            ok &= exact;
        }
        return ok;
    });

    // 8. Generator calibration on the smallest complete design.
    run_criterion(8, "generator calibration (n=m=3, 10^5 replications, 3 sigma)", [] {
        const CensoringPlan plan = make_plan(3, 3, {0, 0, 0}, 1e8, 2e8);
        const RatePair rates{0.6, 0.8};
        const int reps = 100000;
        double sum_first = 0.0;
        long cause1 = 0, total = 0;
        for (int i = 0; i < reps; ++i) {
            Rng rng(substream_seed(888, i));
            const IatSample s = generate(plan, rates, rng);
            sum_first += s.times[0];
            cause1 += s.d1;
            total += s.d();
        }
        const double expected = 1.0 / (3.0 * 1.4);
        const double se = expected / std::sqrt(reps);
        bool ok = check_in("mean first failure", sum_first / reps, expected - 3.0 * se,
                           expected + 3.0 * se);
        const double p = 0.6 / 1.4;
        const double se_frac = std::sqrt(p * (1.0 - p) / total);
        ok &= check_in("cause-1 fraction", static_cast<double>(cause1) / total, p - 3.0 * se_frac,
                       p + 3.0 * se_frac);
        return ok;
    });

    // 9. Numerical kernels.
    run_criterion(9, "numerical kernels (quantile 1e-8, log-gamma 1e-10, sampler moments)", [] {
        bool ok = true;
        // quantile grid, references at exact double inputs
        const double grid[][2] = {
            {1e-10, -6.3613409024040562}, {1e-08, -5.6120012441747887},
            {1e-06, -4.7534243088228990}, {0.0001, -3.7190164854556806},
            {0.001, -3.0902323061678135}, {0.025, -1.9599639845400542},
            {0.05, -1.6448536269514727},  {0.25, -0.67448975019608174},
            {0.5, 0.0},                   {0.75, 0.67448975019608174},
            {0.975, 1.9599639845400539},  {0.999, 3.0902323061678133},
            {0.999999, 4.7534243088170878}, {0.9999999999, 6.3613408896974219},
        };
        double worst_q = 0.0;
        for (const auto& ref : grid) {
            worst_q = std::max(worst_q, std::abs(normal_quantile(ref[0]) - ref[1]));
        }
        ok &= check_le("normal quantile max abs error", worst_q, 1e-8);

        double worst_lg = 0.0;
        double lf = 0.0;
        for (int k = 1; k <= 30; ++k) {
            if (k > 1) lf += std::log(static_cast<double>(k - 1));
            if (k > 2) worst_lg = std::max(worst_lg, std::abs(log_gamma(k) - lf) / std::abs(lf));
        }
        double lh = 0.5 * std::log(M_PI);
        for (int k = 0; k <= 29; ++k) {
            const double x = 0.5 + k;
            worst_lg = std::max(worst_lg, std::abs(log_gamma(x) - lh) / std::abs(lh));
            lh += std::log(x);
        }
        ok &= check_le("log-gamma max rel error (ints, half-ints <= 30)", worst_lg, 1e-10);

        const double configs[][2] = {{0.5, 1.0}, {1.0, 1.0}, {5.0, 15.5}};
        for (const auto& c : configs) {
            Rng rng(substream_seed(999, static_cast<std::uint64_t>(c[0] * 16)));
            const int n = 100000;
            double sum = 0.0, sumsq = 0.0;
            for (int i = 0; i < n; ++i) {
                const double x = rng.gamma(c[0], c[1]);
                sum += x;
                sumsq += x * x;
            }
            const double mean = sum / n, var = sumsq / n - mean * mean;
            const double tm = c[0] / c[1], tv = c[0] / (c[1] * c[1]);
            const double se_mean = std::sqrt(tv / n);
            const double se_var = tv * std::sqrt((2.0 + 6.0 / c[0]) / n);
            char what[64];
            std::snprintf(what, sizeof(what), "gamma(%.1f,%.1f) mean", c[0], c[1]);
            ok &= check_in(what, mean, tm - 4.0 * se_mean, tm + 4.0 * se_mean);
            std::snprintf(what, sizeof(what), "gamma(%.1f,%.1f) var", c[0], c[1]);
            ok &= check_in(what, var, tv - 4.0 * se_var, tv + 4.0 * se_var);
        }
        return ok;
    });

    // 10. Byte-identical simulation output across runs and thread counts.
    run_criterion(10, "simulation determinism across thread counts", [] {
        const std::string flags =
            "simulate --pairs 30:10 --schemes I --t1 0.5 --t2 1 --tau1 0.6 --tau2 0.8 --reps 200 "
            "--prior0 --prior PriorI:3,5,4,5 --linex -0.05 --linex 0.5 --gelf -0.05 --gelf 0.5 "
            "--hpd-draws 1000 --seed 13 ";
        const CliResult a = run_cli(flags + "--threads 1 --out-prefix acc_det_a");
        const CliResult b = run_cli(flags + "--threads 2 --out-prefix acc_det_b");
        bool ok = a.exit_code == 0 && b.exit_code == 0;
        for (const char* suffix : {"_points.csv", "_intervals.csv", "_points.md", "_intervals.md"}) {
            const std::string fa = slurp(std::string("acc_det_a") + suffix);
            const std::string fb = slurp(std::string("acc_det_b") + suffix);
            ok = ok && !fa.empty() && fa == fb;
            std::remove((std::string("acc_det_a") + suffix).c_str());
            std::remove((std::string("acc_det_b") + suffix).c_str());
        }
        detail(ok ? "all four table files byte-identical" : "outputs differ");
        return ok;
    });

    std::printf("%d of 10 criteria passed\n", 10 - g_failures);
    return g_failures;
}
