#include "core/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <thread>

#include "core/dataset.hpp"
#include "core/errors.hpp"

namespace iatpcs {

namespace {

struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

void validate_config(const SimConfig& cfg) {
    if (cfg.reps < 1) throw_validation("simulation requires reps >= 1");
    if (!(cfg.level > 0.0) || !(cfg.level < 1.0)) {
        throw_validation("interval level must lie in (0,1)");
    }
    if (cfg.hpd_draws < 2) throw_validation("hpd_draws must be >= 2");
    if (cfg.threads < 0) throw_validation("threads must be >= 0");
    validate(cfg.rates);
    for (const auto& lp : cfg.priors) {
        if (lp.prior.a < 0 || lp.prior.b < 0 || lp.prior.c < 0 || lp.prior.d < 0) {
            throw_validation("prior '" + lp.label + "' has negative hyperparameters");
        }
    }
    for (const auto& loss : cfg.losses) {
        if (loss.kind != LossSpec::Kind::self && loss.param == 0.0) {
            throw_validation("loss " + loss.name() + " requires a nonzero parameter");
        }
    }
}

// Per-replicate record layout inside one flat array:
//   [mle tau1, mle tau2]
//   [per prior x loss: tau1, tau2]
//   [aci: lo1, hi1, lo2, hi2]
//   [per prior hpd: lo1, hi1, lo2, hi2]
struct Layout {
    int priors;
    int losses;

    int bayes_off() const { return 2; }
    int aci_off() const { return 2 + 2 * priors * losses; }
    int hpd_off() const { return aci_off() + 4; }
    int stride() const { return hpd_off() + 4 * priors; }
};

}  // namespace

SimReport run(const SimConfig& cfg) {
    validate_config(cfg);
    const double gamma = 1.0 - cfg.level;
    const Layout layout{static_cast<int>(cfg.priors.size()), static_cast<int>(cfg.losses.size())};

    std::vector<double> slots(static_cast<std::size_t>(cfg.reps) * layout.stride());
    std::vector<int> attempts(cfg.reps, 0);

    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&](int lo, int hi) {
        try {
            for (int rep = lo; rep < hi; ++rep) {
                double* rec = slots.data() + static_cast<std::size_t>(rep) * layout.stride();

                // redraw degenerate replicates on a fresh substream; the
                // stream of the accepted attempt keeps serving this
                // replicate's posterior draws below
                int attempt = 0;
                Rng rng(substream_seed(cfg.seed, static_cast<std::uint64_t>(rep), attempt));
                IatSample sample = generate(cfg.plan, cfg.rates, rng);
                while (sample.d1 < 1 || sample.d2 < 1) {
                    ++attempt;
                    rng = Rng(substream_seed(cfg.seed, static_cast<std::uint64_t>(rep), attempt));
                    sample = generate(cfg.plan, cfg.rates, rng);
                }
                attempts[rep] = attempt;

                const MleResult fit = mle(sample, cfg.a_mode);
                rec[0] = fit.tau1_hat;
                rec[1] = fit.tau2_hat;
                const auto [ci1, ci2] = asymptotic_ci(fit, gamma);
                rec[layout.aci_off() + 0] = ci1.lower;
                rec[layout.aci_off() + 1] = ci1.upper;
                rec[layout.aci_off() + 2] = ci2.lower;
                rec[layout.aci_off() + 3] = ci2.upper;

                for (int p = 0; p < layout.priors; ++p) {
                    const PosteriorParams post = posterior(sample, cfg.priors[p].prior, cfg.a_mode);
                    for (int l = 0; l < layout.losses; ++l) {
                        const auto [e1, e2] = estimate_under(post, cfg.losses[l]);
                        rec[layout.bayes_off() + 2 * (p * layout.losses + l) + 0] = e1;
                        rec[layout.bayes_off() + 2 * (p * layout.losses + l) + 1] = e2;
                    }
                    const PosteriorDraws draws = sample_posterior(post, cfg.hpd_draws, rng);
                    const IntervalEstimate h1 = hpd(draws.tau1, gamma);
                    const IntervalEstimate h2 = hpd(draws.tau2, gamma);
                    rec[layout.hpd_off() + 4 * p + 0] = h1.lower;
                    rec[layout.hpd_off() + 4 * p + 1] = h1.upper;
                    rec[layout.hpd_off() + 4 * p + 2] = h2.lower;
                    rec[layout.hpd_off() + 4 * p + 3] = h2.upper;
                }
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) failure = std::current_exception();
        }
    };

    int nthreads = cfg.threads == 0
                       ? static_cast<int>(std::max(1u, std::thread::hardware_concurrency()))
                       : cfg.threads;
    nthreads = std::min(nthreads, cfg.reps);
    if (nthreads <= 1) {
        worker(0, cfg.reps);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        const int chunk = (cfg.reps + nthreads - 1) / nthreads;
        for (int t = 0; t < nthreads; ++t) {
            const int lo = t * chunk;
            const int hi = std::min(cfg.reps, lo + chunk);
            if (lo < hi) pool.emplace_back(worker, lo, hi);
        }
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    // Aggregation in replicate order, independent of the thread schedule.
    SimReport report;
    report.config = cfg;
    for (int rep = 0; rep < cfg.reps; ++rep) report.skipped += attempts[rep];

    const double truth[2] = {cfg.rates.tau1, cfg.rates.tau2};
    auto reduce_point = [&](const std::string& name, int offset) {
        EstimatorStats stats;
        stats.name = name;
        for (int j = 0; j < 2; ++j) {
            KahanSum sum, sq, sq2;
            for (int rep = 0; rep < cfg.reps; ++rep) {
                const double est = slots[static_cast<std::size_t>(rep) * layout.stride() + offset + j];
                const double err = est - truth[j];
                sum.add(est);
                sq.add(err * err);
                sq2.add(err * err * err * err);
            }
            ParamStats& ps = stats.tau[j];
            ps.average = sum.sum / cfg.reps;
            ps.bias = ps.average - truth[j];
            ps.mse = sq.sum / cfg.reps;
            const double var_sq = std::max(0.0, sq2.sum / cfg.reps - ps.mse * ps.mse);
            ps.mse_stderr = std::sqrt(var_sq / cfg.reps);
        }
        return stats;
    };

    auto reduce_interval = [&](const std::string& name, int offset) {
        IntervalStats stats;
        stats.name = name;
        for (int j = 0; j < 2; ++j) {
            KahanSum lo, hi, len, len2;
            long covered = 0;
            for (int rep = 0; rep < cfg.reps; ++rep) {
                const double* rec = slots.data() + static_cast<std::size_t>(rep) * layout.stride();
                const double lower = rec[offset + 2 * j];
                const double upper = rec[offset + 2 * j + 1];
                lo.add(lower);
                hi.add(upper);
                len.add(upper - lower);
                len2.add((upper - lower) * (upper - lower));
                if (lower <= truth[j] && truth[j] <= upper) ++covered;
            }
            IntervalParamStats& ps = stats.tau[j];
            ps.avg_lower = lo.sum / cfg.reps;
            ps.avg_upper = hi.sum / cfg.reps;
            ps.avg_length = len.sum / cfg.reps;
            const double var_len = std::max(0.0, len2.sum / cfg.reps - ps.avg_length * ps.avg_length);
            ps.length_stderr = std::sqrt(var_len / cfg.reps);
            ps.coverage = static_cast<double>(covered) / cfg.reps;
        }
        return stats;
    };

    report.points.push_back(reduce_point("MLE", 0));
    for (int p = 0; p < layout.priors; ++p) {
        for (int l = 0; l < layout.losses; ++l) {
            report.points.push_back(reduce_point(
                cfg.priors[p].label + ":" + cfg.losses[l].name(),
                layout.bayes_off() + 2 * (p * layout.losses + l)));
        }
    }
    report.intervals.push_back(reduce_interval("ACI", layout.aci_off()));
    for (int p = 0; p < layout.priors; ++p) {
        report.intervals.push_back(
            reduce_interval("HPD[" + cfg.priors[p].label + "]", layout.hpd_off() + 4 * p));
    }
    return report;
}

SummaryRows summarize(const SimReport& report) {
    const SimConfig& cfg = report.config;
    SummaryRows rows;
    const char* params[2] = {"tau1", "tau2"};
    for (const auto& est : report.points) {
        for (int j = 0; j < 2; ++j) {
            rows.points.push_back({cfg.plan.n, cfg.plan.m, cfg.scheme_label, cfg.plan.t1,
                                   cfg.plan.t2, cfg.rates.tau1, cfg.rates.tau2, params[j], est.name,
                                   est.tau[j].average, est.tau[j].bias, est.tau[j].mse,
                                   est.tau[j].mse_stderr});
        }
    }
    for (const auto& iv : report.intervals) {
        for (int j = 0; j < 2; ++j) {
            rows.intervals.push_back({cfg.plan.n, cfg.plan.m, cfg.scheme_label, cfg.plan.t1,
                                      cfg.plan.t2, cfg.rates.tau1, cfg.rates.tau2, params[j],
                                      iv.name, iv.tau[j].avg_lower, iv.tau[j].avg_upper,
                                      iv.tau[j].avg_length, iv.tau[j].coverage});
        }
    }
    return rows;
}

namespace {

std::string fmt6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

void append_key_csv(std::string& out, int n, int m, const std::string& scheme, double t1,
                    double t2, double tau1, double tau2) {
    out += std::to_string(n);
    out += ',';
    out += std::to_string(m);
    out += ',';
    out += scheme;
    out += ',';
    out += format_full(t1);
    out += ',';
    out += format_full(t2);
    out += ',';
    out += format_full(tau1);
    out += ',';
    out += format_full(tau2);
}

}  // namespace

std::string points_csv(const std::vector<PointRow>& rows, bool with_header) {
    std::string out;
    if (with_header) out += "n,m,scheme,t1,t2,tau1,tau2,parameter,estimator,average,bias,mse,mse_stderr\n";
    for (const auto& r : rows) {
        append_key_csv(out, r.n, r.m, r.scheme, r.t1, r.t2, r.tau1, r.tau2);
        out += ',' + r.parameter + ',' + r.estimator + ',' + format_full(r.average) + ',' +
               format_full(r.bias) + ',' + format_full(r.mse) + ',' + format_full(r.mse_stderr) +
               '\n';
    }
    return out;
}

std::string intervals_csv(const std::vector<IntervalRow>& rows, bool with_header) {
    std::string out;
    if (with_header) out += "n,m,scheme,t1,t2,tau1,tau2,parameter,method,avg_lower,avg_upper,avg_length,coverage\n";
    for (const auto& r : rows) {
        append_key_csv(out, r.n, r.m, r.scheme, r.t1, r.t2, r.tau1, r.tau2);
        out += ',' + r.parameter + ',' + r.method + ',' + format_full(r.avg_lower) + ',' +
               format_full(r.avg_upper) + ',' + format_full(r.avg_length) + ',' +
               format_full(r.coverage) + '\n';
    }
    return out;
}

namespace {

std::string markdown_table(const std::vector<std::vector<std::string>>& cells) {
    if (cells.empty()) return "";
    std::vector<std::size_t> width(cells[0].size(), 0);
    for (const auto& row : cells) {
        for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    }
    std::string out;
    for (std::size_t r = 0; r < cells.size(); ++r) {
        out += '|';
        for (std::size_t c = 0; c < cells[r].size(); ++c) {
            out += ' ';
            out += cells[r][c];
            out.append(width[c] - cells[r][c].size(), ' ');
            out += " |";
        }
        out += '\n';
        if (r == 0) {
            out += '|';
            for (std::size_t c = 0; c < width.size(); ++c) {
                out.append(width[c] + 2, '-');
                out += '|';
            }
            out += '\n';
        }
    }
    return out;
}

}  // namespace

std::string points_markdown(const std::vector<PointRow>& rows) {
    std::vector<std::vector<std::string>> cells;
    cells.push_back({"n", "m", "scheme", "T1", "T2", "param", "estimator", "average", "bias", "MSE"});
    for (const auto& r : rows) {
        cells.push_back({std::to_string(r.n), std::to_string(r.m), r.scheme, fmt6(r.t1), fmt6(r.t2),
                         r.parameter, r.estimator, fmt6(r.average), fmt6(r.bias), fmt6(r.mse)});
    }
    return markdown_table(cells);
}

std::string intervals_markdown(const std::vector<IntervalRow>& rows) {
    std::vector<std::vector<std::string>> cells;
    cells.push_back({"n", "m", "scheme", "T1", "T2", "param", "method", "CI", "length", "CP"});
    for (const auto& r : rows) {
        cells.push_back({std::to_string(r.n), std::to_string(r.m), r.scheme, fmt6(r.t1), fmt6(r.t2),
                         r.parameter, r.method,
                         "(" + fmt6(r.avg_lower) + ", " + fmt6(r.avg_upper) + ")",
                         fmt6(r.avg_length), fmt6(r.coverage)});
    }
    return markdown_table(cells);
}

}  // namespace iatpcs
