#include "iatpcs.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>
#include <tuple>
#include <vector>

#include "core/bayes.hpp"
#include "core/censoring.hpp"
#include "core/dataset.hpp"
#include "core/errors.hpp"
#include "core/estimate.hpp"
#include "core/model.hpp"
#include "core/montecarlo.hpp"
#include "core/special.hpp"

using namespace iatpcs;

struct iatpcs_plan {
    CensoringPlan impl;
};
struct iatpcs_sample {
    IatSample impl;
};
struct iatpcs_dataset {
    std::vector<DatasetRecord> impl;
};
struct iatpcs_sim {
    SimReport impl;
};

namespace {

thread_local std::string g_last_error;

int status_of(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::validation:
            return IATPCS_E_VALIDATION;
        case ErrorKind::domain:
            return IATPCS_E_DOMAIN;
        case ErrorKind::nonexistent:
            return IATPCS_E_NONEXISTENT;
        case ErrorKind::parse:
            return IATPCS_E_PARSE;
        case ErrorKind::io:
            return IATPCS_E_IO;
    }
    return IATPCS_E_INTERNAL;
}

template <typename Fn>
int guarded(Fn&& fn) noexcept {
    try {
        fn();
        return IATPCS_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        return status_of(e.kind());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return IATPCS_E_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return IATPCS_E_INTERNAL;
    }
}

void require(bool cond, const char* msg) {
    if (!cond) throw_validation(msg);
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

AMode a_mode_of(int mode) {
    if (mode == IATPCS_A_PAPER) return AMode::paper;
    if (mode == IATPCS_A_CORRECTED) return AMode::corrected;
    throw_validation("a_mode must be IATPCS_A_PAPER or IATPCS_A_CORRECTED");
}

Scheme scheme_of(int scheme) {
    switch (scheme) {
        case IATPCS_SCHEME_I:
            return Scheme::I;
        case IATPCS_SCHEME_II:
            return Scheme::II;
        case IATPCS_SCHEME_III:
            return Scheme::III;
    }
    throw_validation("scheme must be IATPCS_SCHEME_I, _II or _III");
}

PosteriorParams posterior_of(const iatpcs_posterior* post) {
    require(post != nullptr, "posterior must not be null");
    if (!(post->shape1 > 0) || !(post->rate1 > 0) || !(post->shape2 > 0) || !(post->rate2 > 0)) {
        throw_validation("posterior parameters must be positive");
    }
    return {post->shape1, post->rate1, post->shape2, post->rate2};
}

}  // namespace

extern "C" {

const char* iatpcs_status_name(int status) {
    switch (status) {
        case IATPCS_OK:
            return "ok";
        case IATPCS_E_USAGE:
            return "usage error";
        case IATPCS_E_VALIDATION:
            return "validation error";
        case IATPCS_E_NONEXISTENT:
            return "estimate does not exist";
        case IATPCS_E_PARSE:
            return "parse error";
        case IATPCS_E_DOMAIN:
            return "domain error";
        case IATPCS_E_IO:
            return "io error";
        case IATPCS_E_INTERNAL:
            return "internal error";
    }
    return "unknown status";
}

const char* iatpcs_last_error(void) { return g_last_error.c_str(); }

const char* iatpcs_version(void) { return "0.1.0"; }

void iatpcs_string_free(char* s) { std::free(s); }

/* ---- model ---- */

int iatpcs_cdf(int cause, double x, double tau1, double tau2, double* out) {
    return guarded([&] {
        require(out != nullptr, "out must not be null");
        *out = cdf(cause, x, RatePair{tau1, tau2});
    });
}

int iatpcs_survival(int cause, double x, double tau1, double tau2, double* out) {
    return guarded([&] {
        require(out != nullptr, "out must not be null");
        *out = survival(cause, x, RatePair{tau1, tau2});
    });
}

int iatpcs_hazard(int cause, double x, double tau1, double tau2, double* out) {
    return guarded([&] {
        require(out != nullptr, "out must not be null");
        *out = hazard(cause, x, RatePair{tau1, tau2});
    });
}

int iatpcs_min_law(double tau1, double tau2, double* total_rate, double* cause1_prob) {
    return guarded([&] {
        require(total_rate != nullptr && cause1_prob != nullptr, "outputs must not be null");
        const MinLaw law = min_law(RatePair{tau1, tau2});
        *total_rate = law.total_rate;
        *cause1_prob = law.cause1_prob;
    });
}

int iatpcs_log_gamma(double x, double* out) {
    return guarded([&] {
        require(out != nullptr, "out must not be null");
        *out = log_gamma(x);
    });
}

int iatpcs_normal_quantile(double p, double* out) {
    return guarded([&] {
        require(out != nullptr, "out must not be null");
        *out = normal_quantile(p);
    });
}

/* ---- plans ---- */

int iatpcs_scheme_removals(int scheme, int n, int m, int* removals_out) {
    return guarded([&] {
        require(removals_out != nullptr, "removals_out must not be null");
        const std::vector<int> r = scheme_removals(scheme_of(scheme), n, m);
        std::memcpy(removals_out, r.data(), r.size() * sizeof(int));
    });
}

int iatpcs_plan_new(int n, int m, const int* removals, double t1, double t2, iatpcs_plan** out) {
    return guarded([&] {
        require(out != nullptr, "out must not be null");
        require(removals != nullptr, "removals must not be null");
        require(m >= 1, "plan requires m >= 1");
        auto plan = std::make_unique<iatpcs_plan>();
        plan->impl = make_plan(n, m, std::vector<int>(removals, removals + m), t1, t2);
        *out = plan.release();
    });
}

int iatpcs_plan_scheme(int scheme, int n, int m, double t1, double t2, iatpcs_plan** out) {
    return guarded([&] {
        require(out != nullptr, "out must not be null");
        auto plan = std::make_unique<iatpcs_plan>();
        plan->impl = make_plan(n, m, scheme_removals(scheme_of(scheme), n, m), t1, t2);
        *out = plan.release();
    });
}

void iatpcs_plan_free(iatpcs_plan* plan) { delete plan; }

/* ---- samples ---- */

int iatpcs_generate(const iatpcs_plan* plan, double tau1, double tau2, uint64_t seed,
                    iatpcs_sample** out) {
    return guarded([&] {
        require(plan != nullptr, "plan must not be null");
        require(out != nullptr, "out must not be null");
        Rng rng(seed);
        auto sample = std::make_unique<iatpcs_sample>();
        sample->impl = generate(plan->impl, RatePair{tau1, tau2}, rng);
        *out = sample.release();
    });
}

void iatpcs_sample_free(iatpcs_sample* sample) { delete sample; }

int iatpcs_sample_size(const iatpcs_sample* sample, int* d) {
    return guarded([&] {
        require(sample != nullptr && d != nullptr, "arguments must not be null");
        *d = sample->impl.d();
    });
}

int iatpcs_sample_counts(const iatpcs_sample* sample, int* d1, int* d2) {
    return guarded([&] {
        require(sample != nullptr && d1 != nullptr && d2 != nullptr, "arguments must not be null");
        *d1 = sample->impl.d1;
        *d2 = sample->impl.d2;
    });
}

int iatpcs_sample_case(const iatpcs_sample* sample, int* tag, int* k1, int* k2) {
    return guarded([&] {
        require(sample != nullptr && tag != nullptr && k1 != nullptr && k2 != nullptr,
                "arguments must not be null");
        *tag = static_cast<int>(sample->impl.censoring_case.tag);
        *k1 = sample->impl.censoring_case.k1;
        *k2 = sample->impl.censoring_case.k2;
    });
}

int iatpcs_sample_termination(const iatpcs_sample* sample, int* r_star, double* t_star) {
    return guarded([&] {
        require(sample != nullptr && r_star != nullptr && t_star != nullptr,
                "arguments must not be null");
        *r_star = sample->impl.r_star;
        *t_star = sample->impl.t_star;
    });
}

int iatpcs_sample_row(const iatpcs_sample* sample, int i, double* time, int* cause, int* removed) {
    return guarded([&] {
        require(sample != nullptr && time != nullptr && cause != nullptr && removed != nullptr,
                "arguments must not be null");
        require(i >= 0 && i < sample->impl.d(), "row index out of range");
        *time = sample->impl.times[i];
        *cause = sample->impl.causes[i];
        *removed = sample->impl.removals[i];
    });
}

int iatpcs_sample_to_csv(const iatpcs_sample* sample, char** out) {
    return guarded([&] {
        require(sample != nullptr && out != nullptr, "arguments must not be null");
        *out = dup_string(sample_to_csv(sample->impl));
    });
}

int iatpcs_sample_from_csv(const char* text, iatpcs_sample** out) {
    return guarded([&] {
        require(text != nullptr && out != nullptr, "arguments must not be null");
        auto sample = std::make_unique<iatpcs_sample>();
        sample->impl = sample_from_csv(text);
        *out = sample.release();
    });
}

/* ---- datasets ---- */

int iatpcs_dataset_parse(const char* csv_text, iatpcs_dataset** out) {
    return guarded([&] {
        require(csv_text != nullptr && out != nullptr, "arguments must not be null");
        auto dataset = std::make_unique<iatpcs_dataset>();
        dataset->impl = parse_dataset(csv_text);
        *out = dataset.release();
    });
}

int iatpcs_dataset_hoel(iatpcs_dataset** out) {
    return guarded([&] {
        require(out != nullptr, "out must not be null");
        auto dataset = std::make_unique<iatpcs_dataset>();
        dataset->impl = hoel_dataset();
        *out = dataset.release();
    });
}

void iatpcs_dataset_free(iatpcs_dataset* dataset) { delete dataset; }

int iatpcs_dataset_size(const iatpcs_dataset* dataset, int* n_records) {
    return guarded([&] {
        require(dataset != nullptr && n_records != nullptr, "arguments must not be null");
        *n_records = static_cast<int>(dataset->impl.size());
    });
}

int iatpcs_dataset_row(const iatpcs_dataset* dataset, int i, double* time, int* cause) {
    return guarded([&] {
        require(dataset != nullptr && time != nullptr && cause != nullptr,
                "arguments must not be null");
        require(i >= 0 && i < static_cast<int>(dataset->impl.size()), "row index out of range");
        *time = dataset->impl[i].time;
        *cause = dataset->impl[i].cause;
    });
}

int iatpcs_dataset_to_csv(const iatpcs_dataset* dataset, char** out) {
    return guarded([&] {
        require(dataset != nullptr && out != nullptr, "arguments must not be null");
        *out = dup_string(dataset_to_csv(dataset->impl));
    });
}

int iatpcs_replay(const iatpcs_dataset* dataset, const iatpcs_plan* plan, iatpcs_sample** out) {
    return guarded([&] {
        require(dataset != nullptr && plan != nullptr && out != nullptr,
                "arguments must not be null");
        std::vector<double> times;
        std::vector<int> causes;
        times.reserve(dataset->impl.size());
        causes.reserve(dataset->impl.size());
        for (const auto& rec : dataset->impl) {
            times.push_back(rec.time);
            causes.push_back(rec.cause);
        }
        auto sample = std::make_unique<iatpcs_sample>();
        sample->impl = replay(plan->impl, times, causes);
        *out = sample.release();
    });
}

/* ---- likelihood inference ---- */

int iatpcs_stat_a(const iatpcs_sample* sample, int a_mode, double* out) {
    return guarded([&] {
        require(sample != nullptr && out != nullptr, "arguments must not be null");
        *out = stat_a(sample->impl, a_mode_of(a_mode));
    });
}

int iatpcs_log_likelihood(double tau1, double tau2, const iatpcs_sample* sample, int a_mode,
                          double* out) {
    return guarded([&] {
        require(sample != nullptr && out != nullptr, "arguments must not be null");
        *out = log_likelihood(tau1, tau2, sample->impl, a_mode_of(a_mode));
    });
}

int iatpcs_mle(const iatpcs_sample* sample, int a_mode, iatpcs_mle_result* out) {
    return guarded([&] {
        require(sample != nullptr && out != nullptr, "arguments must not be null");
        const MleResult fit = mle(sample->impl, a_mode_of(a_mode));
        *out = {fit.tau1_hat, fit.tau2_hat, fit.a_stat, fit.var1, fit.var2};
    });
}

int iatpcs_asymptotic_ci(const iatpcs_mle_result* fit, double gamma, iatpcs_interval* ci1,
                         iatpcs_interval* ci2) {
    return guarded([&] {
        require(fit != nullptr && ci1 != nullptr && ci2 != nullptr, "arguments must not be null");
        const MleResult core{fit->tau1_hat, fit->tau2_hat, fit->a_stat, fit->var1, fit->var2};
        const auto [i1, i2] = asymptotic_ci(core, gamma);
        *ci1 = {i1.lower, i1.upper, i1.level};
        *ci2 = {i2.lower, i2.upper, i2.level};
    });
}

/* ---- Bayesian inference ---- */

int iatpcs_posterior_params(const iatpcs_sample* sample, const iatpcs_gamma_prior* prior,
                            int a_mode, iatpcs_posterior* out) {
    return guarded([&] {
        require(sample != nullptr && prior != nullptr && out != nullptr,
                "arguments must not be null");
        const PosteriorParams post = posterior(
            sample->impl, GammaPrior{prior->a, prior->b, prior->c, prior->d}, a_mode_of(a_mode));
        *out = {post.shape1, post.rate1, post.shape2, post.rate2};
    });
}

int iatpcs_estimate_self(const iatpcs_posterior* post, double* tau1, double* tau2) {
    return guarded([&] {
        require(tau1 != nullptr && tau2 != nullptr, "outputs must not be null");
        std::tie(*tau1, *tau2) = estimate_self(posterior_of(post));
    });
}

int iatpcs_estimate_linex(const iatpcs_posterior* post, double p, double* tau1, double* tau2) {
    return guarded([&] {
        require(tau1 != nullptr && tau2 != nullptr, "outputs must not be null");
        std::tie(*tau1, *tau2) = estimate_linex(posterior_of(post), p);
    });
}

int iatpcs_estimate_gelf(const iatpcs_posterior* post, double q, double* tau1, double* tau2) {
    return guarded([&] {
        require(tau1 != nullptr && tau2 != nullptr, "outputs must not be null");
        std::tie(*tau1, *tau2) = estimate_gelf(posterior_of(post), q);
    });
}

int iatpcs_sample_posterior(const iatpcs_posterior* post, int n_draws, uint64_t seed,
                            double* tau1_draws, double* tau2_draws) {
    return guarded([&] {
        require(tau1_draws != nullptr && tau2_draws != nullptr, "outputs must not be null");
        Rng rng(seed);
        const PosteriorDraws draws = sample_posterior(posterior_of(post), n_draws, rng);
        std::memcpy(tau1_draws, draws.tau1.data(), draws.tau1.size() * sizeof(double));
        std::memcpy(tau2_draws, draws.tau2.data(), draws.tau2.size() * sizeof(double));
    });
}

int iatpcs_hpd(const double* draws, int n, double gamma, iatpcs_interval* out) {
    return guarded([&] {
        require(draws != nullptr && out != nullptr, "arguments must not be null");
        require(n >= 0, "n must be nonnegative");
        const IntervalEstimate iv = hpd(std::vector<double>(draws, draws + n), gamma);
        *out = {iv.lower, iv.upper, iv.level};
    });
}

int iatpcs_posterior_hpd(const iatpcs_posterior* post, int n_draws, double gamma, uint64_t seed,
                         iatpcs_interval* hpd1, iatpcs_interval* hpd2) {
    return guarded([&] {
        require(hpd1 != nullptr && hpd2 != nullptr, "outputs must not be null");
        Rng rng(seed);
        const PosteriorDraws draws = sample_posterior(posterior_of(post), n_draws, rng);
        const IntervalEstimate i1 = hpd(draws.tau1, gamma);
        const IntervalEstimate i2 = hpd(draws.tau2, gamma);
        *hpd1 = {i1.lower, i1.upper, i1.level};
        *hpd2 = {i2.lower, i2.upper, i2.level};
    });
}

/* ---- replication studies ---- */

int iatpcs_simulate(const iatpcs_plan* plan, const char* scheme_label, double tau1, double tau2,
                    int reps, const iatpcs_gamma_prior* priors, const char* const* prior_labels,
                    int n_priors, const iatpcs_loss* losses, int n_losses, double level,
                    int hpd_draws, uint64_t seed, int a_mode, int threads, iatpcs_sim** out) {
    return guarded([&] {
        require(plan != nullptr && out != nullptr, "arguments must not be null");
        require(n_priors >= 0 && n_losses >= 0, "counts must be nonnegative");
        require(n_priors == 0 || (priors != nullptr && prior_labels != nullptr),
                "priors and labels must be provided");
        require(n_losses == 0 || losses != nullptr, "losses must be provided");

        SimConfig cfg;
        cfg.plan = plan->impl;
        cfg.rates = {tau1, tau2};
        cfg.reps = reps;
        cfg.level = level;
        cfg.hpd_draws = hpd_draws;
        cfg.seed = seed;
        cfg.a_mode = a_mode_of(a_mode);
        cfg.threads = threads;
        cfg.scheme_label = scheme_label ? scheme_label : "custom";
        for (int i = 0; i < n_priors; ++i) {
            require(prior_labels[i] != nullptr, "prior labels must not be null");
            cfg.priors.push_back(
                {prior_labels[i], {priors[i].a, priors[i].b, priors[i].c, priors[i].d}});
        }
        for (int i = 0; i < n_losses; ++i) {
            switch (losses[i].kind) {
                case IATPCS_LOSS_SELF:
                    cfg.losses.push_back(make_self());
                    break;
                case IATPCS_LOSS_LINEX:
                    cfg.losses.push_back(make_linex(losses[i].param));
                    break;
                case IATPCS_LOSS_GELF:
                    cfg.losses.push_back(make_gelf(losses[i].param));
                    break;
                default:
                    throw_validation("unknown loss kind");
            }
        }
        auto sim = std::make_unique<iatpcs_sim>();
        sim->impl = run(cfg);
        *out = sim.release();
    });
}

void iatpcs_sim_free(iatpcs_sim* sim) { delete sim; }

int iatpcs_sim_skipped(const iatpcs_sim* sim, long* skipped) {
    return guarded([&] {
        require(sim != nullptr && skipped != nullptr, "arguments must not be null");
        *skipped = sim->impl.skipped;
    });
}

int iatpcs_sim_point_stats(const iatpcs_sim* sim, const char* estimator, int param,
                           double* average, double* mse, double* mse_stderr) {
    return guarded([&] {
        require(sim != nullptr && estimator != nullptr, "arguments must not be null");
        require(param == 1 || param == 2, "param must be 1 or 2");
        for (const auto& est : sim->impl.points) {
            if (est.name == estimator) {
                const ParamStats& ps = est.tau[param - 1];
                if (average) *average = ps.average;
                if (mse) *mse = ps.mse;
                if (mse_stderr) *mse_stderr = ps.mse_stderr;
                return;
            }
        }
        throw_validation(std::string("no estimator named '") + estimator + "' in this simulation");
    });
}

int iatpcs_sim_interval_stats(const iatpcs_sim* sim, const char* method, int param,
                              double* avg_lower, double* avg_upper, double* avg_length,
                              double* coverage) {
    return guarded([&] {
        require(sim != nullptr && method != nullptr, "arguments must not be null");
        require(param == 1 || param == 2, "param must be 1 or 2");
        for (const auto& iv : sim->impl.intervals) {
            if (iv.name == method) {
                const IntervalParamStats& ps = iv.tau[param - 1];
                if (avg_lower) *avg_lower = ps.avg_lower;
                if (avg_upper) *avg_upper = ps.avg_upper;
                if (avg_length) *avg_length = ps.avg_length;
                if (coverage) *coverage = ps.coverage;
                return;
            }
        }
        throw_validation(std::string("no interval method named '") + method +
                         "' in this simulation");
    });
}

int iatpcs_sim_render(const iatpcs_sim* sim, int what, int format, int with_header, char** out) {
    return guarded([&] {
        require(sim != nullptr && out != nullptr, "arguments must not be null");
        const SummaryRows rows = summarize(sim->impl);
        std::string text;
        if (what == IATPCS_TABLE_POINTS && format == IATPCS_FORMAT_CSV) {
            text = points_csv(rows.points, with_header != 0);
        } else if (what == IATPCS_TABLE_POINTS && format == IATPCS_FORMAT_MARKDOWN) {
            text = points_markdown(rows.points);
        } else if (what == IATPCS_TABLE_INTERVALS && format == IATPCS_FORMAT_CSV) {
            text = intervals_csv(rows.intervals, with_header != 0);
        } else if (what == IATPCS_TABLE_INTERVALS && format == IATPCS_FORMAT_MARKDOWN) {
            text = intervals_markdown(rows.intervals);
        } else {
            throw_validation("unknown table selector or format");
        }
        *out = dup_string(text);
    });
}

} /* extern "C" */
