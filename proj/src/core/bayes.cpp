#include "core/bayes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "core/errors.hpp"
#include "core/special.hpp"

namespace iatpcs {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

}  // namespace

std::string LossSpec::name() const {
    switch (kind) {
        case Kind::self:
            return "SELF";
        case Kind::linex:
            return "LINEX(p=" + fmt(param) + ")";
        case Kind::gelf:
            return "GELF(q=" + fmt(param) + ")";
    }
    return "?";
}

LossSpec make_self() { return {LossSpec::Kind::self, 0.0}; }

LossSpec make_linex(double p) {
    if (p == 0.0) throw_validation("linex loss requires p != 0");
    return {LossSpec::Kind::linex, p};
}

LossSpec make_gelf(double q) {
    if (q == 0.0) throw_validation("gelf loss requires q != 0");
    return {LossSpec::Kind::gelf, q};
}

PosteriorParams posterior(const IatSample& sample, const GammaPrior& prior, AMode mode) {
    if (prior.a < 0 || prior.b < 0 || prior.c < 0 || prior.d < 0) {
        throw_validation("prior hyperparameters must be nonnegative");
    }
    const double a = stat_a(sample, mode);
    PosteriorParams post{prior.a + sample.d1, prior.b + a, prior.c + sample.d2, prior.d + a};
    if (!(post.shape1 > 0.0) || !(post.rate1 > 0.0)) {
        throw_nonexistent("posterior for tau1 is improper: needs a + D1 > 0 and b + A > 0");
    }
    if (!(post.shape2 > 0.0) || !(post.rate2 > 0.0)) {
        throw_nonexistent("posterior for tau2 is improper: needs c + D2 > 0 and d + A > 0");
    }
    return post;
}

std::pair<double, double> estimate_self(const PosteriorParams& post) {
    return {post.shape1 / post.rate1, post.shape2 / post.rate2};
}

std::pair<double, double> estimate_linex(const PosteriorParams& post, double p) {
    if (p == 0.0) throw_domain("linex estimate requires p != 0");
    auto one = [&](double shape, double rate, const char* which) {
        if (!(p > -rate)) {
            throw_nonexistent(std::string("linex estimate for ") + which +
                              " does not exist: requires p > -rate, p=" + fmt(p) +
                              ", rate=" + fmt(rate));
        }
        return -(shape / p) * std::log(rate / (rate + p));
    };
    return {one(post.shape1, post.rate1, "tau1"), one(post.shape2, post.rate2, "tau2")};
}

std::pair<double, double> estimate_gelf(const PosteriorParams& post, double q) {
    if (q == 0.0) throw_domain("gelf estimate requires q != 0");
    auto one = [&](double shape, double rate, const char* which) {
        if (!(q < shape)) {
            throw_nonexistent(std::string("gelf estimate for ") + which +
                              " does not exist: requires q < shape, q=" + fmt(q) +
                              ", shape=" + fmt(shape));
        }
        if (q == -1.0) return shape / rate;  // E[tau]^1, the posterior mean
        return std::exp(-(log_gamma(shape - q) - log_gamma(shape)) / q) / rate;
    };
    return {one(post.shape1, post.rate1, "tau1"), one(post.shape2, post.rate2, "tau2")};
}

std::pair<double, double> estimate_under(const PosteriorParams& post, const LossSpec& loss) {
    switch (loss.kind) {
        case LossSpec::Kind::self:
            return estimate_self(post);
        case LossSpec::Kind::linex:
            return estimate_linex(post, loss.param);
        case LossSpec::Kind::gelf:
            return estimate_gelf(post, loss.param);
    }
    throw_domain("unknown loss kind");
}

PosteriorDraws sample_posterior(const PosteriorParams& post, int n_draws, Rng& rng) {
    if (n_draws < 1) throw_validation("sample_posterior: n_draws must be >= 1");
    PosteriorDraws draws;
    draws.tau1.reserve(n_draws);
    draws.tau2.reserve(n_draws);
    for (int i = 0; i < n_draws; ++i) {
        draws.tau1.push_back(rng.gamma(post.shape1, post.rate1));
        draws.tau2.push_back(rng.gamma(post.shape2, post.rate2));
    }
    return draws;
}

IntervalEstimate hpd(std::vector<double> draws, double gamma) {
    const int n = static_cast<int>(draws.size());
    if (n < 2) throw_validation("hpd: needs at least two draws");
    if (!(gamma > 0.0) || !(gamma < 1.0)) throw_validation("hpd: gamma must lie in (0,1)");
    const int w = static_cast<int>(std::floor((1.0 - gamma) * n));
    if (w < 1) {
        throw_validation("hpd: too few draws for a window of length floor((1-gamma)N)");
    }
    std::sort(draws.begin(), draws.end());
    int best = 0;
    double best_width = draws[w] - draws[0];
    for (int j = 1; j + w < n; ++j) {
        const double width = draws[j + w] - draws[j];
        if (width < best_width) {
            best_width = width;
            best = j;
        }
    }
    return {draws[best], draws[best + w], 1.0 - gamma};
}

}  // namespace iatpcs
