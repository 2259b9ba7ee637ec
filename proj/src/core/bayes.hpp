#pragma once

#include <string>
#include <utility>
#include <vector>

#include "core/estimate.hpp"
#include "core/rng.hpp"

namespace iatpcs {

// Independent gamma priors tau1 ~ Gamma(a,b), tau2 ~ Gamma(c,d) in
// shape/rate form. All-zero hyperparameters give the (improper)
// non-informative prior.
struct GammaPrior {
    double a = 0.0, b = 0.0;  // cause 1
    double c = 0.0, d = 0.0;  // cause 2
};

// The posterior factorizes into two independent gammas:
//   tau1 | data ~ Gamma(a + D1, b + A),  tau2 | data ~ Gamma(c + D2, d + A).
struct PosteriorParams {
    double shape1, rate1;
    double shape2, rate2;
};

// Point-estimator selection for reporting layers.
struct LossSpec {
    enum class Kind { self, linex, gelf };
    Kind kind = Kind::self;
    double param = 0.0;  // linex p or gelf q; must be nonzero for those kinds

    std::string name() const;
};

LossSpec make_self();
LossSpec make_linex(double p);  // p != 0
LossSpec make_gelf(double q);   // q != 0

PosteriorParams posterior(const IatSample& sample, const GammaPrior& prior, AMode mode);

// Posterior means, the Bayes rule under squared error loss.
std::pair<double, double> estimate_self(const PosteriorParams& post);

// Bayes rule under the linex loss exp(p e) - p e - 1:
//   -(shape/p) log(rate / (rate + p)),  requires p > -rate.
std::pair<double, double> estimate_linex(const PosteriorParams& post, double p);

// Bayes rule under the generalized entropy loss, [E(tau^-q)]^(-1/q):
//   [rate^q Gamma(shape - q) / Gamma(shape)]^(-1/q),  requires q < shape.
// At q = -1 this is algebraically the posterior mean and is returned as
// such, exactly.
std::pair<double, double> estimate_gelf(const PosteriorParams& post, double q);

// Dispatch on a LossSpec.
std::pair<double, double> estimate_under(const PosteriorParams& post, const LossSpec& loss);

struct PosteriorDraws {
    std::vector<double> tau1;
    std::vector<double> tau2;
};

// n_draws independent draws from each marginal posterior.
PosteriorDraws sample_posterior(const PosteriorParams& post, int n_draws, Rng& rng);

// Highest-posterior-density interval from a sample of draws: among the
// sorted values s, the window of length w = floor((1-gamma) N) with the
// smallest width, ties resolved toward the smallest index.
IntervalEstimate hpd(std::vector<double> draws, double gamma);

}  // namespace iatpcs
