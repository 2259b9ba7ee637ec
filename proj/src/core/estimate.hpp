#pragma once

#include <utility>

#include "core/censoring.hpp"

namespace iatpcs {

// The total-time-on-test statistic A comes in two flavours. `paper`
// follows the source formula literally: A = sum (r_i + 1) x_i + T*, with
// the terminal term unweighted. `corrected` weights the terminal term by
// the number of units withdrawn at termination, A = sum (r_i+1) x_i +
// R* T*, which is the exposure actually accumulated by the survivors.
enum class AMode { paper = 0, corrected = 1 };

double stat_a(const IatSample& sample, AMode mode);

// D1 log tau1 + D2 log tau2 - (tau1 + tau2) A
double log_likelihood(double tau1, double tau2, const IatSample& sample, AMode mode);

struct MleResult {
    double tau1_hat;
    double tau2_hat;
    double a_stat;
    double var1;  // tau1_hat^2 / d1, inverse observed information
    double var2;  // tau2_hat^2 / d2
};

// Closed-form maximum likelihood estimates tau_j = D_j / A. Requires at
// least one observed failure per cause; otherwise throws a nonexistence
// error naming the missing cause.
MleResult mle(const IatSample& sample, AMode mode);

struct IntervalEstimate {
    double lower;
    double upper;
    double level;  // nominal coverage, e.g. 0.95
};

// Normal-approximation confidence intervals tau_hat -/+ z_{gamma/2} sd.
// Lower bounds are clamped at zero.
std::pair<IntervalEstimate, IntervalEstimate> asymptotic_ci(const MleResult& fit, double gamma);

}  // namespace iatpcs
