#include "core/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "core/errors.hpp"
#include "core/special.hpp"

namespace iatpcs {

double stat_a(const IatSample& sample, AMode mode) {
    double acc = 0.0;
    for (int i = 0; i < sample.d(); ++i) {
        acc += (sample.removals[i] + 1) * sample.times[i];
    }
    const double terminal = (mode == AMode::paper) ? sample.t_star : sample.r_star * sample.t_star;
    return acc + terminal;
}

double log_likelihood(double tau1, double tau2, const IatSample& sample, AMode mode) {
    if (!(tau1 > 0.0) || !(tau2 > 0.0)) {
        throw_domain("log_likelihood: rates must be positive");
    }
    const double a = stat_a(sample, mode);
    double value = -(tau1 + tau2) * a;
    if (sample.d1 > 0) value += sample.d1 * std::log(tau1);
    if (sample.d2 > 0) value += sample.d2 * std::log(tau2);
    return value;
}

MleResult mle(const IatSample& sample, AMode mode) {
    if (sample.d1 == 0) {
        throw_nonexistent("MLE for tau1 does not exist: no cause-1 failures observed");
    }
    if (sample.d2 == 0) {
        throw_nonexistent("MLE for tau2 does not exist: no cause-2 failures observed");
    }
    const double a = stat_a(sample, mode);
    if (!(a > 0.0)) {
        throw_nonexistent("MLE does not exist: total time on test is not positive");
    }
    const double t1 = sample.d1 / a;
    const double t2 = sample.d2 / a;
    return {t1, t2, a, t1 * t1 / sample.d1, t2 * t2 / sample.d2};
}

std::pair<IntervalEstimate, IntervalEstimate> asymptotic_ci(const MleResult& fit, double gamma) {
    if (!(gamma > 0.0) || !(gamma < 1.0)) {
        throw_domain("asymptotic_ci: gamma must lie in (0,1)");
    }
    const double z = normal_quantile(1.0 - gamma / 2.0);
    const double level = 1.0 - gamma;
    auto build = [&](double hat, double var) {
        const double half = z * std::sqrt(var);
        return IntervalEstimate{std::max(0.0, hat - half), hat + half, level};
    };
    return {build(fit.tau1_hat, fit.var1), build(fit.tau2_hat, fit.var2)};
}

}  // namespace iatpcs
