#include "core/model.hpp"

#include <cmath>
#include <string>

#include "core/errors.hpp"

namespace iatpcs {

namespace {

double rate_of(int cause, const RatePair& rates) {
    if (cause != 1 && cause != 2) {
        throw_domain("cause must be 1 or 2, got " + std::to_string(cause));
    }
    return cause == 1 ? rates.tau1 : rates.tau2;
}

void check_nonnegative(double x) {
    if (!(x >= 0.0)) {
        throw_domain("time must be nonnegative, got " + std::to_string(x));
    }
}

}  // namespace

void validate(const RatePair& rates) {
    if (!(rates.tau1 > 0.0) || !std::isfinite(rates.tau1) ||
        !(rates.tau2 > 0.0) || !std::isfinite(rates.tau2)) {
        throw_domain("hazard rates must be finite and positive");
    }
}

double cdf(int cause, double x, const RatePair& rates) {
    validate(rates);
    check_nonnegative(x);
    // expm1 keeps precision for small tau*x
    return -std::expm1(-rate_of(cause, rates) * x);
}

double survival(int cause, double x, const RatePair& rates) {
    validate(rates);
    check_nonnegative(x);
    return std::exp(-rate_of(cause, rates) * x);
}

double hazard(int cause, double x, const RatePair& rates) {
    validate(rates);
    check_nonnegative(x);
    return rate_of(cause, rates);
}

MinLaw min_law(const RatePair& rates) {
    validate(rates);
    const double total = rates.tau1 + rates.tau2;
    return {total, rates.tau1 / total};
}

}  // namespace iatpcs
