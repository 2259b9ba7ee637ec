#pragma once

namespace iatpcs {

// Hazard rates of the two latent exponential failure causes. The observed
// lifetime of a unit is the minimum of its two latent times and the cause
// indicator records which one attained it.
struct RatePair {
    double tau1;  // cause-1 hazard, per unit time
    double tau2;  // cause-2 hazard, per unit time
};

// Throws a domain error unless both rates are finite and positive.
void validate(const RatePair& rates);

// F_j(x) = 1 - exp(-tau_j x), cause in {1,2}, x >= 0.
double cdf(int cause, double x, const RatePair& rates);

// S_j(x) = exp(-tau_j x). Evaluated directly rather than as 1 - cdf to
// avoid cancellation for small tau*x.
double survival(int cause, double x, const RatePair& rates);

// Constant hazard tau_j.
double hazard(int cause, double x, const RatePair& rates);

// Law of the observed minimum: it is exponential with rate tau1+tau2, and
// independently of the time the failing cause is 1 with probability
// tau1/(tau1+tau2).
struct MinLaw {
    double total_rate;
    double cause1_prob;
};

MinLaw min_law(const RatePair& rates);

}  // namespace iatpcs
