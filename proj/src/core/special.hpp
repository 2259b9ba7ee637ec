#pragma once

namespace iatpcs {

// log Gamma(x) for x > 0, Lanczos approximation (g=7, 9 terms).
// Relative error is well below 1e-10 over the positive axis.
double log_gamma(double x);

// Standard normal CDF.
double normal_cdf(double x);

// Inverse standard normal CDF on (0,1). Acklam's rational approximation
// polished with one Halley step; absolute error <= 1e-8.
double normal_quantile(double p);

}  // namespace iatpcs
