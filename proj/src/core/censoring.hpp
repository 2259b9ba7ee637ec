#pragma once

#include <span>
#include <vector>

#include "core/model.hpp"
#include "core/rng.hpp"

namespace iatpcs {

// Experiment design for the improved adaptive progressive type-II scheme:
// n units on test, m target failures, a planned removal vector, and two
// time thresholds 0 < t1 < t2. Planned removals are executed only at
// failures observed strictly before t1; after t1 failures accrue without
// removals and the test hard-stops at min(m-th failure, t2), withdrawing
// every survivor.
struct CensoringPlan {
    int n = 0;
    int m = 0;
    std::vector<int> removals;  // size m, nonnegative, sums to n - m
    double t1 = 0.0;
    double t2 = 0.0;
};

// Validating factory; throws a validation error naming the violated
// invariant.
CensoringPlan make_plan(int n, int m, std::vector<int> removals, double t1, double t2);

// The three standard removal patterns used in design comparisons.
enum class Scheme { I = 1, II = 2, III = 3 };

// Scheme I:   R_1..R_{m-1} = 0,  R_m = n - m
// Scheme II:  R_1..R_{m-1} = 1,  R_m = n - 2m + 1   (needs n >= 2m - 1)
// Scheme III: R_i = (n - m)/m for all i             (needs m | n - m)
std::vector<int> scheme_removals(Scheme scheme, int n, int m);

// Terminal configuration of a realized experiment.
//   Case I:   the m-th failure happened before t1
//   Case II:  the m-th failure happened in [t1, t2)
//   Case III: the test reached t2 with fewer than m failures
enum class CaseTag { I = 1, II = 2, III = 3 };

struct CaseInfo {
    CaseTag tag;
    int k1;  // failures strictly before t1
    int k2;  // failures strictly before t2
};

// Classifies a strictly increasing failure-time sequence. Throws a
// validation error if the sequence is not strictly increasing.
CaseInfo classify(std::span<const double> times, int m, double t1, double t2);

// One realized sample. `removals` holds the removals that actually
// happened (planned value before t1, zero after); r_star counts the units
// withdrawn at termination, so d() + sum(removals) + r_star == n.
struct IatSample {
    int n = 0;
    int m = 0;
    double t1 = 0.0;
    double t2 = 0.0;
    std::vector<double> times;   // strictly increasing
    std::vector<int> causes;     // 1 or 2, aligned with times
    std::vector<int> removals;   // effective removals, aligned with times
    CaseInfo censoring_case{CaseTag::I, 0, 0};
    int d1 = 0;
    int d2 = 0;
    int r_star = 0;
    double t_star = 0.0;

    int d() const { return static_cast<int>(times.size()); }
};

// Draws one sample by sequential simulation of exponential minima: with a
// active units the gap to the next failure is Exp(a*(tau1+tau2)) and the
// failing cause is 1 with probability tau1/(tau1+tau2), independently.
// Never fails for a valid plan; extreme realizations may have d() == 0.
IatSample generate(const CensoringPlan& plan, const RatePair& rates, Rng& rng);

// Reinterprets an already-observed failure sequence (e.g. a recorded
// progressive sample) under the plan's thresholds: failures at or beyond
// t2 are dropped, removals are zeroed from t1 on, and r_star / t_star are
// recomputed. Planned removals larger than the units still on test are
// truncated. Throws a validation error if the data cannot have arisen
// under the plan.
IatSample replay(const CensoringPlan& plan, std::span<const double> times,
                 std::span<const int> causes);

}  // namespace iatpcs
