#include "core/censoring.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "core/errors.hpp"

namespace iatpcs {

namespace {

void finalize(IatSample& s) {
    s.censoring_case = classify(s.times, s.m, s.t1, s.t2);
    s.d1 = static_cast<int>(std::count(s.causes.begin(), s.causes.end(), 1));
    s.d2 = s.d() - s.d1;
}

}  // namespace

CensoringPlan make_plan(int n, int m, std::vector<int> removals, double t1, double t2) {
    if (m < 1 || m > n) {
        throw_validation("plan requires 1 <= m <= n, got m=" + std::to_string(m) +
                         ", n=" + std::to_string(n));
    }
    if (static_cast<int>(removals.size()) != m) {
        throw_validation("removal vector must have m=" + std::to_string(m) +
                         " entries, got " + std::to_string(removals.size()));
    }
    for (int r : removals) {
        if (r < 0) throw_validation("removals must be nonnegative");
    }
    const int total = std::accumulate(removals.begin(), removals.end(), 0);
    if (total != n - m) {
        throw_validation("removals must sum to n-m=" + std::to_string(n - m) +
                         ", got " + std::to_string(total));
    }
    if (!(t1 > 0.0) || !(t1 < t2) || !std::isfinite(t1) || !std::isfinite(t2)) {
        throw_validation("thresholds must satisfy 0 < t1 < t2");
    }
    return CensoringPlan{n, m, std::move(removals), t1, t2};
}

std::vector<int> scheme_removals(Scheme scheme, int n, int m) {
    if (m < 1 || m > n) {
        throw_validation("scheme requires 1 <= m <= n, got m=" + std::to_string(m) +
                         ", n=" + std::to_string(n));
    }
    std::vector<int> r(m, 0);
    switch (scheme) {
        case Scheme::I:
            r[m - 1] = n - m;
            break;
        case Scheme::II:
            if (n < 2 * m - 1) {
                throw_validation("scheme II requires n >= 2m-1 (n=" + std::to_string(n) +
                                 ", m=" + std::to_string(m) + ")");
            }
            std::fill(r.begin(), r.end() - 1, 1);
            r[m - 1] = n - 2 * m + 1;
            break;
        case Scheme::III:
            if ((n - m) % m != 0) {
                throw_validation("scheme III requires m to divide n-m (n=" + std::to_string(n) +
                                 ", m=" + std::to_string(m) + ")");
            }
            std::fill(r.begin(), r.end(), (n - m) / m);
            break;
    }
    return r;
}

CaseInfo classify(std::span<const double> times, int m, double t1, double t2) {
    if (m < 1) throw_validation("classify: m must be positive");
    if (!(t1 > 0.0) || !(t1 < t2)) throw_validation("classify: thresholds must satisfy 0 < t1 < t2");
    for (std::size_t i = 1; i < times.size(); ++i) {
        if (!(times[i] > times[i - 1])) {
            throw_validation("failure times must be strictly increasing (violation at index " +
                             std::to_string(i) + ")");
        }
    }
    int k1 = 0, k2 = 0;
    for (double t : times) {
        if (t < t1) ++k1;
        if (t < t2) ++k2;
    }
    if (static_cast<int>(times.size()) >= m) {
        const double xm = times[m - 1];
        if (xm < t1) return {CaseTag::I, k1, k2};
        if (xm < t2) return {CaseTag::II, k1, k2};
    }
    return {CaseTag::III, k1, k2};
}

IatSample generate(const CensoringPlan& plan, const RatePair& rates, Rng& rng) {
    validate(rates);
    const MinLaw law = min_law(rates);

    IatSample s;
    s.n = plan.n;
    s.m = plan.m;
    s.t1 = plan.t1;
    s.t2 = plan.t2;
    s.times.reserve(plan.m);
    s.causes.reserve(plan.m);
    s.removals.reserve(plan.m);

    int active = plan.n;
    double t = 0.0;
    while (s.d() < plan.m) {
        const double candidate = t + rng.exponential(active * law.total_rate);
        if (!(candidate < plan.t2)) {
            // next failure would land past t2: stop there
            s.t_star = plan.t2;
            s.r_star = active;
            finalize(s);
            return s;
        }
        t = candidate;
        s.times.push_back(t);
        s.causes.push_back(rng.uniform() < law.cause1_prob ? 1 : 2);
        --active;
        int removed = 0;
        if (t < plan.t1) {
            removed = std::min(plan.removals[s.d() - 1], active);
            active -= removed;
        }
        s.removals.push_back(removed);
    }
    s.t_star = t;       // m-th failure time
    s.r_star = active;  // zero in Case I, survivors otherwise
    finalize(s);
    return s;
}

IatSample replay(const CensoringPlan& plan, std::span<const double> times,
                 std::span<const int> causes) {
    if (times.size() != causes.size()) {
        throw_validation("replay: times and causes must have equal length");
    }
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!(times[i] > 0.0)) throw_validation("replay: failure times must be positive");
        if (causes[i] != 1 && causes[i] != 2) throw_validation("replay: causes must be 1 or 2");
        if (i > 0 && !(times[i] > times[i - 1])) {
            throw_validation("replay: failure times must be strictly increasing");
        }
    }
    if (static_cast<int>(times.size()) > plan.m) {
        throw_validation("replay: dataset has " + std::to_string(times.size()) +
                         " failures but the plan allows at most m=" + std::to_string(plan.m));
    }

    // Failures at or beyond t2 cannot have been observed.
    int kept = 0;
    while (kept < static_cast<int>(times.size()) && times[kept] < plan.t2) ++kept;
    if (kept < plan.m && kept == static_cast<int>(times.size())) {
        throw_validation("replay: dataset ends after " + std::to_string(kept) +
                         " failures without reaching m=" + std::to_string(plan.m) +
                         " or threshold t2");
    }

    IatSample s;
    s.n = plan.n;
    s.m = plan.m;
    s.t1 = plan.t1;
    s.t2 = plan.t2;
    s.times.assign(times.begin(), times.begin() + kept);
    s.causes.assign(causes.begin(), causes.begin() + kept);
    s.removals.resize(kept, 0);

    int active = plan.n;
    for (int i = 0; i < kept; ++i) {
        if (active < 1) {
            throw_validation("replay: failure " + std::to_string(i + 1) +
                             " recorded with no units left on test");
        }
        --active;
        if (s.times[i] < plan.t1) {
            s.removals[i] = std::min(plan.removals[i], active);
            active -= s.removals[i];
        }
    }
    s.r_star = active;
    s.t_star = (kept == plan.m) ? s.times.back() : plan.t2;
    finalize(s);
    return s;
}

}  // namespace iatpcs
