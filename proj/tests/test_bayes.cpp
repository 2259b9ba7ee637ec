#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "core/bayes.hpp"
#include "core/errors.hpp"
#include "oracles.hpp"

using namespace iatpcs;

namespace {

IatSample toy_sample() {
    IatSample s;
    s.n = 7;
    s.m = 4;
    s.t1 = 3.2;
    s.t2 = 3.5;
    s.times = {1.0, 2.0, 3.0};
    s.causes = {1, 1, 2};
    s.removals = {1, 0, 0};
    s.censoring_case = {CaseTag::III, 3, 3};
    s.d1 = 2;
    s.d2 = 1;
    s.r_star = 2;
    s.t_star = 3.5;
    return s;
}

const PosteriorParams kPost{5.0, 15.5, 5.0, 15.5};

}  // namespace

TEST_CASE("posterior updates") {
    const IatSample s = toy_sample();  // D1=2, D2=1, A(paper)=10.5

    const PosteriorParams p0 = posterior(s, GammaPrior{}, AMode::paper);
    CHECK(p0.shape1 == 2.0);
    CHECK(p0.rate1 == 10.5);
    CHECK(p0.shape2 == 1.0);
    CHECK(p0.rate2 == 10.5);

    const PosteriorParams p1 = posterior(s, GammaPrior{3, 5, 4, 5}, AMode::paper);
    CHECK(p1.shape1 == 5.0);
    CHECK(p1.rate1 == 15.5);
    CHECK(p1.shape2 == 5.0);
    CHECK(p1.rate2 == 15.5);
}

TEST_CASE("improper posterior is rejected with the offending cause") {
    IatSample s = toy_sample();
    s.causes = {2, 2, 2};
    s.d1 = 0;
    s.d2 = 3;
    CHECK_THROWS_WITH_AS(posterior(s, GammaPrior{}, AMode::paper), doctest::Contains("tau1"),
                         Error);
    CHECK_THROWS_AS(posterior(s, GammaPrior{-1, 0, 0, 0}, AMode::paper), Error);
}

TEST_CASE("squared error estimate is the posterior mean") {
    const auto [e1, e2] = estimate_self(kPost);
    CHECK(e1 == doctest::Approx(0.32258064516129032).epsilon(1e-15));
    CHECK(e2 == e1);
    const auto [u1, u2] = estimate_self(PosteriorParams{1, 1, 1, 1});
    CHECK(u1 == 1.0);
    CHECK(u2 == 1.0);
}

TEST_CASE("non-informative SELF estimate equals the MLE exactly") {
    const IatSample s = toy_sample();
    const MleResult fit = mle(s, AMode::paper);
    const auto [e1, e2] = estimate_self(posterior(s, GammaPrior{}, AMode::paper));
    CHECK(e1 == fit.tau1_hat);
    CHECK(e2 == fit.tau2_hat);
}

TEST_CASE("linex estimates") {
    const auto [a1, a2] = estimate_linex(kPost, 0.5);
    CHECK(a1 == doctest::Approx(0.31748698314580301).epsilon(1e-12));
    const auto [b1, b2] = estimate_linex(kPost, -0.05);
    CHECK(b1 == doctest::Approx(0.32310205814464678).epsilon(1e-12));

    // p -> 0 recovers the posterior mean
    const auto [self1, self2] = estimate_self(kPost);
    const auto [c1, c2] = estimate_linex(kPost, 1e-6);
    CHECK(std::abs(c1 - self1) < 1e-6);
    CHECK(std::abs(c2 - self2) < 1e-6);

    CHECK_THROWS_AS(estimate_linex(kPost, 0.0), Error);
    CHECK_THROWS_AS(estimate_linex(kPost, -15.5), Error);
    CHECK_THROWS_AS(estimate_linex(kPost, -20.0), Error);
}

TEST_CASE("gelf estimates") {
    const auto [a1, a2] = estimate_gelf(kPost, 0.5);
    CHECK(a1 == doctest::Approx(0.27466434102621337).epsilon(1e-12));
    CHECK(a2 == a1);

    // q = -1 is exactly the posterior mean
    const auto [self1, self2] = estimate_self(kPost);
    const auto [b1, b2] = estimate_gelf(kPost, -1.0);
    CHECK(b1 == self1);
    CHECK(b2 == self2);

    // q -> 0 approaches the posterior geometric mean exp(E log tau)
    const auto [c1, c2] = estimate_gelf(kPost, 1e-6);
    CHECK(std::abs(c1 - 0.29091552225270161) < 1e-5);

    CHECK_THROWS_AS(estimate_gelf(kPost, 0.0), Error);
    CHECK_THROWS_AS(estimate_gelf(kPost, 5.0), Error);
    CHECK_THROWS_AS(estimate_gelf(kPost, 6.5), Error);
}

TEST_CASE("gelf is nonincreasing in q") {
    double prev = std::numeric_limits<double>::infinity();
    for (double q : {-2.0, -1.0, -0.5, -0.05, 0.05, 0.5, 1.0, 2.0}) {
        const auto [e1, e2] = estimate_gelf(kPost, q);
        CHECK(e1 <= prev + 1e-12);
        prev = e1;
    }
}

TEST_CASE("loss spec validation and naming") {
    CHECK_THROWS_AS(make_linex(0.0), Error);
    CHECK_THROWS_AS(make_gelf(0.0), Error);
    CHECK(make_self().name() == "SELF");
    CHECK(make_linex(0.5).name() == "LINEX(p=0.5)");
    CHECK(make_gelf(-0.05).name() == "GELF(q=-0.05)");
}

TEST_CASE("closed forms match quadrature of the posterior") {
    Rng rng(314);
    for (int trial = 0; trial < 25; ++trial) {
        const double shape = 0.8 + 25.0 * rng.uniform();
        const double rate = 0.5 + 30.0 * rng.uniform();
        const PosteriorParams post{shape, rate, shape, rate};

        const double self_quad =
            oracles::gamma_expect(shape, rate, [](double t) { return t; }, 1.0, 0.0);
        CHECK(estimate_self(post).first == doctest::Approx(self_quad).epsilon(1e-6));

        for (double p : {-0.05, 0.5}) {
            const double mgf = oracles::gamma_expect(
                shape, rate, [p](double t) { return std::exp(-p * t); }, 0.0, p);
            const double quad = -std::log(mgf) / p;
            CHECK(estimate_linex(post, p).first == doctest::Approx(quad).epsilon(1e-6));
        }
        for (double q : {-0.05, 0.5}) {
            if (q >= shape) continue;
            const double moment = oracles::gamma_expect(
                shape, rate, [q](double t) { return std::pow(t, -q); }, -q, 0.0);
            const double quad = std::pow(moment, -1.0 / q);
            CHECK(estimate_gelf(post, q).first == doctest::Approx(quad).epsilon(1e-6));
        }
    }
}

TEST_CASE("marginal posterior is log-concave for shape > 1") {
    for (double shape : {1.5, 4.0, 12.0}) {
        for (double rate : {0.5, 15.5}) {
            auto logpdf = [&](double t) { return (shape - 1.0) * std::log(t) - rate * t; };
            const double h = 1e-5;
            for (double t = 0.05; t < 3.0; t += 0.15) {
                const double d2 =
                    (logpdf(t + h) - 2.0 * logpdf(t) + logpdf(t - h)) / (h * h);
                CHECK(d2 < 0.0);
            }
        }
    }
}

TEST_CASE("posterior sampling calibration") {
    const int n = 100000;
    struct Config {
        double shape, rate;
    };
    for (const Config& c : {Config{0.5, 1.0}, Config{1.0, 1.0}, Config{5.0, 15.5}}) {
        CAPTURE(c.shape);
        Rng rng(substream_seed(9090, static_cast<std::uint64_t>(c.shape * 8)));
        double sum = 0.0, sumsq = 0.0;
        for (int i = 0; i < n; ++i) {
            const double x = rng.gamma(c.shape, c.rate);
            sum += x;
            sumsq += x * x;
        }
        const double mean = sum / n;
        const double var = sumsq / n - mean * mean;
        const double true_mean = c.shape / c.rate;
        const double true_var = c.shape / (c.rate * c.rate);
        const double se_mean = std::sqrt(true_var / n);
        // Var(s^2) ~ sigma^4 (2 + excess kurtosis) / n, excess = 6/shape
        const double se_var = true_var * std::sqrt((2.0 + 6.0 / c.shape) / n);
        CHECK(std::abs(mean - true_mean) <= 4.0 * se_mean);
        CHECK(std::abs(var - true_var) <= 4.0 * se_var);
    }
}

TEST_CASE("posterior draws: mean and determinism") {
    Rng rng(12);
    const PosteriorDraws draws = sample_posterior(kPost, 100000, rng);
    double sum = 0.0;
    for (double x : draws.tau1) sum += x;
    const double mean = sum / draws.tau1.size();
    const double se = std::sqrt(5.0 / (15.5 * 15.5) / draws.tau1.size());
    CHECK(std::abs(mean - 0.32258064516129032) <= 3.0 * se);

    Rng r1(34), r2(34);
    const PosteriorDraws a = sample_posterior(kPost, 512, r1);
    const PosteriorDraws b = sample_posterior(kPost, 512, r2);
    CHECK(a.tau1 == b.tau1);
    CHECK(a.tau2 == b.tau2);
}

TEST_CASE("exponential special case of the posterior sampler") {
    // Gamma(1, 2) is Exp(2); its median is log(2)/2
    Rng rng(77);
    const PosteriorParams post{1.0, 2.0, 1.0, 2.0};
    PosteriorDraws draws = sample_posterior(post, 100000, rng);
    std::sort(draws.tau1.begin(), draws.tau1.end());
    const double median = draws.tau1[draws.tau1.size() / 2];
    // asymptotic se of the sample median: 1/(2 f(med) sqrt(n)), f(med) = 1
    const double se = 1.0 / (2.0 * std::sqrt(100000.0));
    CHECK(std::abs(median - 0.34657359027997265) <= 4.0 * se);
}

TEST_CASE("hpd window on evenly spaced values") {
    std::vector<double> draws(100);
    for (int i = 0; i < 100; ++i) draws[i] = i + 1.0;
    const IntervalEstimate iv = hpd(draws, 0.05);
    // all windows tie at width 95; the smallest index wins
    CHECK(iv.lower == 1.0);
    CHECK(iv.upper == 96.0);
    CHECK(iv.level == 0.95);
}

TEST_CASE("hpd minimality and coverage of the mode") {
    Rng rng(55);
    PosteriorDraws draws = sample_posterior(kPost, 100000, rng);
    const IntervalEstimate iv = hpd(draws.tau1, 0.05);

    // contains the posterior mode (shape-1)/rate
    const double mode = 0.25806451612903226;
    CHECK(iv.lower <= mode);
    CHECK(mode <= iv.upper);

    // no window of the same length is shorter
    std::vector<double> sorted = draws.tau1;
    std::sort(sorted.begin(), sorted.end());
    const int n = static_cast<int>(sorted.size());
    const int w = static_cast<int>(std::floor(0.95 * n));
    const double width = iv.upper - iv.lower;
    for (int j = 0; j + w < n; j += 97) {
        CHECK(width <= sorted[j + w] - sorted[j] + 1e-15);
    }

    // no longer than the equal-tailed interval on the same draws
    const double eq_lo = sorted[static_cast<int>(0.025 * n)];
    const double eq_hi = sorted[static_cast<int>(0.975 * n)];
    CHECK(width <= eq_hi - eq_lo + 1e-15);
}

TEST_CASE("hpd input validation") {
    CHECK_THROWS_AS(hpd({1.0}, 0.05), Error);
    CHECK_THROWS_AS(hpd({1.0, 2.0}, 0.6), Error);  // window length floor(0.4*2) = 0
    std::vector<double> ten(10, 0.0);
    for (int i = 0; i < 10; ++i) ten[i] = i;
    CHECK_THROWS_AS(hpd(ten, 1.0), Error);
    CHECK_THROWS_AS(hpd(ten, 0.0), Error);
    CHECK_NOTHROW(hpd(ten, 0.05));
}

TEST_CASE("sample_posterior validates n_draws") {
    Rng rng(1);
    CHECK_THROWS_AS(sample_posterior(kPost, 0, rng), Error);
}
