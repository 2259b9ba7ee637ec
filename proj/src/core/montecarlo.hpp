#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/bayes.hpp"
#include "core/censoring.hpp"
#include "core/estimate.hpp"

namespace iatpcs {

struct LabeledPrior {
    std::string label;
    GammaPrior prior;
};

struct SimConfig {
    CensoringPlan plan;
    RatePair rates{1.0, 1.0};                // true values
    int reps = 1;
    std::vector<LabeledPrior> priors;        // may be empty (classical only)
    std::vector<LossSpec> losses;            // applied to every prior
    double level = 0.95;                     // nominal interval coverage
    int hpd_draws = 5000;
    std::uint64_t seed = 0;
    AMode a_mode = AMode::paper;
    int threads = 1;                         // 0 = hardware concurrency
    std::string scheme_label = "custom";     // carried into table output
};

// Per-parameter point-estimator summary across replicates.
struct ParamStats {
    double average = 0.0;
    double bias = 0.0;        // average - truth
    double mse = 0.0;         // mean squared deviation from truth
    double mse_stderr = 0.0;  // Monte Carlo standard error of the MSE
};

struct EstimatorStats {
    std::string name;  // "MLE" or "<prior>:<loss>"
    ParamStats tau[2];
};

// Per-parameter interval summary across replicates.
struct IntervalParamStats {
    double avg_lower = 0.0;
    double avg_upper = 0.0;
    double avg_length = 0.0;
    double length_stderr = 0.0;  // Monte Carlo standard error of avg_length
    double coverage = 0.0;
};

struct IntervalStats {
    std::string name;  // "ACI" or "HPD[<prior>]"
    IntervalParamStats tau[2];
};

struct SimReport {
    SimConfig config;
    std::vector<EstimatorStats> points;     // MLE first, then prior x loss
    std::vector<IntervalStats> intervals;   // ACI first, then HPD per prior
    long skipped = 0;                       // degenerate replicates redrawn
};

// Runs the replication study. Replicates with no failures from one of the
// causes are redrawn on a fresh substream and counted in `skipped`. The
// result is a pure function of the config, including under parallel
// execution: per-replicate streams are derived by counter-based splitting
// and aggregation always runs in replicate order with compensated sums.
SimReport run(const SimConfig& config);

// Long-format rows for export, keyed by the design and estimator/method.
struct PointRow {
    int n, m;
    std::string scheme;
    double t1, t2, tau1, tau2;
    std::string parameter;  // "tau1" | "tau2"
    std::string estimator;
    double average, bias, mse, mse_stderr;
};

struct IntervalRow {
    int n, m;
    std::string scheme;
    double t1, t2, tau1, tau2;
    std::string parameter;
    std::string method;
    double avg_lower, avg_upper, avg_length, coverage;
};

struct SummaryRows {
    std::vector<PointRow> points;
    std::vector<IntervalRow> intervals;
};

SummaryRows summarize(const SimReport& report);

// CSV export: full-precision values, one row per table row.
std::string points_csv(const std::vector<PointRow>& rows, bool with_header);
std::string intervals_csv(const std::vector<IntervalRow>& rows, bool with_header);

// Aligned markdown tables, 6 significant digits.
std::string points_markdown(const std::vector<PointRow>& rows);
std::string intervals_markdown(const std::vector<IntervalRow>& rows);

}  // namespace iatpcs
