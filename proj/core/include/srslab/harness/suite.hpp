#pragma once

#include <span>
#include <string>
#include <vector>

#include "srslab/harness/metrics.hpp"
#include "srslab/harness/run.hpp"

namespace srslab::harness {

// One experiment arm; run_seed in the config template is ignored.
struct VariantPlan {
    std::string name;
    RunConfig config;
};

struct SuiteOptions {
    int parallelism = 1;
    double threshold_factor = 0.6;  // threshold = factor * oracle greedy return
    int threshold_k = 5;
    int oracle_episodes = 2000;
    int final_window = 10;  // evaluation points in the final-score window
};

struct RunRecord {
    std::string variant;
    uint64_t seed = 0;
    MetricsTimeline timeline;
    std::optional<double> final_score;
    EfficiencyResult efficiency;
    double threshold = 0.0;
    bool failed = false;
    std::string error;
};

struct AggregateRow {
    std::string variant;
    std::string metric;
    AggregateResult result;
};

struct SuiteResult {
    std::vector<RunRecord> runs;           // variant-major, seed order within
    std::vector<AggregateRow> aggregates;  // final_score and episodes_to_threshold per variant
    int failures = 0;
};

// Executes every (plan, seed) run. Runs are independent; outputs are
// identical regardless of scheduling order or parallelism limit.
// Individual failures are recorded and the suite continues.
SuiteResult run_suite(const std::vector<VariantPlan>& plans, std::span<const uint64_t> seeds,
                      const SuiteOptions& options);

// Desk-scale protocol threshold for one environment, derived from the
// oracle-greedy reference policy.
double suite_threshold(const envsim::EnvConfig& env, const SuiteOptions& options);

}  // namespace srslab::harness
