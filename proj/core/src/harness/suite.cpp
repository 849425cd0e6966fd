#include "srslab/harness/suite.hpp"

#include <atomic>
#include <map>
#include <thread>

#include "srslab/errors.hpp"

namespace srslab::harness {

namespace {

uint64_t env_key(const envsim::EnvConfig& env) {
    RunConfig tmp;
    tmp.env = env;
    return tmp.digest();
}

}  // namespace

double suite_threshold(const envsim::EnvConfig& env, const SuiteOptions& options) {
    envsim::Env e(env);
    return options.threshold_factor *
           e.oracle_greedy_return(options.oracle_episodes, numkit::mix_seed(env.catalog_seed, 0x07ac1e));
}

SuiteResult run_suite(const std::vector<VariantPlan>& plans, std::span<const uint64_t> seeds,
                      const SuiteOptions& options) {
    if (plans.empty() || seeds.empty()) throw UsageError("run_suite: empty experiment matrix");
    for (const auto& plan : plans) plan.config.validate();

    // thresholds depend only on the environment; compute them up front
    std::map<uint64_t, double> thresholds;
    for (const auto& plan : plans) {
        const uint64_t key = env_key(plan.config.env);
        if (!thresholds.count(key)) thresholds[key] = suite_threshold(plan.config.env, options);
    }

    SuiteResult result;
    result.runs.resize(plans.size() * seeds.size());

    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const size_t i = next.fetch_add(1);
            if (i >= result.runs.size()) return;
            const VariantPlan& plan = plans[i / seeds.size()];
            const uint64_t seed = seeds[i % seeds.size()];
            RunRecord& rec = result.runs[i];
            rec.variant = plan.name;
            rec.seed = seed;
            rec.threshold = thresholds.at(env_key(plan.config.env));
            try {
                RunConfig cfg = plan.config;
                cfg.run_seed = seed;
                rec.timeline = train(cfg);
                rec.final_score = final_window_mean(rec.timeline, options.final_window);
                rec.efficiency =
                    sample_efficiency(rec.timeline, rec.threshold, options.threshold_k);
            } catch (const std::exception& e) {
                rec.failed = true;
                rec.error = e.what();
            }
        }
    };

    const int n_threads = std::max(1, options.parallelism);
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(n_threads));
        for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    for (const auto& rec : result.runs)
        if (rec.failed || rec.timeline.diverged) ++result.failures;

    // aggregation happens after all runs, in plan order
    for (size_t p = 0; p < plans.size(); ++p) {
        std::vector<std::optional<double>> finals;
        std::vector<std::optional<double>> efficiency;
        for (size_t s = 0; s < seeds.size(); ++s) {
            const RunRecord& rec = result.runs[p * seeds.size() + s];
            finals.push_back(rec.failed ? std::nullopt : rec.final_score);
            if (rec.failed || !rec.efficiency.episodes)
                efficiency.push_back(std::nullopt);
            else
                efficiency.push_back(static_cast<double>(*rec.efficiency.episodes));
        }
        if (seeds.size() >= 2) {
            result.aggregates.push_back({plans[p].name, "final_score", aggregate(finals)});
            result.aggregates.push_back(
                {plans[p].name, "episodes_to_threshold", aggregate(efficiency)});
        }
    }
    return result;
}

}  // namespace srslab::harness
