#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "srslab/agents/config.hpp"
#include "srslab/envsim/env.hpp"
#include "srslab/stabilize/estimator.hpp"

namespace srslab::harness {

struct RunConfig {
    envsim::EnvConfig env;
    agents::AgentConfig agent;
    stabilize::RewardSource reward_source = stabilize::RewardSource::observed;
    stabilize::EmbeddingMode embedding_mode = stabilize::EmbeddingMode::separate;
    envsim::RewardMode reward_mode = envsim::RewardMode::stochastic;
    int episodes = 3000;
    int eval_period = 10;    // evaluate every N training episodes
    int eval_episodes = 100; // episodes per evaluation point
    int warmup_transitions = 500;
    uint64_t run_seed = 0;

    void validate() const;
    uint64_t digest() const;  // canonical config hash, ignores run_seed
};

// (training episode index, evaluation score) pairs; indices are strictly
// increasing multiples of the eval period.
struct MetricsTimeline {
    std::vector<std::pair<int, double>> points;
    uint64_t run_seed = 0;
    uint64_t config_digest = 0;
    bool diverged = false;
    std::string error;
};

// Test instrumentation. `oracle_estimate`, when set, replaces the whole
// learned-estimator subsystem (no co-training, no warm-up fallback) so
// stabilization can be wired straight to the environment oracle.
// `update_trace`, when set, receives one content hash per RL update input.
struct TrainHooks {
    stabilize::EstimateFn oracle_estimate;
    std::vector<uint64_t>* update_trace = nullptr;
};

// Runs the episode loop: act, store the observed-reward transition,
// estimator co-training when configured, RL update (stabilized first when
// the reward source is `estimated`), periodic evaluation. Fully
// deterministic given the run seed. Divergence truncates the timeline and
// flags the run instead of raising.
MetricsTimeline train(const RunConfig& config, const TrainHooks& hooks = {});

// Greedy policy snapshot used by evaluation; exactly one member is set.
struct EvalPolicy {
    std::function<std::vector<int>(const Eigen::MatrixXd&)> discrete;
    std::function<Eigen::MatrixXd(const Eigen::MatrixXd&)> continuous;
};

// Mean per-episode cumulative observed reward over n stochastic-mode
// episodes with exploration disabled. Does not mutate the environment or
// the policy; evaluation randomness comes only from eval_seed.
double evaluate(const envsim::Env& env, const EvalPolicy& policy, int n_episodes,
                uint64_t eval_seed);

// 64-bit FNV-1a over raw bytes; the building block for config digests and
// update-input traces.
uint64_t fnv1a(const void* data, size_t bytes, uint64_t seed = 0xcbf29ce484222325ull);

}  // namespace srslab::harness
