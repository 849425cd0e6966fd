#pragma once

#include <cstdint>

#include <Eigen/Core>

#include "srslab/numkit/rng.hpp"

namespace srslab::envsim {

struct EnvConfig {
    int d = 8;                 // embedding dimension
    int catalog_size = 50;     // M
    double kappa = 4.0;        // affinity scale
    double bias = -1.5;        // logit bias
    double eta = 0.3;          // preference drift rate
    int horizon = 20;          // T, max episode length
    double leave_base = 0.05;  // per-step leave probability after a non-purchase
    double gamma = 0.9;        // discount factor
    double noise_scale = 0.01; // preference jitter per step
    uint64_t catalog_seed = 0;

    void validate() const;  // throws ConfigError naming the offending field
};

enum class RewardMode { deterministic, stochastic };

// Observable user state plus the hidden episode stream. Unit-norm
// preference vector; step_index never exceeds the horizon.
struct EnvState {
    Eigen::VectorXd u;
    int step_index = 0;
    bool last_purchase = false;
    bool terminal = false;
    numkit::SeededRng rng{0};

    // What agents see: (u, step_index / T, last_purchase).
    Eigen::VectorXd features(int horizon) const;
};

struct StepOutcome {
    double reward = 0.0;
    EnvState next_state;
    bool done = false;
    double true_prob = 0.0;  // oracle value, for tests and metrics only
    bool purchased = false;
    int item = -1;  // catalog item actually shown
};

// Synthetic recommender MDP. The catalog is immutable after construction,
// so one Env may be shared read-only; episode state lives in EnvState.
class Env {
  public:
    explicit Env(const EnvConfig& config);

    const EnvConfig& config() const { return config_; }
    const Eigen::MatrixXd& catalog() const { return catalog_; }  // d x M, unit columns
    Eigen::VectorXd item_features(int item) const { return catalog_.col(item); }
    int feature_size() const { return config_.d + 2; }

    EnvState reset(uint64_t episode_seed) const;

    // sigma(kappa * <u, e_action> + bias); pure.
    double true_prob(const EnvState& state, int action) const;
    // Same value recomputed from packed state features (u = leading d entries).
    double true_prob_features(const Eigen::VectorXd& state_features, int action) const;

    // The purchase event is sampled in both reward modes and drives the
    // dynamics; only the reward signal differs between modes.
    StepOutcome step(const EnvState& state, int action, RewardMode mode) const;

    // Continuous-action adapter: picks argmax_i <w, e_i> (lowest index on
    // ties) and delegates to step.
    StepOutcome continuous_step(const EnvState& state, const Eigen::VectorXd& w,
                                RewardMode mode) const;
    int rank_item(const Eigen::VectorXd& w) const;

    // Average stochastic-mode return of the act-greedily-on-true-prob policy.
    double oracle_greedy_return(int n_episodes, uint64_t seed) const;
    int greedy_oracle_action(const EnvState& state) const;

  private:
    EnvConfig config_;
    Eigen::MatrixXd catalog_;
};

}  // namespace srslab::envsim
