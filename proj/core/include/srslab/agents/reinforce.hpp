#pragma once

#include "srslab/agents/config.hpp"
#include "srslab/numkit/network.hpp"
#include "srslab/numkit/optimizer.hpp"

namespace srslab::agents {

// G_t = sum_{k>=t} gamma^(k-t) r_k via backward recursion.
Eigen::VectorXd discounted_returns(const Eigen::VectorXd& rewards, double gamma);

// Exponential running mean of episode returns, the variance-reduction
// baseline. Updated after each policy step.
struct RunningBaseline {
    double value = 0.0;
    double decay = 0.95;

    void update(double episode_return) { value = decay * value + (1.0 - decay) * episode_return; }
};

struct ReinforceResult {
    double loss = 0.0;
    int guard_events = 0;  // selected-action probabilities at the log clamp
};

// One optimizer step on -sum_t (G_t - baseline) * log pi(a_t | s_t) for a
// completed episode. log probabilities are clamped at -30; clamped steps
// contribute no gradient and are counted in guard_events. The baseline is
// updated with the episode return after the step.
ReinforceResult reinforce_update(const Eigen::MatrixXd& states, const std::vector<int>& actions,
                                 const Eigen::VectorXd& rewards, double gamma,
                                 numkit::NetworkParams& policy, numkit::OptimizerState& opt,
                                 RunningBaseline& baseline);

// Policy-gradient learner over a softmax item policy.
struct ReinforceLearner {
    numkit::NetworkParams policy;
    numkit::OptimizerState opt;
    RunningBaseline baseline;
    double gamma = 0.9;
    long guard_events = 0;

    static ReinforceLearner make(int input_dim, int n_actions, const AgentConfig& cfg,
                                 numkit::SeededRng& rng);

    int act(const Eigen::VectorXd& state, numkit::SeededRng& rng) const;  // samples the policy
    int greedy(const Eigen::VectorXd& state) const;
    Eigen::VectorXd action_probabilities(const Eigen::VectorXd& state) const;
    double update(const Eigen::MatrixXd& states, const std::vector<int>& actions,
                  const Eigen::VectorXd& rewards);
};

}  // namespace srslab::agents
