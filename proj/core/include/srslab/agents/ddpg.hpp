#pragma once

#include "srslab/agents/config.hpp"
#include "srslab/agents/replay.hpp"
#include "srslab/numkit/network.hpp"
#include "srslab/numkit/optimizer.hpp"

namespace srslab::agents {

struct DdpgResult {
    double critic_loss = 0.0;
    double actor_objective = 0.0;  // mean Q(s, mu(s)) before the actor step
};

// Critic: one step on squared error to y = r + gamma * Q_t(s', mu_t(s'))
// (terminal: y = r). Actor: ascends E[Q(s, mu(s))] by chaining the critic's
// action-input gradient through the actor. One optimizer step each.
DdpgResult ddpg_update(const Batch& batch, numkit::NetworkParams& actor,
                       numkit::NetworkParams& critic, const numkit::NetworkParams& target_actor,
                       const numkit::NetworkParams& target_critic, double gamma,
                       numkit::OptimizerState& actor_opt, numkit::OptimizerState& critic_opt);

// Actor-critic learner over continuous ranking actions, soft target sync.
struct DdpgLearner {
    numkit::NetworkParams actor, critic;
    numkit::NetworkParams target_actor, target_critic;
    numkit::OptimizerState actor_opt, critic_opt;
    double gamma = 0.9;
    double tau = 0.005;

    static DdpgLearner make(int input_dim, int action_dim, const AgentConfig& cfg,
                            numkit::SeededRng& rng);

    Eigen::VectorXd act(const Eigen::VectorXd& state, double noise_scale,
                        numkit::SeededRng& rng) const;
    Eigen::VectorXd greedy(const Eigen::VectorXd& state) const;
    DdpgResult update(const Batch& batch);
};

}  // namespace srslab::agents
