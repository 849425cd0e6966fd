#pragma once

#include "srslab/agents/config.hpp"
#include "srslab/agents/replay.hpp"
#include "srslab/numkit/network.hpp"
#include "srslab/numkit/optimizer.hpp"

namespace srslab::agents {

int argmax_lowest(const Eigen::VectorXd& values);

// With probability eps a uniform random action, otherwise the argmax
// (lowest index on ties). Always consumes exactly one draw for the coin.
int epsilon_greedy(const Eigen::VectorXd& q_values, double eps, numkit::SeededRng& rng);

// q_a = value + advantage_a - mean(advantages)
Eigen::VectorXd dueling_combine(double value, const Eigen::VectorXd& advantages);

// Q-network, optionally with a dueling head. A dueling net's raw output
// is (value, advantages...) of size 1 + n_actions.
struct QNet {
    numkit::NetworkParams net;
    bool dueling = false;
    int n_actions = 0;

    Eigen::VectorXd q_values(const Eigen::VectorXd& state) const;
    Eigen::MatrixXd q_batch(const Eigen::MatrixXd& states, numkit::ForwardCache* cache = nullptr) const;
    // Maps dLoss/dQ back to dLoss/d(raw net output).
    Eigen::MatrixXd head_backward(const Eigen::MatrixXd& q_grad) const;
};

QNet make_qnet(int input_dim, const std::vector<int>& hidden, int n_actions, bool dueling,
               numkit::SeededRng& rng);

// TD targets, treated as constants by dqn_update.
//   vanilla:  y = r + gamma * max_a' Q_target(s', a')
//   double-Q: y = r + gamma * Q_target(s', argmax_a' Q_online(s', a'))
// Terminal transitions: y = r.
Eigen::VectorXd dqn_target(const Batch& batch, const QNet& target, const QNet& online,
                           double gamma, bool double_q);

// One optimizer step on mean squared error between y and Q(s, a).
// Returns the pre-step loss; non-finite loss aborts the run.
double dqn_update(const Batch& batch, QNet& online, const QNet& target, double gamma,
                  numkit::OptimizerState& opt, bool double_q);

// theta' <- tau * theta + (1 - tau) * theta', elementwise.
void soft_sync(numkit::NetworkParams& target, const numkit::NetworkParams& online, double tau);

// Value-based learner (double-Q and dueling options) with periodic hard
// target sync.
struct DqnLearner {
    QNet online;
    QNet target;
    numkit::OptimizerState opt;
    double gamma = 0.9;
    bool double_q = false;
    int sync_period = 100;
    long updates = 0;

    static DqnLearner make(int input_dim, int n_actions, const AgentConfig& cfg,
                           numkit::SeededRng& rng);

    int act(const Eigen::VectorXd& state, double eps, numkit::SeededRng& rng) const;
    int greedy(const Eigen::VectorXd& state) const;
    double update(const Batch& batch);
};

}  // namespace srslab::agents
