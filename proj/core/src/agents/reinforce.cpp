#include "srslab/agents/reinforce.hpp"

#include <cmath>

#include "srslab/agents/qlearning.hpp"
#include "srslab/errors.hpp"

namespace srslab::agents {

using numkit::Activation;

namespace {
constexpr double kLogClamp = -30.0;
const double kProbFloor = std::exp(kLogClamp);
}  // namespace

Eigen::VectorXd discounted_returns(const Eigen::VectorXd& rewards, double gamma) {
    Eigen::VectorXd returns(rewards.size());
    double acc = 0.0;
    for (Eigen::Index t = rewards.size(); t-- > 0;) {
        acc = rewards[t] + gamma * acc;
        returns[t] = acc;
    }
    return returns;
}

ReinforceResult reinforce_update(const Eigen::MatrixXd& states, const std::vector<int>& actions,
                                 const Eigen::VectorXd& rewards, double gamma,
                                 numkit::NetworkParams& policy, numkit::OptimizerState& opt,
                                 RunningBaseline& baseline) {
    const int steps = static_cast<int>(actions.size());
    if (steps == 0 || states.cols() != steps || rewards.size() != steps)
        throw UsageError("reinforce_update: episode pieces disagree in length");

    const Eigen::VectorXd returns = discounted_returns(rewards, gamma);

    numkit::ForwardCache cache;
    const Eigen::MatrixXd probs = numkit::dense_forward_batch(policy, states, &cache);

    ReinforceResult result;
    Eigen::MatrixXd out_grad = Eigen::MatrixXd::Zero(probs.rows(), probs.cols());
    for (int t = 0; t < steps; ++t) {
        const int a = actions[t];
        if (a < 0 || a >= probs.rows()) throw UsageError("reinforce_update: action out of range");
        const double advantage = returns[t] - baseline.value;
        const double p = probs(a, t);
        if (p <= kProbFloor) {
            // clamped branch: constant loss term, no gradient
            result.loss += -advantage * kLogClamp;
            ++result.guard_events;
            continue;
        }
        result.loss += -advantage * std::log(p);
        out_grad(a, t) = -advantage / p;
    }
    if (!std::isfinite(result.loss)) throw NumericsError("reinforce_update: non-finite loss");

    auto res = numkit::dense_backward_batch(policy, cache, out_grad);
    numkit::optimizer_step(policy, res.grads, opt);
    baseline.update(returns[0]);
    return result;
}

ReinforceLearner ReinforceLearner::make(int input_dim, int n_actions, const AgentConfig& cfg,
                                        numkit::SeededRng& rng) {
    ReinforceLearner l;
    l.policy = numkit::make_network(input_dim, cfg.hidden, n_actions, Activation::relu,
                                    Activation::softmax, rng);
    l.opt = numkit::make_adam(cfg.learning_rate);
    l.gamma = cfg.gamma;
    return l;
}

Eigen::VectorXd ReinforceLearner::action_probabilities(const Eigen::VectorXd& state) const {
    return numkit::dense_forward(policy, state);
}

int ReinforceLearner::act(const Eigen::VectorXd& state, numkit::SeededRng& rng) const {
    const Eigen::VectorXd probs = action_probabilities(state);
    const double u = rng.uniform();
    double acc = 0.0;
    for (int i = 0; i < probs.size(); ++i) {
        acc += probs[i];
        if (u < acc) return i;
    }
    return static_cast<int>(probs.size()) - 1;  // guard against rounding
}

int ReinforceLearner::greedy(const Eigen::VectorXd& state) const {
    return argmax_lowest(action_probabilities(state));
}

double ReinforceLearner::update(const Eigen::MatrixXd& states, const std::vector<int>& actions,
                                const Eigen::VectorXd& rewards) {
    ReinforceResult r = reinforce_update(states, actions, rewards, gamma, policy, opt, baseline);
    guard_events += r.guard_events;
    return r.loss;
}

}  // namespace srslab::agents
