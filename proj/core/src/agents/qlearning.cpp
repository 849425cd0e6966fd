#include "srslab/agents/qlearning.hpp"

#include <cmath>

#include "srslab/errors.hpp"

namespace srslab::agents {

using numkit::Activation;
using numkit::ForwardCache;
using numkit::NetworkParams;

int argmax_lowest(const Eigen::VectorXd& values) {
    int best = 0;
    for (int i = 1; i < values.size(); ++i)
        if (values[i] > values[best]) best = i;
    return best;
}

int epsilon_greedy(const Eigen::VectorXd& q_values, double eps, numkit::SeededRng& rng) {
    if (q_values.size() == 0) throw UsageError("epsilon_greedy: empty q_values");
    if (eps < 0.0 || eps > 1.0) throw UsageError("epsilon_greedy: eps outside [0, 1]");
    if (rng.uniform() < eps) return rng.uniform_int(static_cast<int>(q_values.size()));
    return argmax_lowest(q_values);
}

Eigen::VectorXd dueling_combine(double value, const Eigen::VectorXd& advantages) {
    if (advantages.size() == 0) throw UsageError("dueling_combine: empty advantages");
    return (value + (advantages.array() - advantages.mean())).matrix();
}

Eigen::MatrixXd QNet::q_batch(const Eigen::MatrixXd& states, ForwardCache* cache) const {
    Eigen::MatrixXd raw = numkit::dense_forward_batch(net, states, cache);
    if (!dueling) return raw;
    // row 0 = value stream, rows 1..n = advantages
    Eigen::MatrixXd q(n_actions, raw.cols());
    for (Eigen::Index c = 0; c < raw.cols(); ++c) {
        const double value = raw(0, c);
        const double adv_mean = raw.col(c).tail(n_actions).mean();
        q.col(c) = (raw.col(c).tail(n_actions).array() + value - adv_mean).matrix();
    }
    return q;
}

Eigen::VectorXd QNet::q_values(const Eigen::VectorXd& state) const {
    return q_batch(state).col(0);
}

Eigen::MatrixXd QNet::head_backward(const Eigen::MatrixXd& q_grad) const {
    if (!dueling) return q_grad;
    // q_a = v + adv_a - mean(adv)  =>  dv = sum_a g_a, dadv_b = g_b - mean(g)
    Eigen::MatrixXd raw(n_actions + 1, q_grad.cols());
    for (Eigen::Index c = 0; c < q_grad.cols(); ++c) {
        const double total = q_grad.col(c).sum();
        raw(0, c) = total;
        raw.col(c).tail(n_actions) =
            (q_grad.col(c).array() - total / n_actions).matrix();
    }
    return raw;
}

QNet make_qnet(int input_dim, const std::vector<int>& hidden, int n_actions, bool dueling,
               numkit::SeededRng& rng) {
    QNet q;
    q.dueling = dueling;
    q.n_actions = n_actions;
    const int out = dueling ? n_actions + 1 : n_actions;
    q.net = numkit::make_network(input_dim, hidden, out, Activation::relu, Activation::identity, rng);
    return q;
}

Eigen::VectorXd dqn_target(const Batch& batch, const QNet& target, const QNet& online,
                           double gamma, bool double_q) {
    if (batch.size() == 0) throw UsageError("dqn_target: empty batch");
    const Eigen::MatrixXd q_next_target = target.q_batch(batch.next_states);
    Eigen::MatrixXd q_next_online;
    if (double_q) q_next_online = online.q_batch(batch.next_states);

    Eigen::VectorXd y(batch.size());
    for (int i = 0; i < batch.size(); ++i) {
        if (batch.done[i]) {
            y[i] = batch.rewards[i];
            continue;
        }
        double future;
        if (double_q) {
            const int a_star = argmax_lowest(q_next_online.col(i));
            future = q_next_target(a_star, i);
        } else {
            future = q_next_target.col(i).maxCoeff();
        }
        y[i] = batch.rewards[i] + gamma * future;
    }
    return y;
}

double dqn_update(const Batch& batch, QNet& online, const QNet& target, double gamma,
                  numkit::OptimizerState& opt, bool double_q) {
    const Eigen::VectorXd y = dqn_target(batch, target, online, gamma, double_q);

    ForwardCache cache;
    const Eigen::MatrixXd q = online.q_batch(batch.states, &cache);

    const int b = batch.size();
    Eigen::MatrixXd q_grad = Eigen::MatrixXd::Zero(q.rows(), q.cols());
    double loss = 0.0;
    for (int i = 0; i < b; ++i) {
        const int a = batch.items[i];
        if (a < 0 || a >= online.n_actions) throw UsageError("dqn_update: item index out of range");
        const double residual = q(a, i) - y[i];
        loss += residual * residual;
        q_grad(a, i) = 2.0 * residual / b;
    }
    loss /= b;
    if (!std::isfinite(loss)) throw NumericsError("dqn_update: non-finite loss");

    auto res = numkit::dense_backward_batch(online.net, cache, online.head_backward(q_grad));
    numkit::optimizer_step(online.net, res.grads, opt);
    return loss;
}

void soft_sync(NetworkParams& target, const NetworkParams& online, double tau) {
    if (!(tau > 0.0 && tau <= 1.0)) throw UsageError("soft_sync: tau outside (0, 1]");
    if (target.layers.size() != online.layers.size())
        throw ConfigError("soft_sync: layer count mismatch");
    for (size_t k = 0; k < target.layers.size(); ++k) {
        auto& t = target.layers[k];
        const auto& o = online.layers[k];
        if (t.weight.rows() != o.weight.rows() || t.weight.cols() != o.weight.cols())
            throw ConfigError("soft_sync: shape mismatch");
        t.weight = tau * o.weight + (1.0 - tau) * t.weight;
        t.bias = tau * o.bias + (1.0 - tau) * t.bias;
    }
}

DqnLearner DqnLearner::make(int input_dim, int n_actions, const AgentConfig& cfg,
                            numkit::SeededRng& rng) {
    DqnLearner l;
    l.online = make_qnet(input_dim, cfg.hidden, n_actions, cfg.dueling, rng);
    l.target = l.online;
    l.opt = numkit::make_adam(cfg.learning_rate);
    l.gamma = cfg.gamma;
    l.double_q = cfg.double_q;
    l.sync_period = cfg.target_sync_period;
    return l;
}

int DqnLearner::act(const Eigen::VectorXd& state, double eps, numkit::SeededRng& rng) const {
    return epsilon_greedy(online.q_values(state), eps, rng);
}

int DqnLearner::greedy(const Eigen::VectorXd& state) const {
    return argmax_lowest(online.q_values(state));
}

double DqnLearner::update(const Batch& batch) {
    const double loss = dqn_update(batch, online, target, gamma, opt, double_q);
    if (++updates % sync_period == 0) soft_sync(target.net, online.net, 1.0);
    return loss;
}

}  // namespace srslab::agents
