#include "srslab/stabilize/estimator.hpp"

#include <cmath>

#include "srslab/errors.hpp"

namespace srslab::stabilize {

using numkit::Activation;

namespace {

constexpr double kClampLo = 1e-7;
constexpr double kClampHi = 1.0 - 1e-7;

Eigen::MatrixXd concat_features(std::span<const agents::Transition> batch) {
    const int b = static_cast<int>(batch.size());
    const int s_dim = static_cast<int>(batch[0].state.size());
    const int a_dim = static_cast<int>(batch[0].action_features.size());
    Eigen::MatrixXd x(s_dim + a_dim, b);
    for (int i = 0; i < b; ++i) {
        x.col(i).head(s_dim) = batch[i].state;
        x.col(i).tail(a_dim) = batch[i].action_features;
    }
    return x;
}

}  // namespace

RewardEstimator make_estimator(int state_dim, int action_dim, const std::vector<int>& hidden,
                               double learning_rate, numkit::SeededRng& rng) {
    RewardEstimator est;
    est.net = numkit::make_network(state_dim + action_dim, hidden, 1, Activation::relu,
                                   Activation::sigmoid, rng);
    est.opt = numkit::make_adam(learning_rate);
    return est;
}

double estimator_update_features(RewardEstimator& est, const Eigen::MatrixXd& features,
                                 const Eigen::VectorXd& rewards, Eigen::MatrixXd* input_grads) {
    const int b = static_cast<int>(rewards.size());
    if (b == 0) throw UsageError("estimator_update: empty batch");
    if (features.cols() != b) throw ConfigError("estimator_update: feature/reward count mismatch");

    numkit::ForwardCache cache;
    const Eigen::MatrixXd out = numkit::dense_forward_batch(est.net, features, &cache);

    double loss = 0.0;
    Eigen::MatrixXd grad(1, b);
    for (int i = 0; i < b; ++i) {
        const double r = rewards[i];
        const double raw = out(0, i);
        const double p = std::min(kClampHi, std::max(kClampLo, raw));
        loss += -(r * std::log(p) + (1.0 - r) * std::log(1.0 - p));
        // Chained with the sigmoid derivative this reduces to (p - r);
        // clamped or fully saturated outputs contribute no gradient.
        const double denom = raw * (1.0 - raw);
        grad(0, i) = (raw != p || denom <= 0.0) ? 0.0 : (p - r) / denom / b;
    }
    loss /= b;
    if (!std::isfinite(loss)) throw NumericsError("estimator_update: non-finite loss");

    auto res = numkit::dense_backward_batch(est.net, cache, grad);
    if (input_grads) *input_grads = res.input_grad;
    numkit::optimizer_step(est.net, res.grads, est.opt);
    est.updates += 1;
    return loss;
}

double estimator_update(RewardEstimator& est, std::span<const agents::Transition> batch) {
    if (batch.empty()) throw UsageError("estimator_update: empty batch");
    for (const auto& t : batch)
        if (t.stabilized)
            throw UsageError("estimator_update: refusing to train on stabilized rewards");
    Eigen::VectorXd rewards(batch.size());
    for (size_t i = 0; i < batch.size(); ++i) rewards[static_cast<int>(i)] = batch[i].reward;
    return estimator_update_features(est, concat_features(batch), rewards);
}

Eigen::VectorXd estimate_features(const RewardEstimator& est, const Eigen::MatrixXd& features) {
    return numkit::dense_forward_batch(est.net, features).row(0);
}

double estimate(const RewardEstimator& est, const Eigen::VectorXd& state_features,
                const Eigen::VectorXd& action_features) {
    Eigen::VectorXd x(state_features.size() + action_features.size());
    x.head(state_features.size()) = state_features;
    x.tail(action_features.size()) = action_features;
    return numkit::dense_forward(est.net, x)[0];
}

StabilizedBatch stabilize_with(std::span<const agents::Transition> batch, const EstimateFn& fn) {
    StabilizedBatch out;
    out.transitions.reserve(batch.size());
    for (const auto& t : batch) {
        agents::Transition s = t;
        s.reward = fn(t);
        s.stabilized = true;
        out.transitions.push_back(std::move(s));
    }
    return out;
}

StabilizedBatch stabilize_batch(std::span<const agents::Transition> batch,
                                const RewardEstimator& est) {
    if (batch.empty()) return {};
    const Eigen::VectorXd r_hat = estimate_features(est, concat_features(batch));
    StabilizedBatch out;
    out.transitions.reserve(batch.size());
    for (size_t i = 0; i < batch.size(); ++i) {
        agents::Transition s = batch[i];
        s.reward = r_hat[static_cast<int>(i)];
        s.stabilized = true;
        out.transitions.push_back(std::move(s));
    }
    return out;
}

}  // namespace srslab::stabilize
