#pragma once

#include <functional>
#include <span>

#include "srslab/agents/replay.hpp"
#include "srslab/numkit/network.hpp"
#include "srslab/numkit/optimizer.hpp"

namespace srslab::stabilize {

enum class RewardSource { observed, estimated };
enum class EmbeddingMode { separate, shared_supervised };

// Supervised model of E(r | s, a): sigmoid scalar head over concatenated
// state/action features. Trains only on observed rewards.
struct RewardEstimator {
    numkit::NetworkParams net;
    numkit::OptimizerState opt;
    long updates = 0;
};

RewardEstimator make_estimator(int state_dim, int action_dim, const std::vector<int>& hidden,
                               double learning_rate, numkit::SeededRng& rng);

// Core BCE step on (feature column, reward) pairs; predictions are clamped
// to [1e-7, 1 - 1e-7] before the log. When `input_grads` is given, the
// gradient of the mean loss w.r.t. the input columns is written there (the
// shared-representation path chains it into the towers).
double estimator_update_features(RewardEstimator& est, const Eigen::MatrixXd& features,
                                 const Eigen::VectorXd& rewards,
                                 Eigen::MatrixXd* input_grads = nullptr);

// Convenience over transitions; rejects stabilized input (the estimator
// must never train on its own outputs).
double estimator_update(RewardEstimator& est, std::span<const agents::Transition> batch);

// Deterministic forward pass, r-hat in [0, 1].
double estimate(const RewardEstimator& est, const Eigen::VectorXd& state_features,
                const Eigen::VectorXd& action_features);
Eigen::VectorXd estimate_features(const RewardEstimator& est, const Eigen::MatrixXd& features);

// A batch whose rewards were replaced by r-hat; every other field is
// bit-identical to its source transition.
struct StabilizedBatch {
    std::vector<agents::Transition> transitions;
};

using EstimateFn = std::function<double(const agents::Transition&)>;

StabilizedBatch stabilize_with(std::span<const agents::Transition> batch, const EstimateFn& fn);
StabilizedBatch stabilize_batch(std::span<const agents::Transition> batch,
                                const RewardEstimator& est);

}  // namespace srslab::stabilize
