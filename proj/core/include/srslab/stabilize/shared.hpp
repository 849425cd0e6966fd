#pragma once

#include <span>

#include "srslab/agents/replay.hpp"
#include "srslab/numkit/network.hpp"
#include "srslab/numkit/optimizer.hpp"
#include "srslab/stabilize/estimator.hpp"

namespace srslab::stabilize {

enum class Route { supervised, rl };

// User/item towers mapping raw features to a shared embedding space.
// Tower parameters are updated exclusively through supervised-route
// gradient handles; the RL route sees the same values but is severed.
struct SharedEmbedder {
    numkit::NetworkParams user_tower;
    numkit::NetworkParams item_tower;
    numkit::OptimizerState user_opt;
    numkit::OptimizerState item_opt;
    int embedding_dim = 0;
};

SharedEmbedder make_shared_embedder(int user_dim, int item_dim, int embedding_dim,
                                    double learning_rate, numkit::SeededRng& rng);
SharedEmbedder make_shared_embedder(int user_dim, int item_dim, int embedding_dim,
                                    const numkit::OptimizerState& opt_proto,
                                    numkit::SeededRng& rng);

// Backward handle of one shared forward pass. Severed handles ignore
// backward() entirely; supervised handles push gradients into both towers
// and apply one optimizer step each.
class GradientHandle {
  public:
    GradientHandle() = default;  // severed

    bool severed() const { return embedder_ == nullptr; }
    void backward(const Eigen::MatrixXd& state_grad, const Eigen::MatrixXd& action_grad);

  private:
    friend struct SharedForward;
    SharedEmbedder* embedder_ = nullptr;
    numkit::ForwardCache user_cache_;
    numkit::ForwardCache item_cache_;
};

struct SharedForward {
    Eigen::MatrixXd state_embedding;   // E x B
    Eigen::MatrixXd action_embedding;  // E x B
    GradientHandle handle;

    static SharedForward run(SharedEmbedder& embedder, const Eigen::MatrixXd& user_features,
                             const Eigen::MatrixXd& item_features, Route route);
};

// Single-pair convenience over SharedForward::run.
SharedForward shared_forward(SharedEmbedder& embedder, const Eigen::VectorXd& user_features,
                             const Eigen::VectorXd& item_features, Route route);

// One supervised co-training step for the shared stack: BCE on the head fed
// by both towers, with the head's input gradient chained into the towers.
// Rejects stabilized input like estimator_update.
double co_train_shared(SharedEmbedder& embedder, RewardEstimator& head,
                       std::span<const agents::Transition> batch);

// r-hat through the shared stack, without touching any parameters.
double estimate_shared(const SharedEmbedder& embedder, const RewardEstimator& head,
                       const Eigen::VectorXd& state_features,
                       const Eigen::VectorXd& action_features);
StabilizedBatch stabilize_batch(std::span<const agents::Transition> batch,
                                const SharedEmbedder& embedder, const RewardEstimator& head);

// State encoding for the RL side (value-identical to the supervised route).
Eigen::MatrixXd encode_states(const SharedEmbedder& embedder, const Eigen::MatrixXd& user_features);

}  // namespace srslab::stabilize
