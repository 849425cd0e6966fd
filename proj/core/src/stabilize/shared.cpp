#include "srslab/stabilize/shared.hpp"

#include "srslab/errors.hpp"

namespace srslab::stabilize {

using numkit::Activation;

SharedEmbedder make_shared_embedder(int user_dim, int item_dim, int embedding_dim,
                                    const numkit::OptimizerState& opt_proto,
                                    numkit::SeededRng& rng) {
    SharedEmbedder e;
    e.embedding_dim = embedding_dim;
    e.user_tower = numkit::make_network(user_dim, {32}, embedding_dim, Activation::relu,
                                        Activation::identity, rng);
    e.item_tower = numkit::make_network(item_dim, {32}, embedding_dim, Activation::relu,
                                        Activation::identity, rng);
    e.user_opt = opt_proto;
    e.item_opt = opt_proto;
    return e;
}

SharedEmbedder make_shared_embedder(int user_dim, int item_dim, int embedding_dim,
                                    double learning_rate, numkit::SeededRng& rng) {
    return make_shared_embedder(user_dim, item_dim, embedding_dim,
                                numkit::make_adam(learning_rate), rng);
}

void GradientHandle::backward(const Eigen::MatrixXd& state_grad,
                              const Eigen::MatrixXd& action_grad) {
    if (severed()) return;
    auto user = numkit::dense_backward_batch(embedder_->user_tower, user_cache_, state_grad);
    auto item = numkit::dense_backward_batch(embedder_->item_tower, item_cache_, action_grad);
    numkit::optimizer_step(embedder_->user_tower, user.grads, embedder_->user_opt);
    numkit::optimizer_step(embedder_->item_tower, item.grads, embedder_->item_opt);
}

SharedForward SharedForward::run(SharedEmbedder& embedder, const Eigen::MatrixXd& user_features,
                                 const Eigen::MatrixXd& item_features, Route route) {
    SharedForward out;
    if (route == Route::supervised) {
        out.handle.embedder_ = &embedder;
        out.state_embedding =
            numkit::dense_forward_batch(embedder.user_tower, user_features, &out.handle.user_cache_);
        out.action_embedding =
            numkit::dense_forward_batch(embedder.item_tower, item_features, &out.handle.item_cache_);
    } else {
        // same values, severed handle
        out.state_embedding = numkit::dense_forward_batch(embedder.user_tower, user_features);
        out.action_embedding = numkit::dense_forward_batch(embedder.item_tower, item_features);
    }
    return out;
}

SharedForward shared_forward(SharedEmbedder& embedder, const Eigen::VectorXd& user_features,
                             const Eigen::VectorXd& item_features, Route route) {
    return SharedForward::run(embedder, user_features, item_features, route);
}

double co_train_shared(SharedEmbedder& embedder, RewardEstimator& head,
                       std::span<const agents::Transition> batch) {
    if (batch.empty()) throw UsageError("co_train_shared: empty batch");
    const int b = static_cast<int>(batch.size());
    const int u_dim = static_cast<int>(batch[0].state.size());
    const int i_dim = static_cast<int>(batch[0].action_features.size());
    Eigen::MatrixXd users(u_dim, b), items(i_dim, b);
    Eigen::VectorXd rewards(b);
    for (int i = 0; i < b; ++i) {
        if (batch[i].stabilized)
            throw UsageError("co_train_shared: refusing to train on stabilized rewards");
        users.col(i) = batch[i].state;
        items.col(i) = batch[i].action_features;
        rewards[i] = batch[i].reward;
    }

    SharedForward fwd = SharedForward::run(embedder, users, items, Route::supervised);
    const int e = embedder.embedding_dim;
    Eigen::MatrixXd head_in(2 * e, b);
    head_in.topRows(e) = fwd.state_embedding;
    head_in.bottomRows(e) = fwd.action_embedding;

    Eigen::MatrixXd head_input_grad;
    const double loss = estimator_update_features(head, head_in, rewards, &head_input_grad);
    fwd.handle.backward(head_input_grad.topRows(e), head_input_grad.bottomRows(e));
    return loss;
}

double estimate_shared(const SharedEmbedder& embedder, const RewardEstimator& head,
                       const Eigen::VectorXd& state_features,
                       const Eigen::VectorXd& action_features) {
    const Eigen::VectorXd s = numkit::dense_forward(embedder.user_tower, state_features);
    const Eigen::VectorXd a = numkit::dense_forward(embedder.item_tower, action_features);
    return estimate(head, s, a);
}

StabilizedBatch stabilize_batch(std::span<const agents::Transition> batch,
                                const SharedEmbedder& embedder, const RewardEstimator& head) {
    return stabilize_with(batch, [&](const agents::Transition& t) {
        return estimate_shared(embedder, head, t.state, t.action_features);
    });
}

Eigen::MatrixXd encode_states(const SharedEmbedder& embedder, const Eigen::MatrixXd& user_features) {
    return numkit::dense_forward_batch(embedder.user_tower, user_features);
}

}  // namespace srslab::stabilize
