#pragma once

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "srslab/numkit/rng.hpp"

namespace srslab::agents {

// One interaction record. `item` is the catalog item actually shown;
// `action_vec` is the continuous ranking action when one was used
// (actor-critic), otherwise empty. `action_features` are the item
// features the reward estimator consumes.
struct Transition {
    Eigen::VectorXd state;
    int item = -1;
    Eigen::VectorXd action_vec;
    Eigen::VectorXd action_features;
    double reward = 0.0;
    Eigen::VectorXd next_state;
    bool done = false;
    bool stabilized = false;  // provenance: reward replaced by the estimator
};

// Ring buffer with FIFO eviction.
class ReplayBuffer {
  public:
    explicit ReplayBuffer(size_t capacity);

    void push(Transition t);
    size_t size() const { return storage_.size(); }
    size_t capacity() const { return capacity_; }
    // Total pushes ever seen, including evicted ones.
    size_t total_pushed() const { return total_; }
    bool ready(size_t batch_size) const { return storage_.size() >= batch_size; }

    // Uniform sampling with replacement; nullopt while underfull.
    std::optional<std::vector<Transition>> sample(size_t batch_size, numkit::SeededRng& rng) const;

    const Transition& at(size_t i) const { return storage_[i]; }

  private:
    std::vector<Transition> storage_;
    size_t capacity_;
    size_t cursor_ = 0;
    size_t total_ = 0;
};

// Column-major batch view used by the update rules. States may be raw
// environment features or shared embeddings; the update rules do not care.
struct Batch {
    Eigen::MatrixXd states;       // in_dim x B
    Eigen::MatrixXd next_states;  // in_dim x B
    std::vector<int> items;
    Eigen::MatrixXd action_vecs;  // act_dim x B (empty unless continuous)
    Eigen::VectorXd rewards;
    std::vector<uint8_t> done;

    int size() const { return static_cast<int>(rewards.size()); }
};

Batch make_batch(std::span<const Transition> transitions);

}  // namespace srslab::agents
