#include "srslab/agents/replay.hpp"

#include "srslab/errors.hpp"

namespace srslab::agents {

ReplayBuffer::ReplayBuffer(size_t capacity) : capacity_(capacity) {
    if (capacity_ == 0) throw ConfigError("replay: capacity must be positive");
    storage_.reserve(capacity_);
}

void ReplayBuffer::push(Transition t) {
    if (storage_.size() < capacity_) {
        storage_.push_back(std::move(t));
    } else {
        storage_[cursor_] = std::move(t);
    }
    cursor_ = (cursor_ + 1) % capacity_;
    ++total_;
}

std::optional<std::vector<Transition>> ReplayBuffer::sample(size_t batch_size,
                                                            numkit::SeededRng& rng) const {
    if (storage_.size() < batch_size) return std::nullopt;
    std::vector<Transition> out;
    out.reserve(batch_size);
    for (size_t i = 0; i < batch_size; ++i)
        out.push_back(storage_[static_cast<size_t>(rng.uniform_int(static_cast<int>(storage_.size())))]);
    return out;
}

Batch make_batch(std::span<const Transition> transitions) {
    if (transitions.empty()) throw ConfigError("make_batch: empty batch");
    const int b = static_cast<int>(transitions.size());
    const int in_dim = static_cast<int>(transitions[0].state.size());
    const int act_dim = static_cast<int>(transitions[0].action_vec.size());

    Batch batch;
    batch.states.resize(in_dim, b);
    batch.next_states.resize(in_dim, b);
    batch.items.resize(b);
    if (act_dim > 0) batch.action_vecs.resize(act_dim, b);
    batch.rewards.resize(b);
    batch.done.resize(b);

    for (int i = 0; i < b; ++i) {
        const Transition& t = transitions[i];
        batch.states.col(i) = t.state;
        batch.next_states.col(i) = t.next_state;
        batch.items[i] = t.item;
        if (act_dim > 0) batch.action_vecs.col(i) = t.action_vec;
        batch.rewards[i] = t.reward;
        batch.done[i] = t.done ? 1 : 0;
    }
    return batch;
}

}  // namespace srslab::agents
