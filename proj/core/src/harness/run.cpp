#include "srslab/harness/run.hpp"

#include <cmath>
#include <optional>

#include "srslab/agents/ddpg.hpp"
#include "srslab/agents/qlearning.hpp"
#include "srslab/agents/reinforce.hpp"
#include "srslab/errors.hpp"
#include "srslab/stabilize/shared.hpp"

namespace srslab::harness {

using agents::Batch;
using agents::Transition;
using envsim::EnvState;
using numkit::SeededRng;
using numkit::mix_seed;

namespace {

// substream tags; every consumer of randomness owns a disjoint stream
enum : uint64_t {
    kAgentInit = 1,
    kExplore = 2,
    kReplay = 3,
    kEstimatorInit = 4,
    kEstimatorBatch = 5,
    kEpisode = 6,
    kEval = 7,
    kEmbedderInit = 8,
};

struct ByteSink {
    uint64_t h = 0xcbf29ce484222325ull;
    void put(const void* p, size_t n) { h = fnv1a(p, n, h); }
    void put_u64(uint64_t v) { put(&v, sizeof v); }
    void put_i(int64_t v) { put(&v, sizeof v); }
    void put_d(double v) { put(&v, sizeof v); }
};

uint64_t hash_update_input(const Eigen::MatrixXd& states, const std::vector<int>& items,
                           const Eigen::MatrixXd& action_vecs, const Eigen::VectorXd& rewards,
                           const Eigen::MatrixXd& next_states, const std::vector<uint8_t>& done) {
    ByteSink s;
    auto put_mat = [&](const Eigen::MatrixXd& m) {
        s.put_i(m.rows());
        s.put_i(m.cols());
        if (m.size() > 0) s.put(m.data(), sizeof(double) * static_cast<size_t>(m.size()));
    };
    put_mat(states);
    s.put_i(static_cast<int64_t>(items.size()));
    if (!items.empty()) s.put(items.data(), sizeof(int) * items.size());
    put_mat(action_vecs);
    s.put_i(rewards.size());
    if (rewards.size() > 0) s.put(rewards.data(), sizeof(double) * static_cast<size_t>(rewards.size()));
    put_mat(next_states);
    if (!done.empty()) s.put(done.data(), done.size());
    return s.h;
}

struct Trainer {
    const RunConfig& cfg;
    const TrainHooks& hooks;
    envsim::Env env;
    agents::ReplayBuffer replay;
    SeededRng explore_rng;
    SeededRng replay_rng;
    SeededRng est_rng;

    std::optional<stabilize::SharedEmbedder> embedder;
    std::optional<stabilize::RewardEstimator> estimator;
    std::optional<agents::DqnLearner> dqn;
    std::optional<agents::ReinforceLearner> reinforce;
    std::optional<agents::DdpgLearner> ddpg;

    bool oracle_mode;
    bool est_subsystem;
    int eval_count = 0;
    MetricsTimeline timeline;

    explicit Trainer(const RunConfig& c, const TrainHooks& h)
        : cfg(c),
          hooks(h),
          env(c.env),
          replay(static_cast<size_t>(c.agent.replay_capacity)),
          explore_rng(mix_seed(c.run_seed, kExplore)),
          replay_rng(mix_seed(c.run_seed, kReplay)),
          est_rng(mix_seed(c.run_seed, kEstimatorBatch)),
          oracle_mode(static_cast<bool>(h.oracle_estimate)) {
        const int f_dim = env.feature_size();
        const int item_dim = cfg.env.d;
        const bool shared = cfg.embedding_mode == stabilize::EmbeddingMode::shared_supervised;

        if (shared) {
            SeededRng rng(mix_seed(cfg.run_seed, kEmbedderInit));
            embedder = stabilize::make_shared_embedder(f_dim, item_dim, cfg.agent.embedding_dim,
                                                       cfg.agent.learning_rate, rng);
        }
        est_subsystem =
            !oracle_mode && (cfg.reward_source == stabilize::RewardSource::estimated || shared);
        if (est_subsystem) {
            SeededRng rng(mix_seed(cfg.run_seed, kEstimatorInit));
            if (shared)
                estimator = stabilize::make_estimator(cfg.agent.embedding_dim, cfg.agent.embedding_dim,
                                                      {64, 64}, cfg.agent.learning_rate, rng);
            else
                estimator = stabilize::make_estimator(f_dim, item_dim, {64, 64},
                                                      cfg.agent.learning_rate, rng);
        }

        const int rl_in = shared ? cfg.agent.embedding_dim : f_dim;
        SeededRng agent_rng(mix_seed(cfg.run_seed, kAgentInit));
        switch (cfg.agent.family) {
            case agents::Family::dqn:
                dqn = agents::DqnLearner::make(rl_in, cfg.env.catalog_size, cfg.agent, agent_rng);
                break;
            case agents::Family::reinforce:
                reinforce =
                    agents::ReinforceLearner::make(rl_in, cfg.env.catalog_size, cfg.agent, agent_rng);
                break;
            case agents::Family::ddpg:
                ddpg = agents::DdpgLearner::make(rl_in, cfg.env.d, cfg.agent, agent_rng);
                break;
        }

        timeline.run_seed = cfg.run_seed;
        timeline.config_digest = cfg.digest();
    }

    Eigen::VectorXd encode(const Eigen::VectorXd& f) const {
        if (!embedder) return f;
        return numkit::dense_forward(embedder->user_tower, f);
    }

    Eigen::MatrixXd encode_batch(const Eigen::MatrixXd& f) const {
        if (!embedder) return f;
        return stabilize::encode_states(*embedder, f);
    }

    bool stabilizing() const {
        if (cfg.reward_source != stabilize::RewardSource::estimated) return false;
        if (oracle_mode) return true;
        return replay.total_pushed() >= static_cast<size_t>(cfg.warmup_transitions);
    }

    void co_train_step() {
        if (!est_subsystem) return;
        auto batch = replay.sample(static_cast<size_t>(cfg.agent.batch_size), est_rng);
        if (!batch) return;
        if (embedder)
            stabilize::co_train_shared(*embedder, *estimator, *batch);
        else
            stabilize::estimator_update(*estimator, *batch);
    }

    std::vector<Transition> maybe_stabilize(std::vector<Transition> batch) const {
        if (!stabilizing()) return batch;
        if (oracle_mode) return stabilize::stabilize_with(batch, hooks.oracle_estimate).transitions;
        if (embedder) return stabilize::stabilize_batch(batch, *embedder, *estimator).transitions;
        return stabilize::stabilize_batch(batch, *estimator).transitions;
    }

    Batch prepare(std::span<const Transition> transitions) const {
        Batch b = agents::make_batch(transitions);
        if (embedder) {
            b.states = encode_batch(b.states);
            b.next_states = encode_batch(b.next_states);
        }
        if (hooks.update_trace)
            hooks.update_trace->push_back(hash_update_input(b.states, b.items, b.action_vecs,
                                                            b.rewards, b.next_states, b.done));
        return b;
    }

    void step_update() {
        if (!replay.ready(static_cast<size_t>(cfg.agent.batch_size))) return;
        co_train_step();
        auto sampled = replay.sample(static_cast<size_t>(cfg.agent.batch_size), replay_rng);
        const Batch b = prepare(maybe_stabilize(std::move(*sampled)));
        if (dqn)
            dqn->update(b);
        else
            ddpg->update(b);
    }

    void episode_update(std::vector<Transition> episode) {
        co_train_step();
        const auto ts = maybe_stabilize(std::move(episode));
        const int n = static_cast<int>(ts.size());
        Eigen::MatrixXd states(ts[0].state.size(), n);
        std::vector<int> actions(n);
        Eigen::VectorXd rewards(n);
        for (int i = 0; i < n; ++i) {
            states.col(i) = ts[i].state;
            actions[i] = ts[i].item;
            rewards[i] = ts[i].reward;
        }
        if (embedder) states = encode_batch(states);
        if (hooks.update_trace)
            hooks.update_trace->push_back(hash_update_input(states, actions, {}, rewards, {}, {}));
        reinforce->update(states, actions, rewards);
    }

    EvalPolicy policy_snapshot() const {
        EvalPolicy p;
        if (dqn) {
            p.discrete = [this](const Eigen::MatrixXd& states) {
                const Eigen::MatrixXd q = dqn->online.q_batch(encode_batch(states));
                std::vector<int> a(static_cast<size_t>(q.cols()));
                for (Eigen::Index c = 0; c < q.cols(); ++c)
                    a[static_cast<size_t>(c)] = agents::argmax_lowest(q.col(c));
                return a;
            };
        } else if (reinforce) {
            p.discrete = [this](const Eigen::MatrixXd& states) {
                const Eigen::MatrixXd probs =
                    numkit::dense_forward_batch(reinforce->policy, encode_batch(states));
                std::vector<int> a(static_cast<size_t>(probs.cols()));
                for (Eigen::Index c = 0; c < probs.cols(); ++c)
                    a[static_cast<size_t>(c)] = agents::argmax_lowest(probs.col(c));
                return a;
            };
        } else {
            p.continuous = [this](const Eigen::MatrixXd& states) {
                return numkit::dense_forward_batch(ddpg->actor, encode_batch(states));
            };
        }
        return p;
    }

    void run() {
        const int horizon = cfg.env.horizon;
        for (int ep = 0; ep < cfg.episodes; ++ep) {
            const double eps =
                agents::schedule_value(cfg.agent.epsilon_start, cfg.agent.epsilon_end,
                                       cfg.agent.epsilon_decay_fraction, ep, cfg.episodes);
            const double noise =
                agents::schedule_value(cfg.agent.noise_start, cfg.agent.noise_end,
                                       cfg.agent.epsilon_decay_fraction, ep, cfg.episodes);

            EnvState state = env.reset(mix_seed(cfg.run_seed, kEpisode, static_cast<uint64_t>(ep)));
            std::vector<Transition> episode;
            while (!state.terminal) {
                const Eigen::VectorXd f = state.features(horizon);
                envsim::StepOutcome out;
                Transition t;
                if (dqn) {
                    out = env.step(state, dqn->act(encode(f), eps, explore_rng), cfg.reward_mode);
                } else if (reinforce) {
                    out = env.step(state, reinforce->act(encode(f), explore_rng), cfg.reward_mode);
                } else {
                    t.action_vec = ddpg->act(encode(f), noise, explore_rng);
                    out = env.continuous_step(state, t.action_vec, cfg.reward_mode);
                }
                t.state = f;
                t.item = out.item;
                t.action_features = env.item_features(out.item);
                t.reward = out.reward;
                t.next_state = out.next_state.features(horizon);
                t.done = out.done;
                if (reinforce) episode.push_back(t);
                replay.push(std::move(t));
                if (!reinforce) step_update();
                state = std::move(out.next_state);
            }
            if (reinforce && !episode.empty()) episode_update(std::move(episode));

            if ((ep + 1) % cfg.eval_period == 0) {
                const double score =
                    evaluate(env, policy_snapshot(), cfg.eval_episodes,
                             mix_seed(cfg.run_seed, kEval, static_cast<uint64_t>(eval_count)));
                ++eval_count;
                timeline.points.emplace_back(ep + 1, score);
            }
        }
    }
};

}  // namespace

void RunConfig::validate() const {
    env.validate();
    agent.validate();
    if (eval_period < 1) throw ConfigError("run.eval_period: must be >= 1");
    if (episodes < eval_period) throw ConfigError("run.episodes: must be >= eval_period");
    if (eval_episodes < 1) throw ConfigError("run.eval_episodes: must be >= 1");
    if (warmup_transitions < 0) throw ConfigError("run.warmup_transitions: must be >= 0");
}

uint64_t RunConfig::digest() const {
    ByteSink s;
    s.put_i(env.d);
    s.put_i(env.catalog_size);
    s.put_d(env.kappa);
    s.put_d(env.bias);
    s.put_d(env.eta);
    s.put_i(env.horizon);
    s.put_d(env.leave_base);
    s.put_d(env.gamma);
    s.put_d(env.noise_scale);
    s.put_u64(env.catalog_seed);
    s.put_i(static_cast<int>(agent.family));
    s.put_i(agent.double_q);
    s.put_i(agent.dueling);
    s.put_d(agent.epsilon_start);
    s.put_d(agent.epsilon_end);
    s.put_d(agent.epsilon_decay_fraction);
    s.put_i(agent.target_sync_period);
    s.put_d(agent.tau);
    s.put_i(agent.batch_size);
    for (int h : agent.hidden) s.put_i(h);
    s.put_d(agent.gamma);
    s.put_i(agent.replay_capacity);
    s.put_d(agent.learning_rate);
    s.put_d(agent.noise_start);
    s.put_d(agent.noise_end);
    s.put_i(agent.embedding_dim);
    s.put_i(static_cast<int>(reward_source));
    s.put_i(static_cast<int>(embedding_mode));
    s.put_i(static_cast<int>(reward_mode));
    s.put_i(episodes);
    s.put_i(eval_period);
    s.put_i(eval_episodes);
    s.put_i(warmup_transitions);
    return s.h;
}

uint64_t fnv1a(const void* data, size_t bytes, uint64_t seed) {
    const auto* p = static_cast<const unsigned char*>(data);
    uint64_t h = seed;
    for (size_t i = 0; i < bytes; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

double evaluate(const envsim::Env& env, const EvalPolicy& policy, int n_episodes,
                uint64_t eval_seed) {
    if (n_episodes < 1) throw UsageError("evaluate: n_episodes must be >= 1");
    if (!policy.discrete && !policy.continuous) throw UsageError("evaluate: empty policy");

    struct Slot {
        EnvState state{};
        double ret = 0.0;
    };
    std::vector<Slot> slots(static_cast<size_t>(n_episodes));
    std::vector<int> active;
    for (int i = 0; i < n_episodes; ++i) {
        slots[static_cast<size_t>(i)].state = env.reset(mix_seed(eval_seed, static_cast<uint64_t>(i)));
        active.push_back(i);
    }

    const int f_dim = env.feature_size();
    const int horizon = env.config().horizon;
    // Lockstep batching: per-episode streams are independent, so cohort
    // composition cannot change any episode's outcome.
    while (!active.empty()) {
        Eigen::MatrixXd states(f_dim, static_cast<int>(active.size()));
        for (size_t j = 0; j < active.size(); ++j)
            states.col(static_cast<int>(j)) = slots[static_cast<size_t>(active[j])].state.features(horizon);

        std::vector<int> actions;
        Eigen::MatrixXd w;
        if (policy.discrete)
            actions = policy.discrete(states);
        else
            w = policy.continuous(states);

        std::vector<int> still;
        for (size_t j = 0; j < active.size(); ++j) {
            Slot& slot = slots[static_cast<size_t>(active[j])];
            envsim::StepOutcome out =
                policy.discrete
                    ? env.step(slot.state, actions[j], envsim::RewardMode::stochastic)
                    : env.continuous_step(slot.state, w.col(static_cast<int>(j)),
                                          envsim::RewardMode::stochastic);
            slot.ret += out.reward;
            slot.state = std::move(out.next_state);
            if (!out.done) still.push_back(active[j]);
        }
        active = std::move(still);
    }

    double total = 0.0;
    for (const Slot& s : slots) total += s.ret;
    return total / n_episodes;
}

MetricsTimeline train(const RunConfig& config, const TrainHooks& hooks) {
    config.validate();
    Trainer trainer(config, hooks);
    try {
        trainer.run();
    } catch (const NumericsError& e) {
        trainer.timeline.diverged = true;
        trainer.timeline.error = e.what();
    }
    return std::move(trainer.timeline);
}

}  // namespace srslab::harness
