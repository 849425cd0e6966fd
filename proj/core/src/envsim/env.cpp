#include "srslab/envsim/env.hpp"

#include <cmath>

#include "srslab/errors.hpp"

namespace srslab::envsim {

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

Eigen::VectorXd sample_unit_vector(numkit::SeededRng& rng, int d) {
    Eigen::VectorXd v = rng.normal_vector(d);
    const double norm = v.norm();
    if (norm < 1e-12) return Eigen::VectorXd::Unit(d, 0);
    return v / norm;
}

}  // namespace

void EnvConfig::validate() const {
    if (d < 1) throw ConfigError("env.d: must be >= 1");
    if (catalog_size < 1) throw ConfigError("env.catalog_size: must be >= 1");
    if (!(eta > 0.0 && eta < 1.0)) throw ConfigError("env.eta: must be in (0, 1)");
    if (!(leave_base >= 0.0 && leave_base < 1.0))
        throw ConfigError("env.leave_base: must be in [0, 1)");
    if (!(gamma >= 0.0 && gamma < 1.0)) throw ConfigError("env.gamma: must be in [0, 1)");
    if (horizon < 1) throw ConfigError("env.horizon: must be >= 1");
    if (noise_scale < 0.0) throw ConfigError("env.noise_scale: must be >= 0");
    if (!std::isfinite(kappa)) throw ConfigError("env.kappa: must be finite");
    if (!std::isfinite(bias)) throw ConfigError("env.bias: must be finite");
}

Eigen::VectorXd EnvState::features(int horizon) const {
    Eigen::VectorXd f(u.size() + 2);
    f.head(u.size()) = u;
    f[u.size()] = static_cast<double>(step_index) / static_cast<double>(horizon);
    f[u.size() + 1] = last_purchase ? 1.0 : 0.0;
    return f;
}

Env::Env(const EnvConfig& config) : config_(config) {
    config_.validate();
    numkit::SeededRng rng(config_.catalog_seed);
    catalog_.resize(config_.d, config_.catalog_size);
    for (int i = 0; i < config_.catalog_size; ++i) catalog_.col(i) = sample_unit_vector(rng, config_.d);
}

EnvState Env::reset(uint64_t episode_seed) const {
    EnvState s;
    s.rng = numkit::SeededRng(episode_seed);
    s.u = sample_unit_vector(s.rng, config_.d);
    s.step_index = 0;
    s.last_purchase = false;
    s.terminal = false;
    return s;
}

double Env::true_prob(const EnvState& state, int action) const {
    if (action < 0 || action >= config_.catalog_size)
        throw UsageError("true_prob: action out of range");
    return sigmoid(config_.kappa * state.u.dot(catalog_.col(action)) + config_.bias);
}

double Env::true_prob_features(const Eigen::VectorXd& state_features, int action) const {
    if (action < 0 || action >= config_.catalog_size)
        throw UsageError("true_prob_features: action out of range");
    if (state_features.size() < config_.d)
        throw ConfigError("true_prob_features: feature vector too short");
    return sigmoid(config_.kappa * state_features.head(config_.d).dot(catalog_.col(action)) +
                   config_.bias);
}

StepOutcome Env::step(const EnvState& state, int action, RewardMode mode) const {
    if (state.terminal || state.step_index >= config_.horizon)
        throw UsageError("step: episode already terminal");
    if (action < 0 || action >= config_.catalog_size) throw UsageError("step: action out of range");

    StepOutcome out;
    out.item = action;
    out.true_prob = true_prob(state, action);
    out.next_state = state;
    auto& rng = out.next_state.rng;

    // Fixed draw order (purchase, noise, leave) so both reward modes
    // consume identical streams and visit identical state sequences.
    out.purchased = rng.bernoulli(out.true_prob);
    out.reward = (mode == RewardMode::deterministic) ? out.true_prob
                                                     : (out.purchased ? 1.0 : 0.0);

    Eigen::VectorXd noise = rng.normal_vector(config_.d);
    Eigen::VectorXd u = (1.0 - config_.eta) * state.u + config_.noise_scale * noise;
    if (out.purchased) u += config_.eta * catalog_.col(action);
    const double norm = u.norm();
    out.next_state.u = (norm < 1e-12) ? Eigen::VectorXd::Unit(config_.d, 0) : (u / norm).eval();

    bool leave = false;
    if (!out.purchased) leave = rng.bernoulli(config_.leave_base);

    out.next_state.step_index = state.step_index + 1;
    out.next_state.last_purchase = out.purchased;
    out.done = leave || out.next_state.step_index >= config_.horizon;
    out.next_state.terminal = out.done;
    return out;
}

int Env::rank_item(const Eigen::VectorXd& w) const {
    if (w.size() != config_.d) throw ConfigError("rank_item: ranking vector length != d");
    if (!w.allFinite()) throw UsageError("rank_item: non-finite ranking vector");
    int best = 0;
    double best_score = w.dot(catalog_.col(0));
    for (int i = 1; i < config_.catalog_size; ++i) {
        const double s = w.dot(catalog_.col(i));
        if (s > best_score) {
            best_score = s;
            best = i;
        }
    }
    return best;
}

StepOutcome Env::continuous_step(const EnvState& state, const Eigen::VectorXd& w,
                                 RewardMode mode) const {
    return step(state, rank_item(w), mode);
}

int Env::greedy_oracle_action(const EnvState& state) const {
    int best = 0;
    double best_p = true_prob(state, 0);
    for (int i = 1; i < config_.catalog_size; ++i) {
        const double p = true_prob(state, i);
        if (p > best_p) {
            best_p = p;
            best = i;
        }
    }
    return best;
}

double Env::oracle_greedy_return(int n_episodes, uint64_t seed) const {
    if (n_episodes < 1) throw UsageError("oracle_greedy_return: n_episodes must be >= 1");
    double total = 0.0;
    for (int ep = 0; ep < n_episodes; ++ep) {
        EnvState s = reset(numkit::mix_seed(seed, static_cast<uint64_t>(ep)));
        double ret = 0.0;
        while (!s.terminal) {
            StepOutcome o = step(s, greedy_oracle_action(s), RewardMode::stochastic);
            ret += o.reward;
            s = std::move(o.next_state);
        }
        total += ret;
    }
    return total / n_episodes;
}

}  // namespace srslab::envsim
