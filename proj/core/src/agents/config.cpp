#include "srslab/agents/config.hpp"

#include <algorithm>

#include "srslab/errors.hpp"

namespace srslab::agents {

std::string family_name(Family f) {
    switch (f) {
        case Family::dqn: return "dqn";
        case Family::reinforce: return "reinforce";
        case Family::ddpg: return "ddpg";
    }
    return "?";
}

void AgentConfig::validate() const {
    auto in01 = [](double x) { return x >= 0.0 && x <= 1.0; };
    if (!in01(epsilon_start) || !in01(epsilon_end))
        throw ConfigError("agent.epsilon: schedule endpoints must be in [0, 1]");
    if (!(epsilon_decay_fraction > 0.0 && epsilon_decay_fraction <= 1.0))
        throw ConfigError("agent.epsilon_decay_fraction: must be in (0, 1]");
    if (!(tau > 0.0 && tau <= 1.0)) throw ConfigError("agent.tau: must be in (0, 1]");
    if (batch_size < 1) throw ConfigError("agent.batch_size: must be >= 1");
    if (target_sync_period < 1) throw ConfigError("agent.target_sync_period: must be >= 1");
    if (replay_capacity < batch_size)
        throw ConfigError("agent.replay_capacity: must be >= batch_size");
    if (!(gamma >= 0.0 && gamma < 1.0)) throw ConfigError("agent.gamma: must be in [0, 1)");
    if (learning_rate <= 0.0) throw ConfigError("agent.learning_rate: must be positive");
    if (embedding_dim < 1) throw ConfigError("agent.embedding_dim: must be >= 1");
    for (int h : hidden)
        if (h < 1) throw ConfigError("agent.hidden: layer sizes must be >= 1");
}

double schedule_value(double start, double end, double decay_fraction, int episode,
                      int total_episodes) {
    const double decay_span = std::max(1.0, decay_fraction * total_episodes);
    const double t = std::min(1.0, static_cast<double>(episode) / decay_span);
    return start + t * (end - start);
}

}  // namespace srslab::agents
