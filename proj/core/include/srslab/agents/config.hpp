#pragma once

#include <string>
#include <vector>

namespace srslab::agents {

enum class Family { dqn, reinforce, ddpg };

std::string family_name(Family f);

struct AgentConfig {
    Family family = Family::dqn;
    bool double_q = false;
    bool dueling = false;

    double epsilon_start = 1.0;
    double epsilon_end = 0.05;
    double epsilon_decay_fraction = 0.3;  // fraction of training episodes

    int target_sync_period = 100;  // hard sync, value-based
    double tau = 0.005;            // soft sync, actor-critic

    int batch_size = 64;
    std::vector<int> hidden = {64, 64};
    double gamma = 0.9;
    int replay_capacity = 10000;
    double learning_rate = 1e-3;

    double noise_start = 0.2;  // actor exploration noise scale
    double noise_end = 0.02;

    int embedding_dim = 16;  // shared-representation variants only

    void validate() const;  // throws ConfigError
};

// Linear decay over the first `decay_fraction` of training, then flat.
double schedule_value(double start, double end, double decay_fraction, int episode,
                      int total_episodes);

}  // namespace srslab::agents
