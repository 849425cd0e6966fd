#pragma once

#include <string>
#include <vector>

#include "srslab/harness/suite.hpp"

namespace srslab::report {

struct VariantSpec {
    std::string name;
    stabilize::RewardSource reward_source = stabilize::RewardSource::observed;
    stabilize::EmbeddingMode embedding_mode = stabilize::EmbeddingMode::separate;
    envsim::RewardMode reward_mode = envsim::RewardMode::stochastic;
};

struct EmitFlags {
    bool csv = true;
    bool json = true;
    bool svg = true;
};

// One experiment: an environment, an agent, the variant roster, and seeds.
struct ExperimentSpec {
    std::string experiment = "experiment";
    envsim::EnvConfig env;
    agents::AgentConfig agent;
    std::vector<VariantSpec> variants;
    int episodes = 3000;
    int eval_period = 10;
    int eval_episodes = 100;
    int warmup_transitions = 500;
    std::vector<uint64_t> seeds;
    std::string output_dir;  // defaults to out/<experiment>
    EmitFlags emit;
    harness::SuiteOptions suite;  // parallelism comes from the CLI, not the file

    void validate() const;
    std::vector<harness::VariantPlan> plans() const;
};

// Parses the documented JSON format; fills defaults, rejects unknown keys,
// and validates field ranges with named-field errors.
ExperimentSpec parse_spec(const std::string& text);

// Fully materialized round-trip form: parse(serialize(s)) == s.
std::string serialize_spec(const ExperimentSpec& spec);

std::string reward_source_name(stabilize::RewardSource s);
std::string embedding_mode_name(stabilize::EmbeddingMode m);
std::string reward_mode_name(envsim::RewardMode m);

}  // namespace srslab::report
