#include "srslab/report/spec.hpp"

#include <set>

#include <json.hpp>

#include "srslab/errors.hpp"

namespace srslab::report {

using nlohmann::ordered_json;

namespace {

void check_keys(const ordered_json& obj, const std::set<std::string>& allowed,
                const std::string& scope) {
    for (const auto& [key, _] : obj.items()) {
        if (!allowed.count(key))
            throw ConfigError("spec: unknown key \"" + scope + key + "\"");
    }
}

template <typename T>
T field(const ordered_json& obj, const std::string& scope, const std::string& key, T fallback) {
    if (!obj.contains(key)) return fallback;
    try {
        return obj.at(key).get<T>();
    } catch (const ordered_json::exception& e) {
        throw ConfigError("spec: bad value for \"" + scope + key + "\": " + e.what());
    }
}

agents::Family parse_family(const std::string& s) {
    if (s == "dqn") return agents::Family::dqn;
    if (s == "reinforce") return agents::Family::reinforce;
    if (s == "ddpg") return agents::Family::ddpg;
    throw ConfigError("spec: agent.family must be one of dqn|reinforce|ddpg, got \"" + s + "\"");
}

stabilize::RewardSource parse_reward_source(const std::string& s) {
    if (s == "observed") return stabilize::RewardSource::observed;
    if (s == "estimated") return stabilize::RewardSource::estimated;
    throw ConfigError("spec: reward_source must be observed|estimated, got \"" + s + "\"");
}

stabilize::EmbeddingMode parse_embedding_mode(const std::string& s) {
    if (s == "separate") return stabilize::EmbeddingMode::separate;
    if (s == "shared_supervised") return stabilize::EmbeddingMode::shared_supervised;
    throw ConfigError("spec: embedding_mode must be separate|shared_supervised, got \"" + s + "\"");
}

envsim::RewardMode parse_reward_mode(const std::string& s) {
    if (s == "deterministic") return envsim::RewardMode::deterministic;
    if (s == "stochastic") return envsim::RewardMode::stochastic;
    throw ConfigError("spec: reward_mode must be deterministic|stochastic, got \"" + s + "\"");
}

}  // namespace

std::string reward_source_name(stabilize::RewardSource s) {
    return s == stabilize::RewardSource::observed ? "observed" : "estimated";
}

std::string embedding_mode_name(stabilize::EmbeddingMode m) {
    return m == stabilize::EmbeddingMode::separate ? "separate" : "shared_supervised";
}

std::string reward_mode_name(envsim::RewardMode m) {
    return m == envsim::RewardMode::deterministic ? "deterministic" : "stochastic";
}

void ExperimentSpec::validate() const {
    env.validate();
    agent.validate();
    if (variants.empty()) throw ConfigError("spec: variants must contain at least one entry");
    if (seeds.empty()) throw ConfigError("spec: seeds must contain at least one entry");
    std::set<std::string> names;
    for (const auto& v : variants) {
        if (v.name.empty()) throw ConfigError("spec: variant name must not be empty");
        if (!names.insert(v.name).second)
            throw ConfigError("spec: duplicate variant name \"" + v.name + "\"");
    }
    if (eval_period < 1) throw ConfigError("spec: eval_period must be >= 1");
    if (episodes < eval_period) throw ConfigError("spec: episodes must be >= eval_period");
    if (eval_episodes < 1) throw ConfigError("spec: eval_episodes must be >= 1");
    if (warmup_transitions < 0) throw ConfigError("spec: warmup_transitions must be >= 0");
    if (suite.threshold_factor <= 0.0) throw ConfigError("spec: threshold_factor must be positive");
    if (suite.threshold_k < 1) throw ConfigError("spec: threshold_k must be >= 1");
    if (suite.oracle_episodes < 1) throw ConfigError("spec: oracle_episodes must be >= 1");
    if (suite.final_window < 1) throw ConfigError("spec: final_window must be >= 1");
}

std::vector<harness::VariantPlan> ExperimentSpec::plans() const {
    std::vector<harness::VariantPlan> out;
    out.reserve(variants.size());
    for (const auto& v : variants) {
        harness::RunConfig cfg;
        cfg.env = env;
        cfg.agent = agent;
        cfg.reward_source = v.reward_source;
        cfg.embedding_mode = v.embedding_mode;
        cfg.reward_mode = v.reward_mode;
        cfg.episodes = episodes;
        cfg.eval_period = eval_period;
        cfg.eval_episodes = eval_episodes;
        cfg.warmup_transitions = warmup_transitions;
        out.push_back({v.name, cfg});
    }
    return out;
}

ExperimentSpec parse_spec(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const ordered_json::parse_error& e) {
        throw ConfigError(std::string("spec: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("spec: top level must be a JSON object");

    check_keys(j, {"experiment", "env", "agent", "variants", "episodes", "eval_period",
                   "eval_episodes", "warmup_transitions", "seeds", "output_dir", "emit",
                   "threshold_factor", "threshold_k", "oracle_episodes", "final_window"},
               "");

    ExperimentSpec spec;
    spec.experiment = field<std::string>(j, "", "experiment", "experiment");

    if (j.contains("env")) {
        const auto& e = j.at("env");
        check_keys(e, {"d", "catalog_size", "kappa", "bias", "eta", "horizon", "leave_base",
                       "gamma", "noise_scale", "catalog_seed"},
                   "env.");
        spec.env.d = field<int>(e, "env.", "d", spec.env.d);
        spec.env.catalog_size = field<int>(e, "env.", "catalog_size", spec.env.catalog_size);
        spec.env.kappa = field<double>(e, "env.", "kappa", spec.env.kappa);
        spec.env.bias = field<double>(e, "env.", "bias", spec.env.bias);
        spec.env.eta = field<double>(e, "env.", "eta", spec.env.eta);
        spec.env.horizon = field<int>(e, "env.", "horizon", spec.env.horizon);
        spec.env.leave_base = field<double>(e, "env.", "leave_base", spec.env.leave_base);
        spec.env.gamma = field<double>(e, "env.", "gamma", spec.env.gamma);
        spec.env.noise_scale = field<double>(e, "env.", "noise_scale", spec.env.noise_scale);
        spec.env.catalog_seed = field<uint64_t>(e, "env.", "catalog_seed", spec.env.catalog_seed);
    }

    spec.agent.gamma = spec.env.gamma;  // track the environment unless overridden
    if (j.contains("agent")) {
        const auto& a = j.at("agent");
        check_keys(a, {"family", "double_q", "dueling", "epsilon_start", "epsilon_end",
                       "epsilon_decay_fraction", "target_sync_period", "tau", "batch_size",
                       "hidden", "gamma", "replay_capacity", "learning_rate", "noise_start",
                       "noise_end", "embedding_dim"},
                   "agent.");
        spec.agent.family = parse_family(field<std::string>(a, "agent.", "family", "dqn"));
        spec.agent.double_q = field<bool>(a, "agent.", "double_q", spec.agent.double_q);
        spec.agent.dueling = field<bool>(a, "agent.", "dueling", spec.agent.dueling);
        spec.agent.epsilon_start = field<double>(a, "agent.", "epsilon_start", spec.agent.epsilon_start);
        spec.agent.epsilon_end = field<double>(a, "agent.", "epsilon_end", spec.agent.epsilon_end);
        spec.agent.epsilon_decay_fraction =
            field<double>(a, "agent.", "epsilon_decay_fraction", spec.agent.epsilon_decay_fraction);
        spec.agent.target_sync_period =
            field<int>(a, "agent.", "target_sync_period", spec.agent.target_sync_period);
        spec.agent.tau = field<double>(a, "agent.", "tau", spec.agent.tau);
        spec.agent.batch_size = field<int>(a, "agent.", "batch_size", spec.agent.batch_size);
        spec.agent.hidden = field<std::vector<int>>(a, "agent.", "hidden", spec.agent.hidden);
        spec.agent.gamma = field<double>(a, "agent.", "gamma", spec.agent.gamma);
        spec.agent.replay_capacity =
            field<int>(a, "agent.", "replay_capacity", spec.agent.replay_capacity);
        spec.agent.learning_rate = field<double>(a, "agent.", "learning_rate", spec.agent.learning_rate);
        spec.agent.noise_start = field<double>(a, "agent.", "noise_start", spec.agent.noise_start);
        spec.agent.noise_end = field<double>(a, "agent.", "noise_end", spec.agent.noise_end);
        spec.agent.embedding_dim = field<int>(a, "agent.", "embedding_dim", spec.agent.embedding_dim);
    }

    if (!j.contains("variants") || !j.at("variants").is_array())
        throw ConfigError("spec: variants must be an array");
    for (const auto& v : j.at("variants")) {
        check_keys(v, {"name", "reward_source", "embedding_mode", "reward_mode"}, "variants[].");
        VariantSpec vs;
        if (!v.contains("name")) throw ConfigError("spec: variants[].name is required");
        vs.name = v.at("name").get<std::string>();
        vs.reward_source =
            parse_reward_source(field<std::string>(v, "variants[].", "reward_source", "observed"));
        vs.embedding_mode =
            parse_embedding_mode(field<std::string>(v, "variants[].", "embedding_mode", "separate"));
        vs.reward_mode =
            parse_reward_mode(field<std::string>(v, "variants[].", "reward_mode", "stochastic"));
        spec.variants.push_back(std::move(vs));
    }

    spec.episodes = field<int>(j, "", "episodes", spec.episodes);
    spec.eval_period = field<int>(j, "", "eval_period", spec.eval_period);
    spec.eval_episodes = field<int>(j, "", "eval_episodes", spec.eval_episodes);
    spec.warmup_transitions = field<int>(j, "", "warmup_transitions", spec.warmup_transitions);

    if (!j.contains("seeds") || !j.at("seeds").is_array())
        throw ConfigError("spec: seeds must be an array");
    for (const auto& s : j.at("seeds")) spec.seeds.push_back(s.get<uint64_t>());

    spec.output_dir = field<std::string>(j, "", "output_dir", "out/" + spec.experiment);

    if (j.contains("emit")) {
        const auto& e = j.at("emit");
        check_keys(e, {"csv", "json", "svg"}, "emit.");
        spec.emit.csv = field<bool>(e, "emit.", "csv", true);
        spec.emit.json = field<bool>(e, "emit.", "json", true);
        spec.emit.svg = field<bool>(e, "emit.", "svg", true);
    }

    spec.suite.threshold_factor =
        field<double>(j, "", "threshold_factor", spec.suite.threshold_factor);
    spec.suite.threshold_k = field<int>(j, "", "threshold_k", spec.suite.threshold_k);
    spec.suite.oracle_episodes = field<int>(j, "", "oracle_episodes", spec.suite.oracle_episodes);
    spec.suite.final_window = field<int>(j, "", "final_window", spec.suite.final_window);

    spec.validate();
    return spec;
}

std::string serialize_spec(const ExperimentSpec& spec) {
    ordered_json j;
    j["experiment"] = spec.experiment;
    j["env"] = {{"d", spec.env.d},
                {"catalog_size", spec.env.catalog_size},
                {"kappa", spec.env.kappa},
                {"bias", spec.env.bias},
                {"eta", spec.env.eta},
                {"horizon", spec.env.horizon},
                {"leave_base", spec.env.leave_base},
                {"gamma", spec.env.gamma},
                {"noise_scale", spec.env.noise_scale},
                {"catalog_seed", spec.env.catalog_seed}};
    j["agent"] = {{"family", agents::family_name(spec.agent.family)},
                  {"double_q", spec.agent.double_q},
                  {"dueling", spec.agent.dueling},
                  {"epsilon_start", spec.agent.epsilon_start},
                  {"epsilon_end", spec.agent.epsilon_end},
                  {"epsilon_decay_fraction", spec.agent.epsilon_decay_fraction},
                  {"target_sync_period", spec.agent.target_sync_period},
                  {"tau", spec.agent.tau},
                  {"batch_size", spec.agent.batch_size},
                  {"hidden", spec.agent.hidden},
                  {"gamma", spec.agent.gamma},
                  {"replay_capacity", spec.agent.replay_capacity},
                  {"learning_rate", spec.agent.learning_rate},
                  {"noise_start", spec.agent.noise_start},
                  {"noise_end", spec.agent.noise_end},
                  {"embedding_dim", spec.agent.embedding_dim}};
    j["variants"] = ordered_json::array();
    for (const auto& v : spec.variants)
        j["variants"].push_back({{"name", v.name},
                                 {"reward_source", reward_source_name(v.reward_source)},
                                 {"embedding_mode", embedding_mode_name(v.embedding_mode)},
                                 {"reward_mode", reward_mode_name(v.reward_mode)}});
    j["episodes"] = spec.episodes;
    j["eval_period"] = spec.eval_period;
    j["eval_episodes"] = spec.eval_episodes;
    j["warmup_transitions"] = spec.warmup_transitions;
    j["seeds"] = spec.seeds;
    j["output_dir"] = spec.output_dir;
    j["emit"] = {{"csv", spec.emit.csv}, {"json", spec.emit.json}, {"svg", spec.emit.svg}};
    j["threshold_factor"] = spec.suite.threshold_factor;
    j["threshold_k"] = spec.suite.threshold_k;
    j["oracle_episodes"] = spec.suite.oracle_episodes;
    j["final_window"] = spec.suite.final_window;
    return j.dump(2) + "\n";
}

}  // namespace srslab::report
