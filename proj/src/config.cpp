#include "mvbandit/config.hpp"

#include <fstream>
#include <json.hpp>

namespace mvbandit {

namespace {

using nlohmann::json;

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file: " + path);
  }
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config is not valid json (" + path + "): " + e.what());
  }
}

const json& require_key(const json& node, const std::string& key, const std::string& where) {
  const auto it = node.find(key);
  if (it == node.end()) {
    throw ConfigError("missing key '" + key + "' in " + where);
  }
  return *it;
}

double require_number(const json& node, const std::string& key, const std::string& where) {
  const json& v = require_key(node, key, where);
  if (!v.is_number()) {
    throw ConfigError("key '" + key + "' in " + where + " must be a number");
  }
  return v.get<double>();
}

std::uint64_t require_u64(const json& node, const std::string& key, const std::string& where) {
  const json& v = require_key(node, key, where);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    throw ConfigError("key '" + key + "' in " + where + " must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

std::uint64_t optional_u64(const json& node, const std::string& key, const std::string& where,
                           std::uint64_t fallback) {
  return node.contains(key) ? require_u64(node, key, where) : fallback;
}

double optional_number(const json& node, const std::string& key, const std::string& where,
                       double fallback) {
  return node.contains(key) ? require_number(node, key, where) : fallback;
}

ArmDistribution parse_arm(const json& node, const std::string& where) {
  if (!node.is_object()) {
    throw ConfigError("arm entry in " + where + " must be an object");
  }
  const json& kind = require_key(node, "kind", where);
  if (kind == "gaussian") {
    return ArmDistribution::gaussian(require_number(node, "mean", where),
                                     require_number(node, "variance", where));
  }
  if (kind == "bernoulli") {
    return ArmDistribution::bernoulli(require_number(node, "p", where));
  }
  throw ConfigError("unknown arm kind '" + kind.dump() + "' in " + where +
                    " (expected gaussian or bernoulli)");
}

BanditInstance parse_instance(const json& node, const std::string& where) {
  const double rho = require_number(node, "rho", where);
  const double a = optional_number(node, "a", where, kDefaultConcentrationConstant);
  const json& arms_node = require_key(node, "arms", where);
  if (!arms_node.is_array() || arms_node.empty()) {
    throw ConfigError("key 'arms' in " + where + " must be a non-empty list");
  }
  std::vector<ArmDistribution> arms;
  arms.reserve(arms_node.size());
  for (std::size_t i = 0; i < arms_node.size(); ++i) {
    arms.push_back(parse_arm(arms_node[i], where + ".arms[" + std::to_string(i) + "]"));
  }
  return BanditInstance(std::move(arms), rho, a);
}

PolicySpec parse_policy(const json& node, const std::string& where) {
  if (!node.is_object()) {
    throw ConfigError("policy entry in " + where + " must be an object");
  }
  const json& kind = require_key(node, "kind", where);
  if (kind == "mv_ucb") {
    MvUcbPolicy policy;
    if (node.contains("b")) {
      policy.bonus_scale = require_number(node, "b", where);
    }
    return policy;
  }
  if (kind == "mv_dsee") {
    MvDseePolicy policy;
    const json& mode = require_key(node, "dsee_mode", where);
    if (mode == "model_independent") {
      policy.mode = MvDseePolicy::Mode::kModelIndependent;
      policy.exploration_weight = optional_number(node, "w", where, 1.0);
    } else if (mode == "model_specific") {
      policy.mode = MvDseePolicy::Mode::kModelSpecific;
    } else {
      throw ConfigError("unknown dsee_mode '" + mode.dump() + "' in " + where);
    }
    return policy;
  }
  if (kind == "single_arm") {
    return SingleArmPolicy{static_cast<std::size_t>(require_u64(node, "arm", where))};
  }
  if (kind == "counterexample") {
    return ThresholdSwitchPolicy{optional_number(node, "threshold", where, 0.5)};
  }
  if (kind == "rn_ucb") {
    RiskNeutralUcbPolicy policy;
    policy.bonus_scale = optional_number(node, "c", where, policy.bonus_scale);
    return policy;
  }
  throw ConfigError("unknown policy kind '" + kind.dump() + "' in " + where);
}

std::vector<std::uint64_t> parse_horizons(const json& node, const std::string& where) {
  const json& list = require_key(node, "horizons", where);
  if (!list.is_array() || list.empty()) {
    throw ConfigError("key 'horizons' in " + where + " must be a non-empty list");
  }
  std::vector<std::uint64_t> horizons;
  for (const json& h : list) {
    if (!h.is_number_integer() && !h.is_number_unsigned()) {
      throw ConfigError("key 'horizons' in " + where + " must hold integers");
    }
    horizons.push_back(h.get<std::uint64_t>());
  }
  return horizons;
}

Scenario parse_scenario(const json& node, const std::string& where) {
  const json& name = require_key(node, "name", where);
  if (!name.is_string()) {
    throw ConfigError("key 'name' in " + where + " must be a string");
  }
  std::vector<PolicySpec> policies;
  const json& policy_list = require_key(node, "policies", where);
  if (!policy_list.is_array() || policy_list.empty()) {
    throw ConfigError("key 'policies' in " + where + " must be a non-empty list");
  }
  for (std::size_t i = 0; i < policy_list.size(); ++i) {
    policies.push_back(parse_policy(policy_list[i], where + ".policies[" + std::to_string(i) + "]"));
  }
  Scenario scenario{
      .name = name.get<std::string>(),
      .instance = parse_instance(node, where),
      .policies = std::move(policies),
      .horizons = parse_horizons(node, where),
      .replications = optional_u64(node, "replications", where, 1000),
      .seed = optional_u64(node, "seed", where, kDefaultSeed),
      .emit_sample_trace = node.value("emit_trace", false),
  };
  validate_scenario(scenario);
  return scenario;
}

}  // namespace

std::vector<Scenario> load_scenarios(const std::string& path) {
  const json root = load_json_file(path);
  const json& list = require_key(root, "scenarios", "config");
  if (!list.is_array() || list.empty()) {
    throw ConfigError("key 'scenarios' must be a non-empty list");
  }
  std::vector<Scenario> scenarios;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < list.size(); ++i) {
    Scenario s = parse_scenario(list[i], "scenarios[" + std::to_string(i) + "]");
    for (const std::string& existing : names) {
      if (existing == s.name) {
        throw ConfigError("duplicate scenario name '" + s.name + "'");
      }
    }
    names.push_back(s.name);
    scenarios.push_back(std::move(s));
  }
  return scenarios;
}

VerifyBoundsConfig load_verify_bounds(const std::string& path) {
  const json root = load_json_file(path);
  VerifyBoundsConfig config;
  if (root.contains("concentration")) {
    const json& list = root["concentration"];
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string where = "concentration[" + std::to_string(i) + "]";
      const json& node = list[i];
      ConcentrationJob job{
          .dist = parse_arm(require_key(node, "dist", where), where + ".dist"),
          .rho = require_number(node, "rho", where),
          .a = optional_number(node, "a", where, kDefaultConcentrationConstant),
          .grid = {},
          .replications = optional_u64(node, "replications", where, 100000),
      };
      const json& s_grid = require_key(node, "s_grid", where);
      const json& delta_grid = require_key(node, "delta_grid", where);
      if (!s_grid.is_array() || !delta_grid.is_array() || s_grid.empty() || delta_grid.empty()) {
        throw ConfigError("keys 's_grid' and 'delta_grid' in " + where +
                          " must be non-empty lists");
      }
      for (const json& s : s_grid) {
        for (const json& d : delta_grid) {
          job.grid.push_back({s.get<std::uint64_t>(), d.get<double>()});
        }
      }
      config.concentration.push_back(std::move(job));
    }
  }
  if (root.contains("stopping_time")) {
    const json& list = root["stopping_time"];
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string where = "stopping_time[" + std::to_string(i) + "]";
      const json& node = list[i];
      config.stopping_time.push_back(StoppingTimeJob{
          .instance = parse_instance(node, where),
          .policy = parse_policy(require_key(node, "policy", where), where + ".policy"),
          .horizon = require_u64(node, "horizon", where),
          .replications = optional_u64(node, "replications", where, 1000),
      });
    }
  }
  if (root.contains("suboptimal_pulls")) {
    const json& list = root["suboptimal_pulls"];
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string where = "suboptimal_pulls[" + std::to_string(i) + "]";
      const json& node = list[i];
      PullBoundJob job{
          .instance = parse_instance(node, where),
          .policy = MvUcbPolicy{},
          .horizon = require_u64(node, "horizon", where),
          .replications = optional_u64(node, "replications", where, 1000),
      };
      if (node.contains("b")) {
        job.policy.bonus_scale = require_number(node, "b", where);
      }
      config.suboptimal_pulls.push_back(std::move(job));
    }
  }
  if (config.concentration.empty() && config.stopping_time.empty() &&
      config.suboptimal_pulls.empty()) {
    throw ConfigError(
        "verify-bounds config needs at least one of: concentration, stopping_time, "
        "suboptimal_pulls");
  }
  return config;
}

MinimaxConfig load_minimax(const std::string& path) {
  const json root = load_json_file(path);
  MinimaxConfig config;
  config.rho = optional_number(root, "rho", "config", config.rho);
  if (root.contains("horizons")) {
    config.horizons = parse_horizons(root, "config");
  }
  config.replications = optional_u64(root, "replications", "config", config.replications);
  config.exploration_weight = optional_number(root, "w", "config", config.exploration_weight);
  config.d6 = optional_number(root, "d6", "config", config.d6);
  config.seed = optional_u64(root, "seed", "config", config.seed);
  return config;
}

RegretCurveConfig load_regret_curve(const std::string& path) {
  const json root = load_json_file(path);
  RegretCurveConfig config;
  const json& deltas = require_key(root, "deltas", "config");
  if (!deltas.is_array() || deltas.empty()) {
    throw ConfigError("key 'deltas' must be a non-empty list");
  }
  for (const json& d : deltas) {
    config.deltas.push_back(d.get<double>());
  }
  if (root.contains("horizons")) {
    config.horizons = parse_horizons(root, "config");
  }
  config.replications = optional_u64(root, "replications", "config", config.replications);
  if (root.contains("policies")) {
    config.policies.clear();
    const json& list = root["policies"];
    for (std::size_t i = 0; i < list.size(); ++i) {
      config.policies.push_back(parse_policy(list[i], "policies[" + std::to_string(i) + "]"));
    }
  }
  config.seed = optional_u64(root, "seed", "config", config.seed);
  return config;
}

ArmDistribution parse_arm_json(const std::string& json_text) {
  return parse_arm(json::parse(json_text), "arm");
}

PolicySpec parse_policy_json(const std::string& json_text) {
  return parse_policy(json::parse(json_text), "policy");
}

std::string builtin_catalog_json() {
  json catalog;
  catalog["scenarios"] = json::array();
  for (double rho : {1.0, 5.0}) {
    const Scenario s = risk_profile_scenario(rho);
    json node;
    node["name"] = s.name;
    node["rho"] = rho;
    node["a"] = s.instance.concentration();
    node["arms"] = json::array();
    for (const ArmDistribution& arm : s.instance.arms()) {
      node["arms"].push_back({{"kind", "gaussian"}, {"mean", arm.mean()}, {"variance", arm.variance()}});
    }
    node["policies"] = json::array({{{"kind", "mv_ucb"}}});
    node["horizons"] = s.horizons;
    node["replications"] = s.replications;
    node["seed"] = s.seed;
    node["emit_trace"] = true;
    catalog["scenarios"].push_back(node);
  }
  for (double delta : {0.1, 0.25, 0.4}) {
    const Scenario s = gap_sweep_scenario(delta);
    json node;
    node["name"] = s.name;
    node["rho"] = 1.0;
    node["a"] = s.instance.concentration();
    node["arms"] = json::array();
    for (const ArmDistribution& arm : s.instance.arms()) {
      node["arms"].push_back({{"kind", "gaussian"}, {"mean", arm.mean()}, {"variance", arm.variance()}});
    }
    node["policies"] = json::array(
        {{{"kind", "mv_ucb"}}, {{"kind", "mv_dsee"}, {"dsee_mode", "model_independent"}, {"w", 1.0}},
         {{"kind", "single_arm"}, {"arm", 1}}});
    node["horizons"] = s.horizons;
    node["replications"] = s.replications;
    node["seed"] = s.seed;
    node["emit_trace"] = false;
    catalog["scenarios"].push_back(node);
  }
  return catalog.dump(2) + "\n";
}

}  // namespace mvbandit
