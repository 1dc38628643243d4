#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mvbandit/concentration.hpp"
#include "mvbandit/experiments.hpp"

namespace mvbandit {

/// Malformed or incomplete configuration; the message names the offending
/// key. Distinct from std::invalid_argument, which signals infeasible
/// model parameters in otherwise well-formed input.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Config files are JSON. Schemas:
//
// arm:      {"kind": "gaussian", "mean": 0.0, "variance": 1.0}
//           {"kind": "bernoulli", "p": 0.25}
// instance: {"rho": 1.0, "a": 0.25, "arms": [arm, ...]}
// policy:   {"kind": "mv_ucb", "b": 10.4}            (b optional)
//           {"kind": "mv_dsee", "dsee_mode": "model_independent", "w": 1.0}
//           {"kind": "mv_dsee", "dsee_mode": "model_specific"}
//           {"kind": "single_arm", "arm": 0}
//           {"kind": "counterexample", "threshold": 0.5}
//           {"kind": "rn_ucb", "c": 1.5}
// scenario: instance keys plus
//           {"name": ..., "policies": [policy, ...], "horizons": [...],
//            "replications": ..., "seed": ..., "emit_trace": false}
//
// simulate config:      {"scenarios": [scenario, ...]}
// verify-bounds config: {"concentration": [{"dist": arm, "rho": ..., "a": ...,
//                           "s_grid": [...], "delta_grid": [...], "replications": ...}, ...],
//                        "stopping_time": [{instance keys, "policy": policy,
//                           "horizon": ..., "replications": ...}, ...],
//                        "suboptimal_pulls": [{instance keys, "b": optional,
//                           "horizon": ..., "replications": ...}, ...]}
// minimax config:       {"rho": 0.0, "horizons": [...], "replications": 1000,
//                        "w": 1.0, "d6": 0.3}
// regret-curve config:  {"deltas": [...], "horizons": [...], "replications": ...,
//                        "policies": [policy, ...]}

struct ConcentrationJob {
  ArmDistribution dist;
  double rho = 0.0;
  double a = kDefaultConcentrationConstant;
  std::vector<TailGridCell> grid;
  std::uint64_t replications = 100000;
};

struct StoppingTimeJob {
  BanditInstance instance;
  PolicySpec policy;
  std::uint64_t horizon = 0;
  std::uint64_t replications = 1000;
};

struct PullBoundJob {
  BanditInstance instance;
  MvUcbPolicy policy;
  std::uint64_t horizon = 0;
  std::uint64_t replications = 1000;
};

struct VerifyBoundsConfig {
  std::vector<ConcentrationJob> concentration;
  std::vector<StoppingTimeJob> stopping_time;
  std::vector<PullBoundJob> suboptimal_pulls;
};

struct MinimaxConfig {
  double rho = 0.0;
  std::vector<std::uint64_t> horizons = {1000, 3000, 10000, 30000};
  std::uint64_t replications = 1000;
  double exploration_weight = 1.0;
  double d6 = kDefaultMinimaxGapCoefficient;
  std::uint64_t seed = kDefaultSeed;
};

struct RegretCurveConfig {
  std::vector<double> deltas;
  std::vector<std::uint64_t> horizons = {100, 1000, 10000};
  std::uint64_t replications = 1000;
  std::vector<PolicySpec> policies = {MvUcbPolicy{}};
  std::uint64_t seed = kDefaultSeed;
};

std::vector<Scenario> load_scenarios(const std::string& path);
VerifyBoundsConfig load_verify_bounds(const std::string& path);
MinimaxConfig load_minimax(const std::string& path);
RegretCurveConfig load_regret_curve(const std::string& path);

/// Parse helpers for single objects, exposed for tests.
ArmDistribution parse_arm_json(const std::string& json_text);
PolicySpec parse_policy_json(const std::string& json_text);

/// JSON text of the built-in presets, runnable via `simulate`.
std::string builtin_catalog_json();

}  // namespace mvbandit
