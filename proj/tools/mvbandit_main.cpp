// mvbandit: batch experiment driver around the library. Subcommands map
// config files to CSV outputs; every command is a pure function of
// (config, flags, seed), so reruns are byte-identical.
//
// Exit codes: 0 success, 1 verification failure (violated bound or
// unconfirmed result), 2 config error, 3 infeasible model parameters.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "mvbandit/config.hpp"
#include "mvbandit/csv.hpp"
#include "mvbandit/stats.hpp"

namespace fs = std::filesystem;
using namespace mvbandit;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitConfig = 2;
constexpr int kExitInfeasible = 3;

struct CommonOptions {
  std::string config_path;
  std::string output_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> replications;
  unsigned jobs = 0;
  bool force = false;
};

void add_common_flags(CLI::App* cmd, CommonOptions& opts, bool needs_config) {
  auto* config = cmd->add_option("--config", opts.config_path, "config file (json)");
  if (needs_config) {
    config->required();
  }
  cmd->add_option("--out", opts.output_dir, "output directory (created if absent)");
  cmd->add_option("--seed", opts.seed, "seed override (fallback: MVBANDIT_SEED, then config)");
  cmd->add_option("--replications", opts.replications, "replication count override");
  cmd->add_option("--jobs", opts.jobs, "worker threads (0 = hardware)");
  cmd->add_flag("--force", opts.force, "overwrite existing output files");
}

std::uint64_t resolve_seed(const CommonOptions& opts, std::uint64_t config_seed) {
  if (opts.seed) {
    return *opts.seed;
  }
  if (const char* env = std::getenv("MVBANDIT_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw ConfigError("MVBANDIT_SEED is not a valid integer");
    }
  }
  return config_seed;
}

/// Writes a whole file at once, refusing to clobber without --force.
void write_output(const CommonOptions& opts, const std::string& filename, const std::string& body) {
  fs::create_directories(opts.output_dir);
  const fs::path path = fs::path(opts.output_dir) / filename;
  if (fs::exists(path) && !opts.force) {
    throw ConfigError("refusing to overwrite " + path.string() + " (use --force)");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ConfigError("cannot write " + path.string());
  }
  out << body;
  std::cout << "wrote " << path.string() << "\n";
}

std::string pm(const ValueWithError& v) {
  char buf[80];
  std::snprintf(buf, sizeof(buf), "%.6g +- %.2g", v.value, v.std_err);
  return buf;
}

int cmd_simulate(const CommonOptions& opts) {
  std::vector<Scenario> scenarios = load_scenarios(opts.config_path);
  for (Scenario& scenario : scenarios) {
    scenario.seed = resolve_seed(opts, scenario.seed);
    if (opts.replications) {
      scenario.replications = *opts.replications;
    }
    const std::vector<ScenarioRow> rows = run_scenario(scenario, opts.jobs);
    std::ostringstream csv;
    write_regret_csv(csv, rows);
    write_output(opts, scenario.name + "_regret.csv", csv.str());
    for (const ScenarioRow& row : rows) {
      std::cout << scenario.name << " " << row.policy << " T=" << row.horizon
                << " proxy_regret=" << pm(row.report.proxy_empirical) << "\n";
      if (row.sample_trace) {
        std::ostringstream trace_csv;
        write_trace_csv(trace_csv, *row.sample_trace);
        std::ostringstream trace_name;
        trace_name << scenario.name << "_" << row.policy << "_T" << row.horizon << "_trace.csv";
        write_output(opts, trace_name.str(), trace_csv.str());
      }
    }
  }
  return kExitOk;
}

int cmd_regret_curve(const CommonOptions& opts) {
  RegretCurveConfig config = load_regret_curve(opts.config_path);
  config.seed = resolve_seed(opts, config.seed);
  if (opts.replications) {
    config.replications = *opts.replications;
  }
  std::ostringstream csv;
  csv << "delta,";
  bool first = true;
  for (double delta : config.deltas) {
    Scenario scenario = gap_sweep_scenario(delta, config.seed);
    scenario.policies = config.policies;
    scenario.horizons = config.horizons;
    scenario.replications = config.replications;
    const std::vector<ScenarioRow> rows = run_scenario(scenario, opts.jobs);
    std::ostringstream block;
    write_regret_csv(block, rows);
    std::istringstream lines(block.str());
    std::string line;
    std::getline(lines, line);
    if (first) {
      csv << line << "\n";
      first = false;
    }
    while (std::getline(lines, line)) {
      csv << format_double(delta) << ',' << line << "\n";
    }
    for (const ScenarioRow& row : rows) {
      std::cout << "delta=" << delta << " " << row.policy << " T=" << row.horizon
                << " proxy_regret=" << pm(row.report.proxy_empirical) << "\n";
    }
  }
  write_output(opts, "regret_curve.csv", csv.str());
  return kExitOk;
}

int cmd_verify_bounds(const CommonOptions& opts) {
  const VerifyBoundsConfig config = load_verify_bounds(opts.config_path);
  const std::uint64_t seed = resolve_seed(opts, kDefaultSeed);
  const RandomStream root(seed);
  bool violated = false;
  std::uint64_t stream_index = 0;

  for (std::size_t i = 0; i < config.concentration.size(); ++i) {
    ConcentrationJob job = config.concentration[i];
    if (opts.replications) {
      job.replications = *opts.replications;
    }
    const TailCheckReport report = verify_mv_concentration(
        job.dist, job.rho, job.a, job.grid, job.replications, root.child(stream_index++), opts.jobs);
    std::ostringstream csv;
    write_tail_csv(csv, report);
    write_output(opts, "concentration_" + std::to_string(i) + ".csv", csv.str());
    for (const TailCheckRow& row : report.rows) {
      if (row.violated.value_or(false)) {
        violated = true;
        std::cout << "VIOLATED: " << job.dist.describe() << " s=" << row.sample_count
                  << " delta=" << row.deviation
                  << " side=" << (row.side == TailSide::kUpper ? "upper" : "lower")
                  << " empirical=" << row.empirical << " bound=" << row.bound << "\n";
      }
    }
    std::cout << "concentration[" << i << "] " << job.dist.describe()
              << (report.any_violation() ? ": violations found" : ": all cells within bounds") << "\n";
  }

  for (std::size_t i = 0; i < config.stopping_time.size(); ++i) {
    StoppingTimeJob job = config.stopping_time[i];
    if (opts.replications) {
      job.replications = *opts.replications;
    }
    const auto checks = verify_stopping_time_bound(job.instance, job.policy, job.horizon,
                                                   job.replications, root.child(stream_index++),
                                                   opts.jobs);
    std::ostringstream csv;
    csv << "arm,lhs,lhs_se,rhs,satisfied\n";
    for (const StoppingTimeCheck& check : checks) {
      csv << check.arm << ',' << format_double(check.lhs) << ',' << format_double(check.lhs_std_err)
          << ',' << format_double(check.rhs) << ',' << (check.satisfied ? "true" : "false") << "\n";
      if (!check.satisfied) {
        violated = true;
        std::cout << "VIOLATED: stopping-time bound, arm " << check.arm << " lhs=" << check.lhs
                  << " rhs=" << check.rhs << "\n";
      }
    }
    write_output(opts, "stopping_time_" + std::to_string(i) + ".csv", csv.str());
    std::cout << "stopping_time[" << i << "] done\n";
  }

  for (std::size_t i = 0; i < config.suboptimal_pulls.size(); ++i) {
    PullBoundJob job = config.suboptimal_pulls[i];
    if (opts.replications) {
      job.replications = *opts.replications;
    }
    const auto checks = verify_suboptimal_pull_bound(job.instance, job.policy, job.horizon,
                                                     job.replications, root.child(stream_index++),
                                                     opts.jobs);
    std::ostringstream csv;
    csv << "arm,mean_pulls,se,bound,satisfied\n";
    for (const PullCountCheck& check : checks) {
      csv << check.arm << ',' << format_double(check.mean_pulls.value) << ','
          << format_double(check.mean_pulls.std_err) << ',' << format_double(check.bound) << ','
          << (check.satisfied ? "true" : "false") << "\n";
      if (!check.satisfied) {
        violated = true;
        std::cout << "VIOLATED: pull-count bound, arm " << check.arm
                  << " mean=" << check.mean_pulls.value << " bound=" << check.bound << "\n";
      }
    }
    write_output(opts, "suboptimal_pulls_" + std::to_string(i) + ".csv", csv.str());
    std::cout << "suboptimal_pulls[" << i << "] done\n";
  }

  return violated ? kExitViolation : kExitOk;
}

int cmd_counterexample(const CommonOptions& opts, double threshold, std::uint64_t replications) {
  const std::uint64_t seed = resolve_seed(opts, kDefaultSeed);
  const std::uint64_t reps = opts.replications.value_or(replications);
  const CounterexampleResult result = counterexample_experiment(reps, seed, threshold, opts.jobs);
  std::cout << "single-arm cumulative mean-variance: " << format_double(result.single_arm_mv) << "\n";
  std::cout << "threshold policy cumulative mean-variance: " << pm(result.threshold_mv) << "\n";
  std::cout << (result.confirmed ? "CONFIRMED" : "NOT-CONFIRMED")
            << ": adaptive switching beats the best single arm\n";
  return result.confirmed ? kExitOk : kExitViolation;
}

int cmd_minimax(const CommonOptions& opts) {
  MinimaxConfig config;
  if (!opts.config_path.empty()) {
    config = load_minimax(opts.config_path);
  }
  config.seed = resolve_seed(opts, config.seed);
  if (opts.replications) {
    config.replications = *opts.replications;
  }
  const MinimaxScalingResult result =
      minimax_scaling_experiment(config.horizons, config.rho, config.replications, config.seed,
                                 config.exploration_weight, config.d6, opts.jobs);
  std::ostringstream csv;
  write_minimax_csv(csv, result.rows);
  write_output(opts, "minimax_scaling.csv", csv.str());
  for (const MinimaxRow& row : result.rows) {
    std::cout << "T=" << row.horizon << " delta=" << row.delta << " max_regret=" << row.max_regret
              << "\n";
  }
  if (result.slope_defined) {
    std::cout << "log-log slope of max regret vs T: " << result.slope << "\n";
  } else {
    std::cout << "log-log slope: undefined (need at least two distinct horizons)\n";
  }
  return kExitOk;
}

int cmd_catalog(const CommonOptions& opts) {
  write_output(opts, "catalog.json", builtin_catalog_json());
  std::cout << "presets: risk_profile_rho1, risk_profile_rho5, gap_sweep_delta0.1, "
               "gap_sweep_delta0.25, gap_sweep_delta0.4\n";
  std::cout << "run them with: mvbandit simulate --config <out>/catalog.json\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"risk-averse multi-armed bandit simulation and bound verification"};
  app.require_subcommand(1);

  CommonOptions simulate_opts;
  CLI::App* simulate = app.add_subcommand("simulate", "run scenarios from a config file");
  add_common_flags(simulate, simulate_opts, true);

  CommonOptions curve_opts;
  CLI::App* curve = app.add_subcommand("regret-curve", "two-arm gap sweep regret curves");
  add_common_flags(curve, curve_opts, true);

  CommonOptions verify_opts;
  CLI::App* verify = app.add_subcommand("verify-bounds", "empirical checks of the tail and pull bounds");
  add_common_flags(verify, verify_opts, true);

  CommonOptions counter_opts;
  double threshold = 0.5;
  std::uint64_t counter_replications = 1000000;
  CLI::App* counter =
      app.add_subcommand("counterexample", "adaptive switching vs the best single arm at horizon 2");
  add_common_flags(counter, counter_opts, false);
  counter->add_option("--threshold", threshold, "switch threshold on the first reward");

  CommonOptions minimax_opts;
  CLI::App* minimax = app.add_subcommand("minimax", "worst-case regret scaling across horizons");
  add_common_flags(minimax, minimax_opts, false);

  CommonOptions catalog_opts;
  CLI::App* catalog = app.add_subcommand("catalog", "write the built-in scenario presets");
  add_common_flags(catalog, catalog_opts, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) {
      return cmd_simulate(simulate_opts);
    }
    if (curve->parsed()) {
      return cmd_regret_curve(curve_opts);
    }
    if (verify->parsed()) {
      return cmd_verify_bounds(verify_opts);
    }
    if (counter->parsed()) {
      return cmd_counterexample(counter_opts, threshold, counter_replications);
    }
    if (minimax->parsed()) {
      return cmd_minimax(minimax_opts);
    }
    if (catalog->parsed()) {
      return cmd_catalog(catalog_opts);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "infeasible parameters: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const std::domain_error& e) {
    std::cerr << "infeasible parameters: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitOk;
}
