#include "mvbandit/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <set>
#include <stdexcept>

#include "mvbandit/engine.hpp"

namespace mvbandit {

namespace {

std::string format_compact(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

}  // namespace

void validate_scenario(const Scenario& scenario) {
  if (scenario.name.empty()) {
    throw std::invalid_argument("scenario needs a name");
  }
  if (scenario.policies.empty()) {
    throw std::invalid_argument("scenario '" + scenario.name + "' has no policies");
  }
  if (scenario.horizons.empty()) {
    throw std::invalid_argument("scenario '" + scenario.name + "' has no horizons");
  }
  for (std::uint64_t horizon : scenario.horizons) {
    if (horizon < scenario.instance.num_arms()) {
      throw std::invalid_argument("scenario '" + scenario.name +
                                  "' has a horizon below the arm count");
    }
  }
}

std::vector<ScenarioRow> run_scenario(const Scenario& scenario, unsigned jobs) {
  validate_scenario(scenario);
  const RandomStream root(scenario.seed);
  std::vector<ScenarioRow> rows;
  rows.reserve(scenario.policies.size() * scenario.horizons.size());
  for (std::size_t p = 0; p < scenario.policies.size(); ++p) {
    const RandomStream policy_stream = root.child(p);
    for (std::size_t h = 0; h < scenario.horizons.size(); ++h) {
      const std::uint64_t horizon = scenario.horizons[h];
      const RandomStream cell_stream = policy_stream.child(h);
      const ReplicationStats stats = run_replications(
          scenario.instance, scenario.policies[p], horizon, scenario.replications, cell_stream, jobs);
      ScenarioRow row;
      row.policy = policy_label(scenario.policies[p]);
      row.horizon = horizon;
      row.report = make_regret_report(scenario.instance, scenario.policies[p], horizon, stats);
      if (scenario.emit_sample_trace) {
        row.sample_trace =
            run_policy(scenario.instance, scenario.policies[p], horizon, cell_stream.child(0));
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

BanditInstance counterexample_instance() {
  return BanditInstance({ArmDistribution::gaussian(0.0, 1.0), ArmDistribution::gaussian(1.0, 2.1)},
                        /*rho=*/1.0);
}

CounterexampleResult counterexample_experiment(std::uint64_t replications, std::uint64_t seed,
                                               double threshold, unsigned jobs) {
  if (replications < 100000) {
    throw std::invalid_argument("counterexample experiment needs at least 1e5 replications");
  }
  const BanditInstance instance = counterexample_instance();
  const ArmDistribution& arm0 = instance.arm(0);
  const ArmDistribution& arm1 = instance.arm(1);
  const double rho = instance.rho();
  const RandomStream root(seed);

  std::vector<double> values(replications);
  parallel_for(replications, jobs, [&](std::uint64_t lo, std::uint64_t hi) {
    for (std::uint64_t r = lo; r < hi; ++r) {
      const RandomStream rep = root.child(r);
      RandomStream s0 = rep.child(0);
      RandomStream s1 = rep.child(1);
      const double x1 = arm0.sample(s0);
      const double x2 = x1 < threshold ? arm0.sample(s0) : arm1.sample(s1);
      // Two-step identity for the cumulative mean-variance of a pair.
      values[r] = 0.5 * (x1 - x2) * (x1 - x2) - rho * (x1 + x2);
    }
  });

  CounterexampleResult result;
  result.single_arm_mv = single_arm_benchmark(instance, 2);
  result.threshold_mv = mean_with_error(values);
  result.confirmed =
      result.threshold_mv.value + 3.0 * result.threshold_mv.std_err < result.single_arm_mv;
  return result;
}

Scenario risk_profile_scenario(double rho, std::uint64_t seed) {
  if (!(rho > 0.0)) {
    throw std::invalid_argument("risk profile preset requires rho > 0");
  }
  Scenario scenario{
      .name = "risk_profile_rho" + format_compact(rho),
      .instance = BanditInstance({ArmDistribution::gaussian(0.0, 1.0), ArmDistribution::gaussian(1.0, 1.0),
                                  ArmDistribution::gaussian(2.0, 4.0), ArmDistribution::gaussian(3.0, 4.0)},
                                 rho),
      .policies = {MvUcbPolicy{}},
      .horizons = {10000},
      .replications = 100,
      .seed = seed,
      .emit_sample_trace = true,
  };
  return scenario;
}

BanditInstance two_arm_gap_instance(double delta) {
  if (!(delta > 0.0 && delta < 0.5)) {
    throw std::invalid_argument("gap preset requires delta in (0, 0.5)");
  }
  return BanditInstance(
      {ArmDistribution::gaussian(0.0, 0.5 - delta), ArmDistribution::gaussian(0.5, 1.0)},
      /*rho=*/1.0);
}

Scenario gap_sweep_scenario(double delta, std::uint64_t seed) {
  Scenario scenario{
      .name = "gap_sweep_delta" + format_compact(delta),
      .instance = two_arm_gap_instance(delta),
      .policies = {MvUcbPolicy{}},
      .horizons = {100, 1000, 10000},
      .replications = 1000,
      .seed = seed,
      .emit_sample_trace = false,
  };
  return scenario;
}

MinimaxInstancePair build_minimax_pair(double delta, double rho) {
  if (!(delta > 0.0)) {
    throw std::invalid_argument("pair construction requires delta > 0");
  }
  if (!(rho >= 0.0)) {
    throw std::invalid_argument("pair construction requires rho >= 0");
  }
  double mu1;
  double var1;
  double p;
  double q;
  if (rho == 0.5) {
    mu1 = 5.0 / 6.0;
    var1 = 17.0 / 36.0 - 9.0 * delta * delta;
    p = 1.0 / 3.0 + 3.0 * delta;
    q = 1.0 / 3.0 - 3.0 * delta;
  } else {
    mu1 = 0.75;
    var1 = 3.0 / 16.0 - 4.0 * delta * delta + rho / 2.0;
    p = 0.25 + 2.0 * delta;
    q = 0.25 - 2.0 * delta;
  }
  if (!(var1 > 0.0)) {
    throw std::invalid_argument("delta too large: first-arm variance would not be positive");
  }
  if (!(p > 0.0 && p < 1.0 && q > 0.0 && q < 1.0)) {
    throw std::invalid_argument("delta too large: bernoulli parameter would leave (0, 1)");
  }

  MinimaxInstancePair pair{
      .f = BanditInstance({ArmDistribution::gaussian(mu1, var1), ArmDistribution::bernoulli(p)}, rho),
      .f_prime =
          BanditInstance({ArmDistribution::gaussian(mu1, var1), ArmDistribution::bernoulli(q)}, rho),
      .requested_delta = delta,
      .realized_gap = 0.0,
      .horizon = 0,
  };

  const double gap_f = pair.f.arm(1).mean_variance(rho) - pair.f.arm(0).mean_variance(rho);
  const double gap_fp = pair.f_prime.arm(1).mean_variance(rho) - pair.f_prime.arm(0).mean_variance(rho);
  if (std::abs(std::abs(gap_f) - std::abs(gap_fp)) > 1e-9) {
    throw std::logic_error("pair gaps are not mirrored");
  }
  if (pair.f.best_arm() == pair.f_prime.best_arm()) {
    throw std::logic_error("pair does not switch the optimal arm");
  }
  pair.realized_gap = std::abs(gap_f);
  return pair;
}

MinimaxInstancePair build_minimax_pair_for_horizon(std::uint64_t horizon, double rho, double d6) {
  if (horizon == 0) {
    throw std::invalid_argument("horizon must be >= 1");
  }
  const double delta = d6 / std::cbrt(static_cast<double>(horizon));
  MinimaxInstancePair pair = build_minimax_pair(delta, rho);
  pair.horizon = horizon;
  return pair;
}

MinimaxScalingResult minimax_scaling_experiment(std::span<const std::uint64_t> horizons, double rho,
                                                std::uint64_t replications, std::uint64_t seed,
                                                double exploration_weight, double d6, unsigned jobs) {
  if (horizons.empty()) {
    throw std::invalid_argument("no horizons given");
  }
  const PolicySpec policy =
      MvDseePolicy{MvDseePolicy::Mode::kModelIndependent, exploration_weight};
  const RandomStream root(seed);

  MinimaxScalingResult result;
  result.rows.reserve(horizons.size());
  for (std::size_t h = 0; h < horizons.size(); ++h) {
    const MinimaxInstancePair pair = build_minimax_pair_for_horizon(horizons[h], rho, d6);
    MinimaxRow row;
    row.horizon = horizons[h];
    row.delta = pair.realized_gap;
    const auto evaluate = [&](const BanditInstance& instance, std::uint64_t cell) {
      const ReplicationStats stats =
          run_replications(instance, policy, horizons[h], replications, root.child(2 * h + cell), jobs);
      const RegretReport report = make_regret_report(instance, policy, horizons[h], stats);
      return report.closed_form.total;
    };
    row.regret_f = evaluate(pair.f, 0);
    row.regret_f_prime = evaluate(pair.f_prime, 1);
    row.max_regret = std::max(row.regret_f.value, row.regret_f_prime.value);
    result.rows.push_back(row);
  }

  std::set<std::uint64_t> distinct(horizons.begin(), horizons.end());
  bool positive = true;
  for (const MinimaxRow& row : result.rows) {
    positive = positive && row.max_regret > 0.0;
  }
  if (distinct.size() >= 2 && positive) {
    std::vector<double> log_t;
    std::vector<double> log_r;
    for (const MinimaxRow& row : result.rows) {
      log_t.push_back(std::log(static_cast<double>(row.horizon)));
      log_r.push_back(std::log(row.max_regret));
    }
    result.slope = linear_fit(log_t, log_r).slope;
    result.slope_defined = true;
  }
  return result;
}

}  // namespace mvbandit
