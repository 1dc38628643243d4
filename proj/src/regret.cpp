#include "mvbandit/regret.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace mvbandit {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

ReplicationStats stats_from_traces(std::span<const RunTrace> traces, const BanditInstance& instance) {
  if (traces.size() < 2) {
    throw std::invalid_argument("need at least two traces");
  }
  const std::uint64_t horizon = traces.front().horizon;
  const std::size_t num_arms = instance.num_arms();
  ReplicationStats stats;
  stats.replications = traces.size();
  stats.num_arms = num_arms;
  stats.horizon = horizon;
  stats.path_m2.reserve(traces.size());
  stats.path_sum.reserve(traces.size());
  stats.pulls.reserve(traces.size() * num_arms);
  stats.arm_mean.reserve(traces.size() * num_arms);
  for (const RunTrace& trace : traces) {
    if (trace.horizon != horizon || trace.rewards.size() != horizon) {
      throw std::invalid_argument("traces must share a common horizon");
    }
    if (trace.per_arm.size() != num_arms) {
      throw std::invalid_argument("trace arm count does not match the instance");
    }
    double sum = 0.0;
    for (double x : trace.rewards) {
      sum += x;
    }
    const double mean = sum / static_cast<double>(horizon);
    double m2 = 0.0;
    for (double x : trace.rewards) {
      m2 += (x - mean) * (x - mean);
    }
    stats.path_m2.push_back(m2);
    stats.path_sum.push_back(sum);
    for (const ArmRunStats& s : trace.per_arm) {
      stats.pulls.push_back(s.pulls);
      stats.arm_mean.push_back(s.pulls > 0 ? s.mean : 0.0);
    }
  }
  return stats;
}

struct PerReplicationValues {
  std::vector<double> proxy_empirical;
  std::vector<double> term_gap;
  std::vector<double> term_spread;
  std::vector<double> term_cross;
  std::vector<double> closed_form;
  std::vector<double> difference;
};

PerReplicationValues per_replication_values(const BanditInstance& instance,
                                            const ReplicationStats& stats) {
  const std::uint64_t n = stats.replications;
  const std::size_t num_arms = stats.num_arms;
  const double rho = instance.rho();
  const double horizon = static_cast<double>(stats.horizon);
  const double benchmark = single_arm_benchmark(instance, stats.horizon);
  const double best_mean = instance.best_mean();
  const double best_var = instance.best_variance();

  PerReplicationValues v;
  v.proxy_empirical.resize(n);
  v.term_gap.resize(n);
  v.term_spread.resize(n);
  v.term_cross.resize(n);
  v.closed_form.resize(n);
  v.difference.resize(n);
  for (std::uint64_t r = 0; r < n; ++r) {
    const double path_mv = stats.path_m2[r] - rho * stats.path_sum[r];
    double gap = 0.0;
    double spread = 0.0;
    double cross_sum = 0.0;
    for (std::size_t i = 0; i < num_arms; ++i) {
      const double pulls = static_cast<double>(stats.pulls[r * num_arms + i]);
      if (pulls == 0.0) {
        continue;
      }
      gap += pulls * instance.mv_gap(i);
      spread += pulls * instance.mean_gap(i) * instance.mean_gap(i);
      cross_sum += pulls * (stats.arm_mean[r * num_arms + i] - best_mean);
    }
    const double cross = cross_sum * cross_sum / horizon;
    v.proxy_empirical[r] = path_mv - benchmark;
    v.term_gap[r] = gap;
    v.term_spread[r] = spread;
    v.term_cross[r] = cross;
    v.closed_form[r] = gap + spread - cross + best_var;
    v.difference[r] = v.proxy_empirical[r] - v.closed_form[r];
  }
  return v;
}

RegretDecomposition decomposition_from_values(const BanditInstance& instance,
                                              const PerReplicationValues& v) {
  RegretDecomposition d;
  d.term_gap = mean_with_error(v.term_gap);
  d.term_spread = mean_with_error(v.term_spread);
  d.term_cross = mean_with_error(v.term_cross);
  d.term_best_var = instance.best_variance();
  d.total = mean_with_error(v.closed_form);
  return d;
}

}  // namespace

double path_cumulative_mv(const RunTrace& trace, double rho) {
  if (trace.rewards.empty()) {
    throw std::invalid_argument("empty trace");
  }
  double sum = 0.0;
  for (double x : trace.rewards) {
    sum += x;
  }
  const double mean = sum / static_cast<double>(trace.rewards.size());
  double m2 = 0.0;
  for (double x : trace.rewards) {
    m2 += (x - mean) * (x - mean);
  }
  return m2 - rho * sum;
}

double single_arm_benchmark(const BanditInstance& instance, std::uint64_t horizon) {
  if (horizon == 0) {
    throw std::invalid_argument("horizon must be >= 1");
  }
  return static_cast<double>(horizon) * instance.best_mean_variance() - instance.best_variance();
}

RegretReport make_regret_report(const BanditInstance& instance, const PolicySpec& policy,
                                std::uint64_t horizon, const ReplicationStats& stats, double c1) {
  if (stats.horizon != horizon || stats.num_arms != instance.num_arms()) {
    throw std::invalid_argument("replication stats do not match the instance/horizon");
  }
  const PerReplicationValues v = per_replication_values(instance, stats);

  RegretReport report;
  report.policy = policy_label(policy);
  report.horizon = horizon;
  report.replications = stats.replications;
  {
    std::vector<double> path_mv(stats.replications);
    for (std::uint64_t r = 0; r < stats.replications; ++r) {
      path_mv[r] = stats.path_m2[r] - instance.rho() * stats.path_sum[r];
    }
    report.empirical_mv = mean_with_error(path_mv);
  }
  report.benchmark_mv = single_arm_benchmark(instance, horizon);
  report.proxy_empirical = mean_with_error(v.proxy_empirical);
  report.closed_form = decomposition_from_values(instance, v);
  report.empirical_minus_closed = mean_with_error(v.difference);

  report.mean_pulls.reserve(stats.num_arms);
  std::vector<double> pulls(stats.replications);
  for (std::size_t i = 0; i < stats.num_arms; ++i) {
    for (std::uint64_t r = 0; r < stats.replications; ++r) {
      pulls[r] = static_cast<double>(stats.pulls[r * stats.num_arms + i]);
    }
    report.mean_pulls.push_back(mean_with_error(pulls));
  }

  report.benchmark_gap_bound = benchmark_gap_bound(instance, horizon);
  report.ucb_regret_upper = kNaN;
  if (const auto* ucb = std::get_if<MvUcbPolicy>(&policy); ucb && instance.min_mv_gap() > 0.0) {
    try {
      report.ucb_regret_upper =
          mv_ucb_regret_upper_bound(instance, resolve_mv_ucb_scale(*ucb, instance), horizon);
    } catch (const std::exception&) {
      // bonus scale below the bound's validity range; left as NaN
    }
  }
  report.consistency_lower = kNaN;
  try {
    report.consistency_lower = consistency_regret_lower_bound(instance, c1, horizon);
  } catch (const std::exception&) {
    // mixed families or degenerate divergence; left as NaN
  }
  return report;
}

ValueWithError proxy_regret_empirical(std::span<const RunTrace> traces, const BanditInstance& instance) {
  const ReplicationStats stats = stats_from_traces(traces, instance);
  return mean_with_error(per_replication_values(instance, stats).proxy_empirical);
}

RegretDecomposition proxy_regret_closed_form(std::span<const RunTrace> traces,
                                             const BanditInstance& instance) {
  const ReplicationStats stats = stats_from_traces(traces, instance);
  return decomposition_from_values(instance, per_replication_values(instance, stats));
}

double mv_ucb_regret_upper_bound(const BanditInstance& instance, double bonus_scale,
                                 std::uint64_t horizon) {
  if (horizon == 0) {
    throw std::invalid_argument("horizon must be >= 1");
  }
  if (!(instance.min_mv_gap() > 0.0)) {
    throw std::domain_error("upper bound requires a positive minimum mean-variance gap");
  }
  const double rho = instance.rho();
  const double valid_scale = default_mv_ucb_scale(rho, instance.concentration());
  if (bonus_scale < valid_scale * (1.0 - 1e-12)) {
    throw std::invalid_argument("bonus scale below the smallest valid value for this bound");
  }
  const double log_t = std::log(static_cast<double>(horizon));
  const double edge = 4.0 * (2.0 + rho) * (2.0 + rho);
  double total = 0.0;
  for (std::size_t i = 0; i < instance.num_arms(); ++i) {
    if (i == instance.best_arm()) {
      continue;
    }
    const double gap = instance.mv_gap(i);
    const double dmean = instance.mean_gap(i);
    const double pulls = 4.0 * bonus_scale * bonus_scale * log_t / std::min(gap * gap, edge) + 5.0;
    total += pulls * (gap + dmean * dmean);
  }
  return total + instance.best_variance() + benchmark_gap_bound(instance, horizon);
}

double consistency_regret_lower_bound(const BanditInstance& instance, double c1,
                                      std::uint64_t horizon) {
  if (!(c1 > 0.0 && c1 < 1.0)) {
    throw std::invalid_argument("c1 must lie in (0, 1)");
  }
  if (horizon == 0) {
    throw std::invalid_argument("horizon must be >= 1");
  }
  const double log_t = std::log(static_cast<double>(horizon));
  const ArmDistribution& best = instance.arm(instance.best_arm());
  double total = 0.0;
  for (std::size_t i = 0; i < instance.num_arms(); ++i) {
    if (i == instance.best_arm()) {
      continue;
    }
    const double divergence = kl_divergence(instance.arm(i), best);
    if (!(divergence > 0.0) || !std::isfinite(divergence)) {
      throw std::domain_error("lower bound requires distinct arm laws with finite divergence");
    }
    const double dmean = instance.mean_gap(i);
    total += c1 * log_t / divergence * (instance.mv_gap(i) + dmean * dmean);
  }
  return total;
}

double benchmark_gap_bound(const BanditInstance& instance, std::uint64_t horizon) {
  if (horizon == 0) {
    throw std::invalid_argument("horizon must be >= 1");
  }
  const double max_var = instance.max_sigma() * instance.max_sigma();
  double ratio_sum = 0.0;
  for (std::size_t i = 0; i < instance.num_arms(); ++i) {
    if (i == instance.best_arm()) {
      continue;
    }
    const double dmean2 = instance.mean_gap(i) * instance.mean_gap(i);
    if (dmean2 == 0.0) {
      continue;  // 0/0 contributes nothing
    }
    if (instance.mv_gap(i) == 0.0) {
      ratio_sum = std::numeric_limits<double>::infinity();
      break;
    }
    ratio_sum += dmean2 / instance.mv_gap(i);
  }
  const double constant_branch = max_var * (ratio_sum + 1.0);
  const double log_branch = static_cast<double>(instance.num_arms()) / instance.concentration() *
                            std::log(static_cast<double>(horizon));
  return std::min(constant_branch, log_branch);
}

double kl_divergence(const ArmDistribution& f, const ArmDistribution& g) {
  if (f.kind() != g.kind()) {
    throw std::invalid_argument("divergence requires laws from the same family");
  }
  if (f.kind() == ArmDistribution::Kind::kGaussian) {
    const double vf = f.variance();
    const double vg = g.variance();
    const double dmean = f.mean() - g.mean();
    return 0.5 * std::log(vg / vf) + (vf + dmean * dmean) / (2.0 * vg) - 0.5;
  }
  const double p = f.mean();
  const double q = g.mean();
  if (p == q) {
    return 0.0;
  }
  const auto term = [](double a, double b) {
    if (a == 0.0) {
      return 0.0;
    }
    if (b == 0.0) {
      return std::numeric_limits<double>::infinity();
    }
    return a * std::log(a / b);
  };
  return term(p, q) + term(1.0 - p, 1.0 - q);
}

}  // namespace mvbandit
