#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mvbandit/engine.hpp"
#include "mvbandit/instance.hpp"
#include "mvbandit/policies.hpp"
#include "mvbandit/stats.hpp"

namespace mvbandit {

inline constexpr double kDefaultLowerBoundC1 = 0.9;

/// Cumulative mean-variance of one reward path:
///   sum_t (x_t - mean(path))^2 - rho * sum_t x_t.
double path_cumulative_mv(const RunTrace& trace, double rho);

/// Expected cumulative mean-variance of always playing the best arm:
///   T * xi_best - var_best
/// (the biased path variance of T i.i.d. draws has expectation (T-1)/T var).
double single_arm_benchmark(const BanditInstance& instance, std::uint64_t horizon);

/// Term-by-term closed form of the proxy regret, estimated per replication:
///   sum_i E[pulls_i] dmv_i  +  sum_i E[pulls_i] dmean_i^2
///   - (1/T) E[(sum_i pulls_i (sample_mean_i - mean_best))^2]  +  var_best,
/// whose total equals the expected empirical proxy regret.
struct RegretDecomposition {
  ValueWithError term_gap;     // sum_i pulls_i * mv_gap_i
  ValueWithError term_spread;  // sum_i pulls_i * mean_gap_i^2
  ValueWithError term_cross;   // (1/T) (sum_i pulls_i (sample_mean_i - best mean))^2
  double term_best_var = 0.0;  // variance of the best arm (constant)
  ValueWithError total;
};

struct RegretReport {
  std::string policy;
  std::uint64_t horizon = 0;
  std::uint64_t replications = 0;
  ValueWithError empirical_mv;            // mean path functional
  double benchmark_mv = 0.0;              // analytic single-arm value
  ValueWithError proxy_empirical;         // empirical_mv - benchmark, per replication
  RegretDecomposition closed_form;
  ValueWithError empirical_minus_closed;  // paired difference (oracle check)
  std::vector<ValueWithError> mean_pulls; // per arm
  double ucb_regret_upper = 0.0;          // NaN unless MV-UCB with a positive gap
  double consistency_lower = 0.0;         // NaN unless computable for the family
  double benchmark_gap_bound = 0.0;       // always computable
};

/// Build the full report from replication summaries.
RegretReport make_regret_report(const BanditInstance& instance, const PolicySpec& policy,
                                std::uint64_t horizon, const ReplicationStats& stats,
                                double c1 = kDefaultLowerBoundC1);

/// Mean (over traces) of the path functional minus the analytic benchmark.
/// Requires >= 2 traces with a common horizon.
ValueWithError proxy_regret_empirical(std::span<const RunTrace> traces, const BanditInstance& instance);

/// Closed-form decomposition estimated from the same traces.
RegretDecomposition proxy_regret_closed_form(std::span<const RunTrace> traces,
                                             const BanditInstance& instance);

/// Upper bound on MV-UCB regret for instances with a positive minimum gap:
///   sum_{i != best} (4 b^2 log T / min{gap_i^2, 4(2+rho)^2} + 5)(gap_i + dmean_i^2)
///   + var_best + benchmark_gap_bound.
/// Throws when the minimum gap is zero or b is below the valid scale.
double mv_ucb_regret_upper_bound(const BanditInstance& instance, double bonus_scale,
                                 std::uint64_t horizon);

/// Asymptotic lower bound on the regret of any consistent policy:
///   sum_{i != best} (c1 log T / KL(f_i, f_best)) (gap_i + dmean_i^2),
/// for 0 < c1 < 1 and arms from a single family with distinct laws.
double consistency_regret_lower_bound(const BanditInstance& instance, double c1,
                                      std::uint64_t horizon);

/// Bound on the distance between the proxy benchmark (best single arm) and
/// the unconstrained optimal policy:
///   min{ max_var * (sum_{i != best} dmean_i^2 / gap_i + 1), (K/a) log T }.
double benchmark_gap_bound(const BanditInstance& instance, std::uint64_t horizon);

/// KL divergence between two laws of the same family (closed form).
double kl_divergence(const ArmDistribution& f, const ArmDistribution& g);

}  // namespace mvbandit
