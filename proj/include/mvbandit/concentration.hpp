#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mvbandit/distributions.hpp"
#include "mvbandit/instance.hpp"
#include "mvbandit/policies.hpp"
#include "mvbandit/stats.hpp"

namespace mvbandit {

struct TailGridCell {
  std::uint64_t sample_count = 0;  // s
  double deviation = 0.0;          // delta > 0
};

enum class TailSide { kUpper, kLower };

/// One (s, delta, side) cell of an empirical tail check. `violated` is
/// empty for lower-tail cells with delta > 2 + rho, where the bound does
/// not apply.
struct TailCheckRow {
  std::uint64_t sample_count = 0;
  double deviation = 0.0;
  TailSide side = TailSide::kUpper;
  double empirical = 0.0;
  double bound = 0.0;
  double std_err = 0.0;
  std::optional<bool> violated;
};

struct TailCheckReport {
  std::vector<TailCheckRow> rows;
  std::uint64_t replications = 0;

  [[nodiscard]] bool any_violation() const;
};

/// Empirical check of the sample mean-variance tail bounds
///   P[mv_s - mv > delta]  vs 2 exp(-a s delta^2 / (1+rho)^2)
///   P[mv_s - mv < -delta] vs 2 exp(-a s delta^2 / (2+rho)^2)
/// over a grid of (s, delta) cells. Each replication draws the largest s
/// once and evaluates every checkpoint along the way. A cell is violated
/// when the empirical frequency exceeds the bound by more than three
/// binomial standard errors. Requires replications >= 1000.
TailCheckReport verify_mv_concentration(const ArmDistribution& dist, double rho, double a,
                                        std::span<const TailGridCell> grid,
                                        std::uint64_t replications, const RandomStream& stream,
                                        unsigned jobs = 0);

struct StoppingTimeCheck {
  std::size_t arm = 0;
  double lhs = 0.0;  // Monte Carlo E[pulls * (sample mean - mean)^2]
  double lhs_std_err = 0.0;
  double rhs = 0.0;  // (log T + 2) / a
  bool satisfied = false;
};

/// Checks the stopping-time second-moment inequality per arm under a
/// policy's data-dependent pull counts. Requires horizon >= 2.
std::vector<StoppingTimeCheck> verify_stopping_time_bound(const BanditInstance& instance,
                                                          const PolicySpec& policy,
                                                          std::uint64_t horizon,
                                                          std::uint64_t replications,
                                                          const RandomStream& stream,
                                                          unsigned jobs = 0);

struct PullCountCheck {
  std::size_t arm = 0;
  ValueWithError mean_pulls;
  double bound = 0.0;  // 4 b^2 log T / min{gap^2, 4(2+rho)^2} + 5
  bool satisfied = false;
};

/// Checks the expected-pull bound for every suboptimal arm with a positive
/// gap under MV-UCB.
std::vector<PullCountCheck> verify_suboptimal_pull_bound(const BanditInstance& instance,
                                                         const MvUcbPolicy& policy,
                                                         std::uint64_t horizon,
                                                         std::uint64_t replications,
                                                         const RandomStream& stream,
                                                         unsigned jobs = 0);

}  // namespace mvbandit
