#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "mvbandit/policies.hpp"

namespace mvbandit {

/// Per-replication summaries, flattened for cache-friendly reduction.
/// Replication r of K arms occupies slots [r*K, (r+1)*K) in the per-arm
/// arrays. Reductions over these arrays must iterate in replication order
/// so results do not depend on the worker count.
struct ReplicationStats {
  std::uint64_t replications = 0;
  std::size_t num_arms = 0;
  std::uint64_t horizon = 0;
  std::vector<double> path_m2;     // per rep: sum of squared deviations of the reward path
  std::vector<double> path_sum;    // per rep: total reward
  std::vector<std::uint64_t> pulls;  // per rep x arm
  std::vector<double> arm_mean;      // per rep x arm; 0 when never pulled
};

/// Static partition of [0, n) across `jobs` worker threads (0 = hardware).
void parallel_for(std::uint64_t n, unsigned jobs,
                  const std::function<void(std::uint64_t, std::uint64_t)>& body);

/// Run `replications` independent policy executions; replication r uses
/// stream.child(r). Deterministic for any jobs value.
ReplicationStats run_replications(const BanditInstance& instance, const PolicySpec& policy,
                                  std::uint64_t horizon, std::uint64_t replications,
                                  const RandomStream& stream, unsigned jobs = 0);

}  // namespace mvbandit
