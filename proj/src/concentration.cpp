#include "mvbandit/concentration.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "mvbandit/engine.hpp"
#include "mvbandit/moments.hpp"

namespace mvbandit {

bool TailCheckReport::any_violation() const {
  return std::any_of(rows.begin(), rows.end(),
                     [](const TailCheckRow& row) { return row.violated.value_or(false); });
}

TailCheckReport verify_mv_concentration(const ArmDistribution& dist, double rho, double a,
                                        std::span<const TailGridCell> grid,
                                        std::uint64_t replications, const RandomStream& stream,
                                        unsigned jobs) {
  if (replications < 1000) {
    throw std::invalid_argument("tail estimates need at least 1000 replications");
  }
  if (grid.empty()) {
    throw std::invalid_argument("empty tail grid");
  }
  if (!(rho >= 0.0) || !(a > 0.0)) {
    throw std::invalid_argument("requires rho >= 0 and a > 0");
  }
  for (const TailGridCell& cell : grid) {
    if (cell.sample_count == 0 || !(cell.deviation > 0.0)) {
      throw std::invalid_argument("every grid cell needs s >= 1 and deviation > 0");
    }
  }

  // Checkpoints: one pass per replication over the largest s in the grid.
  std::map<std::uint64_t, std::vector<std::size_t>> cells_at;
  for (std::size_t c = 0; c < grid.size(); ++c) {
    cells_at[grid[c].sample_count].push_back(c);
  }
  const std::uint64_t max_s = cells_at.rbegin()->first;
  const double true_mv = dist.mean_variance(rho);

  // Hit counters are integers, so merging chunks in any order is exact and
  // the jobs value cannot change the report.
  struct Counts {
    std::vector<std::uint64_t> upper;
    std::vector<std::uint64_t> lower;
  };
  std::vector<Counts> chunk_counts;
  std::mutex chunk_mutex;
  parallel_for(replications, jobs, [&](std::uint64_t lo, std::uint64_t hi) {
    Counts local;
    local.upper.assign(grid.size(), 0);
    local.lower.assign(grid.size(), 0);
    for (std::uint64_t r = lo; r < hi; ++r) {
      RandomStream rep_stream = stream.child(r);
      StreamingMoments acc;
      auto next_checkpoint = cells_at.begin();
      for (std::uint64_t s = 1; s <= max_s; ++s) {
        acc.add(dist.sample(rep_stream));
        if (next_checkpoint != cells_at.end() && s == next_checkpoint->first) {
          const double dev = acc.mean_variance(rho) - true_mv;
          for (std::size_t c : next_checkpoint->second) {
            if (dev > grid[c].deviation) {
              ++local.upper[c];
            } else if (dev < -grid[c].deviation) {
              ++local.lower[c];
            }
          }
          ++next_checkpoint;
        }
      }
    }
    std::scoped_lock lock(chunk_mutex);
    chunk_counts.push_back(std::move(local));
  });

  std::vector<std::uint64_t> upper_hits(grid.size(), 0);
  std::vector<std::uint64_t> lower_hits(grid.size(), 0);
  for (const Counts& c : chunk_counts) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      upper_hits[i] += c.upper[i];
      lower_hits[i] += c.lower[i];
    }
  }

  const double n = static_cast<double>(replications);
  TailCheckReport report;
  report.replications = replications;
  report.rows.reserve(grid.size() * 2);
  for (std::size_t c = 0; c < grid.size(); ++c) {
    const double s = static_cast<double>(grid[c].sample_count);
    const double delta = grid[c].deviation;
    const auto make_row = [&](TailSide side, std::uint64_t hits, double denom,
                              bool applicable) {
      TailCheckRow row;
      row.sample_count = grid[c].sample_count;
      row.deviation = delta;
      row.side = side;
      row.empirical = static_cast<double>(hits) / n;
      row.bound = 2.0 * std::exp(-a * s * delta * delta / (denom * denom));
      row.std_err = std::sqrt(row.empirical * (1.0 - row.empirical) / n);
      if (applicable) {
        row.violated = row.empirical > row.bound + 3.0 * row.std_err;
      }
      return row;
    };
    report.rows.push_back(make_row(TailSide::kUpper, upper_hits[c], 1.0 + rho, true));
    report.rows.push_back(make_row(TailSide::kLower, lower_hits[c], 2.0 + rho, delta <= 2.0 + rho));
  }
  return report;
}

std::vector<StoppingTimeCheck> verify_stopping_time_bound(const BanditInstance& instance,
                                                          const PolicySpec& policy,
                                                          std::uint64_t horizon,
                                                          std::uint64_t replications,
                                                          const RandomStream& stream, unsigned jobs) {
  if (horizon < 2) {
    throw std::invalid_argument("horizon must be >= 2");
  }
  const ReplicationStats stats = run_replications(instance, policy, horizon, replications, stream, jobs);
  const double rhs = (std::log(static_cast<double>(horizon)) + 2.0) / instance.concentration();

  std::vector<StoppingTimeCheck> checks;
  checks.reserve(instance.num_arms());
  std::vector<double> values(replications);
  for (std::size_t i = 0; i < instance.num_arms(); ++i) {
    const double mu = instance.mean(i);
    for (std::uint64_t r = 0; r < replications; ++r) {
      const double pulls = static_cast<double>(stats.pulls[r * stats.num_arms + i]);
      const double dev = pulls > 0 ? stats.arm_mean[r * stats.num_arms + i] - mu : 0.0;
      values[r] = pulls * dev * dev;
    }
    const ValueWithError lhs = mean_with_error(values);
    StoppingTimeCheck check;
    check.arm = i;
    check.lhs = lhs.value;
    check.lhs_std_err = lhs.std_err;
    check.rhs = rhs;
    check.satisfied = lhs.value <= rhs + 3.0 * lhs.std_err;
    checks.push_back(check);
  }
  return checks;
}

std::vector<PullCountCheck> verify_suboptimal_pull_bound(const BanditInstance& instance,
                                                         const MvUcbPolicy& policy,
                                                         std::uint64_t horizon,
                                                         std::uint64_t replications,
                                                         const RandomStream& stream, unsigned jobs) {
  const double scale = resolve_mv_ucb_scale(policy, instance);
  const ReplicationStats stats =
      run_replications(instance, PolicySpec{policy}, horizon, replications, stream, jobs);
  const double log_t = std::log(static_cast<double>(horizon));
  const double rho = instance.rho();
  const double edge = 4.0 * (2.0 + rho) * (2.0 + rho);

  std::vector<PullCountCheck> checks;
  std::vector<double> pulls(replications);
  for (std::size_t i = 0; i < instance.num_arms(); ++i) {
    if (i == instance.best_arm() || !(instance.mv_gap(i) > 0.0)) {
      continue;
    }
    for (std::uint64_t r = 0; r < replications; ++r) {
      pulls[r] = static_cast<double>(stats.pulls[r * stats.num_arms + i]);
    }
    PullCountCheck check;
    check.arm = i;
    check.mean_pulls = mean_with_error(pulls);
    const double gap = instance.mv_gap(i);
    check.bound = 4.0 * scale * scale * log_t / std::min(gap * gap, edge) + 5.0;
    check.satisfied = check.mean_pulls.value <= check.bound + 3.0 * check.mean_pulls.std_err;
    checks.push_back(check);
  }
  return checks;
}

}  // namespace mvbandit
