#pragma once

// Low-level stepping engine shared by run_policy (trace recording) and the
// replication engine (summary statistics only, no per-step storage).

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "mvbandit/policies.hpp"

namespace mvbandit::detail {

void validate_policy_run(const BanditInstance& instance, const PolicySpec& policy, std::uint64_t horizon);

/// Runs the policy, invoking on_step(t, arm, reward) for t = 1..horizon.
/// Per-arm sample statistics are maintained internally; `arm_stats` is
/// filled with the final accumulators.
template <typename OnStep>
void drive_policy(const BanditInstance& instance, const PolicySpec& policy, std::uint64_t horizon,
                  const RandomStream& stream, std::vector<StreamingMoments>& arm_stats, OnStep&& on_step) {
  validate_policy_run(instance, policy, horizon);
  const std::size_t num_arms = instance.num_arms();
  const double rho = instance.rho();

  arm_stats.assign(num_arms, StreamingMoments{});
  std::vector<RandomStream> arm_streams;
  arm_streams.reserve(num_arms);
  for (std::size_t i = 0; i < num_arms; ++i) {
    arm_streams.push_back(stream.child(i));
  }

  const auto pull = [&](std::uint64_t t, std::size_t arm) -> double {
    const double x = instance.arm(arm).sample(arm_streams[arm]);
    arm_stats[arm].add(x);
    on_step(t, arm, x);
    return x;
  };

  const auto argmin_sampled_mv = [&]() -> std::size_t {
    std::size_t best = num_arms;
    double best_value = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < num_arms; ++i) {
      if (arm_stats[i].count() == 0) {
        continue;
      }
      const double v = arm_stats[i].mean_variance(rho);
      if (best == num_arms || v < best_value) {
        best = i;
        best_value = v;
      }
    }
    return best;  // num_arms when nothing sampled yet
  };

  if (const auto* ucb = std::get_if<MvUcbPolicy>(&policy)) {
    const double scale = resolve_mv_ucb_scale(*ucb, instance);
    for (std::uint64_t t = 1; t <= horizon; ++t) {
      std::size_t arm;
      if (t <= num_arms) {
        arm = static_cast<std::size_t>(t - 1);
      } else {
        arm = 0;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < num_arms; ++i) {
          const double v = mv_ucb_index(arm_stats[i], rho, scale, static_cast<double>(t));
          if (v < best) {
            best = v;
            arm = i;
          }
        }
      }
      pull(t, arm);
    }
  } else if (const auto* rn = std::get_if<RiskNeutralUcbPolicy>(&policy)) {
    for (std::uint64_t t = 1; t <= horizon; ++t) {
      std::size_t arm;
      if (t <= num_arms) {
        arm = static_cast<std::size_t>(t - 1);
      } else {
        arm = 0;
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < num_arms; ++i) {
          const double bonus =
              rn->bonus_scale * std::sqrt(std::log(static_cast<double>(t)) /
                                          static_cast<double>(arm_stats[i].count()));
          const double v = arm_stats[i].mean() + bonus;
          if (v > best) {
            best = v;
            arm = i;
          }
        }
      }
      pull(t, arm);
    }
  } else if (const auto* dsee = std::get_if<MvDseePolicy>(&policy)) {
    std::uint64_t explored = 0;
    for (std::uint64_t t = 1; t <= horizon; ++t) {
      const DseeStep step = dsee_phase(t, explored, *dsee, num_arms);
      std::size_t arm;
      if (step.explore) {
        arm = step.arm;
        ++explored;
      } else {
        arm = argmin_sampled_mv();
        if (arm == num_arms) {
          throw std::logic_error("exploitation step before any observation");
        }
      }
      pull(t, arm);
    }
  } else if (const auto* single = std::get_if<SingleArmPolicy>(&policy)) {
    for (std::uint64_t t = 1; t <= horizon; ++t) {
      pull(t, single->arm);
    }
  } else {
    const auto& threshold = std::get<ThresholdSwitchPolicy>(policy);
    const double first = pull(1, threshold_switch_step(1, std::nullopt, threshold.threshold));
    pull(2, threshold_switch_step(2, first, threshold.threshold));
  }
}

}  // namespace mvbandit::detail
