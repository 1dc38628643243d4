#include "mvbandit/policies.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "mvbandit/policy_driver.hpp"

namespace mvbandit {

namespace {

std::string format_param(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

}  // namespace

std::string policy_label(const PolicySpec& policy) {
  if (const auto* ucb = std::get_if<MvUcbPolicy>(&policy)) {
    return ucb->bonus_scale ? "mv_ucb_b" + format_param(*ucb->bonus_scale) : "mv_ucb";
  }
  if (const auto* dsee = std::get_if<MvDseePolicy>(&policy)) {
    if (dsee->mode == MvDseePolicy::Mode::kModelIndependent) {
      return "mv_dsee_mi_w" + format_param(dsee->exploration_weight);
    }
    return "mv_dsee_ms";
  }
  if (const auto* single = std::get_if<SingleArmPolicy>(&policy)) {
    return "single_arm_" + std::to_string(single->arm);
  }
  if (const auto* threshold = std::get_if<ThresholdSwitchPolicy>(&policy)) {
    return "counterexample_t" + format_param(threshold->threshold);
  }
  return "rn_ucb_c" + format_param(std::get<RiskNeutralUcbPolicy>(policy).bonus_scale);
}

double default_mv_ucb_scale(double rho, double concentration) {
  return std::sqrt(3.0) * (2.0 + rho) / std::sqrt(concentration);
}

double resolve_mv_ucb_scale(const MvUcbPolicy& policy, const BanditInstance& instance) {
  if (policy.bonus_scale) {
    if (!(*policy.bonus_scale > 0.0)) {
      throw std::invalid_argument("mv_ucb bonus scale must be positive");
    }
    return *policy.bonus_scale;
  }
  return default_mv_ucb_scale(instance.rho(), instance.concentration());
}

double mv_ucb_index(const StreamingMoments& stats, double rho, double bonus_scale, double t) {
  if (stats.count() == 0) {
    throw std::logic_error("mv_ucb index of an unsampled arm");
  }
  if (!(t >= 1.0)) {
    throw std::invalid_argument("mv_ucb index requires t >= 1");
  }
  return stats.mean_variance(rho) -
         bonus_scale * std::sqrt(std::log(t) / static_cast<double>(stats.count()));
}

std::uint64_t dsee_exploration_budget(const MvDseePolicy& policy, std::uint64_t t) {
  if (t == 0) {
    throw std::invalid_argument("time starts at 1");
  }
  const double td = static_cast<double>(t);
  if (policy.mode == MvDseePolicy::Mode::kModelIndependent) {
    // cbrt(t^2) rather than pow(t, 2/3): exact on perfect cubes.
    return static_cast<std::uint64_t>(std::ceil(policy.exploration_weight * std::cbrt(td * td)));
  }
  const double f = std::max(1.0, std::log(std::log(std::max(td, 3.0))));
  const double raw = std::ceil(f * std::log(td));
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(raw));
}

DseeStep dsee_phase(std::uint64_t t, std::uint64_t explored_so_far, const MvDseePolicy& policy,
                    std::size_t num_arms) {
  if (num_arms == 0) {
    throw std::invalid_argument("dsee phase requires at least one arm");
  }
  if (explored_so_far < dsee_exploration_budget(policy, t)) {
    return {true, static_cast<std::size_t>(explored_so_far % num_arms)};
  }
  return {false, 0};
}

std::size_t threshold_switch_step(std::uint64_t t, std::optional<double> first_reward, double threshold) {
  if (t == 1) {
    if (first_reward) {
      throw std::invalid_argument("no reward exists before step 1");
    }
    return 0;
  }
  if (t == 2) {
    if (!first_reward) {
      throw std::invalid_argument("step 2 requires the first reward");
    }
    return *first_reward < threshold ? 0 : 1;
  }
  throw std::invalid_argument("threshold-switch policy is defined for two steps only");
}

namespace detail {

void validate_policy_run(const BanditInstance& instance, const PolicySpec& policy, std::uint64_t horizon) {
  if (horizon == 0) {
    throw std::invalid_argument("horizon must be >= 1");
  }
  const std::size_t num_arms = instance.num_arms();
  if (std::holds_alternative<MvUcbPolicy>(policy) || std::holds_alternative<RiskNeutralUcbPolicy>(policy)) {
    if (horizon < num_arms) {
      throw std::invalid_argument("index policies need horizon >= number of arms");
    }
  } else if (const auto* single = std::get_if<SingleArmPolicy>(&policy)) {
    if (single->arm >= num_arms) {
      throw std::invalid_argument("single-arm policy references an unknown arm");
    }
  } else if (std::holds_alternative<ThresholdSwitchPolicy>(policy)) {
    if (horizon != 2) {
      throw std::invalid_argument("threshold-switch policy requires horizon 2");
    }
  } else if (const auto* dsee = std::get_if<MvDseePolicy>(&policy)) {
    if (dsee->mode == MvDseePolicy::Mode::kModelIndependent && !(dsee->exploration_weight > 0.0)) {
      throw std::invalid_argument("dsee exploration weight must be positive");
    }
  }
}

}  // namespace detail

RunTrace run_policy(const BanditInstance& instance, const PolicySpec& policy, std::uint64_t horizon,
                    const RandomStream& stream) {
  RunTrace trace;
  trace.horizon = horizon;
  trace.choices.reserve(horizon);
  trace.rewards.reserve(horizon);
  std::vector<StreamingMoments> arm_stats;
  detail::drive_policy(instance, policy, horizon, stream, arm_stats,
                       [&](std::uint64_t, std::size_t arm, double x) {
                         trace.choices.push_back(static_cast<std::uint32_t>(arm));
                         trace.rewards.push_back(x);
                       });
  trace.per_arm.reserve(arm_stats.size());
  for (const auto& stats : arm_stats) {
    ArmRunStats s;
    s.pulls = stats.count();
    if (stats.count() > 0) {
      s.mean = stats.mean();
      s.variance = stats.variance();
    }
    trace.per_arm.push_back(s);
  }
  return trace;
}

}  // namespace mvbandit
