#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mvbandit/instance.hpp"
#include "mvbandit/moments.hpp"
#include "mvbandit/random.hpp"

namespace mvbandit {

/// Index policy: play the arm with the smallest
///   sample mean-variance - bonus_scale * sqrt(log t / pulls),
/// after one initialization round over all arms. When bonus_scale is unset
/// it resolves per instance to sqrt(3) * (2 + rho) / sqrt(a), the smallest
/// scale for which the logarithmic pull-count bound applies.
struct MvUcbPolicy {
  std::optional<double> bonus_scale;
};

/// Deterministic-sequencing policy: exploration slots (round-robin over
/// arms) are interleaved with exploitation of the empirical mean-variance
/// minimizer. The running exploration budget at time t is
///   model-specific:    max(1, ceil(f(t) * log t)), f(t) = max(1, log log max(t, 3))
///   model-independent: ceil(w * t^(2/3))
struct MvDseePolicy {
  enum class Mode { kModelSpecific, kModelIndependent };
  Mode mode = Mode::kModelIndependent;
  double exploration_weight = 1.0;  // w; model-independent mode only
};

struct SingleArmPolicy {
  std::size_t arm = 0;
};

/// Two-step adaptive policy: plays arm 0 first, then stays on arm 0 iff the
/// first reward fell below the threshold, else switches to arm 1. Only
/// defined for horizon 2.
struct ThresholdSwitchPolicy {
  double threshold = 0.5;
};

/// Risk-neutral baseline: maximize sample mean + bonus_scale * sqrt(log t / pulls).
struct RiskNeutralUcbPolicy {
  double bonus_scale = 1.4142135623730951;
};

using PolicySpec =
    std::variant<MvUcbPolicy, MvDseePolicy, SingleArmPolicy, ThresholdSwitchPolicy, RiskNeutralUcbPolicy>;

/// Short unique label, safe for CSV cells and file names.
std::string policy_label(const PolicySpec& policy);

/// The bonus scale actually used by MV-UCB on the given instance.
double resolve_mv_ucb_scale(const MvUcbPolicy& policy, const BanditInstance& instance);

/// Smallest bonus scale for which the pull-count bound applies:
/// sqrt(3) * (2 + rho) / sqrt(a).
double default_mv_ucb_scale(double rho, double concentration);

/// Index value for one arm. `t` is the decision time (log 1 = 0 gives a
/// zero bonus at t = 1). Throws on an empty accumulator.
double mv_ucb_index(const StreamingMoments& stats, double rho, double bonus_scale, double t);

struct DseeStep {
  bool explore = false;
  std::size_t arm = 0;  // meaningful only when explore is true
};

/// Phase decision at time t given how many exploration slots were consumed.
DseeStep dsee_phase(std::uint64_t t, std::uint64_t explored_so_far, const MvDseePolicy& policy,
                    std::size_t num_arms);

std::uint64_t dsee_exploration_budget(const MvDseePolicy& policy, std::uint64_t t);

/// Arm for the threshold-switch policy at step t (t in {1, 2}); the first
/// reward must be supplied exactly when t == 2.
std::size_t threshold_switch_step(std::uint64_t t, std::optional<double> first_reward, double threshold);

struct ArmRunStats {
  std::uint64_t pulls = 0;
  double mean = 0.0;      // undefined (0) when pulls == 0
  double variance = 0.0;  // biased estimate, undefined (0) when pulls == 0
};

/// One realized run: choices, rewards, and final per-arm sample statistics.
struct RunTrace {
  std::uint64_t horizon = 0;
  std::vector<std::uint32_t> choices;
  std::vector<double> rewards;
  std::vector<ArmRunStats> per_arm;
};

/// Execute a policy for `horizon` steps. Rewards for arm i are drawn from
/// stream.child(i), so the underlying reward tape of each arm is fixed by
/// the stream alone and shared across policies (common random numbers).
RunTrace run_policy(const BanditInstance& instance, const PolicySpec& policy, std::uint64_t horizon,
                    const RandomStream& stream);

}  // namespace mvbandit
