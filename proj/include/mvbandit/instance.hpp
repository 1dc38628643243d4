#pragma once

#include <cstddef>
#include <vector>

#include "mvbandit/distributions.hpp"

namespace mvbandit {

inline constexpr double kDefaultConcentrationConstant = 0.25;

/// An immutable K-armed problem: arm laws, risk tolerance and the
/// concentration constant used by every bound calculator.
///
/// All derived quantities are fixed at construction:
///   - best_arm: index with the smallest mean-variance (ties -> lowest index)
///   - mv_gap(i):   xi_i - xi_best            (>= 0)
///   - mean_gap(i): mu_i - mu_best            (signed)
///   - min_mv_gap:  smallest mv_gap over non-best arms
///   - max_abs_mean_gap, max_sigma: worst-case spread statistics
class BanditInstance {
 public:
  BanditInstance(std::vector<ArmDistribution> arms, double rho,
                 double concentration = kDefaultConcentrationConstant);

  [[nodiscard]] std::size_t num_arms() const { return arms_.size(); }
  [[nodiscard]] const std::vector<ArmDistribution>& arms() const { return arms_; }
  [[nodiscard]] const ArmDistribution& arm(std::size_t i) const { return arms_.at(i); }
  [[nodiscard]] double rho() const { return rho_; }
  [[nodiscard]] double concentration() const { return concentration_; }

  [[nodiscard]] std::size_t best_arm() const { return best_arm_; }
  [[nodiscard]] double mean(std::size_t i) const { return arms_.at(i).mean(); }
  [[nodiscard]] double variance(std::size_t i) const { return arms_.at(i).variance(); }
  [[nodiscard]] double mean_variance(std::size_t i) const { return arms_.at(i).mean_variance(rho_); }

  [[nodiscard]] double mv_gap(std::size_t i) const { return mv_gaps_.at(i); }
  [[nodiscard]] double mean_gap(std::size_t i) const { return mean_gaps_.at(i); }
  [[nodiscard]] double min_mv_gap() const { return min_mv_gap_; }
  [[nodiscard]] double max_abs_mean_gap() const { return max_abs_mean_gap_; }
  [[nodiscard]] double max_sigma() const { return max_sigma_; }

  [[nodiscard]] double best_mean() const { return mean(best_arm_); }
  [[nodiscard]] double best_variance() const { return variance(best_arm_); }
  [[nodiscard]] double best_mean_variance() const { return mean_variance(best_arm_); }

 private:
  std::vector<ArmDistribution> arms_;
  double rho_;
  double concentration_;
  std::size_t best_arm_;
  std::vector<double> mv_gaps_;
  std::vector<double> mean_gaps_;
  double min_mv_gap_;
  double max_abs_mean_gap_;
  double max_sigma_;
};

}  // namespace mvbandit
