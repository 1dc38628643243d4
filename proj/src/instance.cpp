#include "mvbandit/instance.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace mvbandit {

BanditInstance::BanditInstance(std::vector<ArmDistribution> arms, double rho, double concentration)
    : arms_(std::move(arms)), rho_(rho), concentration_(concentration) {
  if (arms_.size() < 2) {
    throw std::invalid_argument("instance requires at least two arms");
  }
  if (!(rho_ >= 0.0) || !std::isfinite(rho_)) {
    throw std::invalid_argument("risk tolerance must be finite and >= 0");
  }
  if (!(concentration_ > 0.0) || !std::isfinite(concentration_)) {
    throw std::invalid_argument("concentration constant must be finite and > 0");
  }

  best_arm_ = 0;
  for (std::size_t i = 1; i < arms_.size(); ++i) {
    if (arms_[i].mean_variance(rho_) < arms_[best_arm_].mean_variance(rho_)) {
      best_arm_ = i;
    }
  }

  const double best_mv = arms_[best_arm_].mean_variance(rho_);
  const double best_mu = arms_[best_arm_].mean();
  mv_gaps_.reserve(arms_.size());
  mean_gaps_.reserve(arms_.size());
  min_mv_gap_ = std::numeric_limits<double>::infinity();
  max_abs_mean_gap_ = 0.0;
  max_sigma_ = 0.0;
  for (std::size_t i = 0; i < arms_.size(); ++i) {
    mv_gaps_.push_back(arms_[i].mean_variance(rho_) - best_mv);
    mean_gaps_.push_back(arms_[i].mean() - best_mu);
    if (i != best_arm_) {
      min_mv_gap_ = std::min(min_mv_gap_, mv_gaps_[i]);
    }
    max_abs_mean_gap_ = std::max(max_abs_mean_gap_, std::abs(mean_gaps_[i]));
    max_sigma_ = std::max(max_sigma_, std::sqrt(arms_[i].variance()));
  }
}

}  // namespace mvbandit
