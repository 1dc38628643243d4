#include "mvbandit/distributions.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace mvbandit {

ArmDistribution ArmDistribution::gaussian(double mean, double variance) {
  if (!std::isfinite(mean) || !std::isfinite(variance) || variance <= 0.0) {
    throw std::invalid_argument("gaussian arm requires finite mean and variance > 0");
  }
  return {Kind::kGaussian, mean, variance};
}

ArmDistribution ArmDistribution::bernoulli(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("bernoulli arm requires p in [0, 1]");
  }
  return {Kind::kBernoulli, p, 0.0};
}

double ArmDistribution::mean() const { return param_a_; }

double ArmDistribution::variance() const {
  return kind_ == Kind::kGaussian ? param_b_ : param_a_ * (1.0 - param_a_);
}

double ArmDistribution::mean_variance(double rho) const { return variance() - rho * mean(); }

double ArmDistribution::sample(RandomStream& stream) const {
  if (kind_ == Kind::kGaussian) {
    return param_a_ + std::sqrt(param_b_) * stream.gaussian();
  }
  return stream.bernoulli(param_a_) ? 1.0 : 0.0;
}

std::string ArmDistribution::describe() const {
  char buf[64];
  if (kind_ == Kind::kGaussian) {
    std::snprintf(buf, sizeof(buf), "gaussian(%g, %g)", param_a_, param_b_);
  } else {
    std::snprintf(buf, sizeof(buf), "bernoulli(%g)", param_a_);
  }
  return buf;
}

}  // namespace mvbandit
