#pragma once

#include <string>

#include "mvbandit/random.hpp"

namespace mvbandit {

/// A parametric arm reward law with closed-form moments.
///
/// Two families are supported: Gaussian(mean, variance) and Bernoulli(p).
/// The mean-variance of a law under risk tolerance `rho` is
/// variance - rho * mean (lower is better).
class ArmDistribution {
 public:
  enum class Kind { kGaussian, kBernoulli };

  static ArmDistribution gaussian(double mean, double variance);
  static ArmDistribution bernoulli(double p);

  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] double mean() const;
  [[nodiscard]] double variance() const;
  [[nodiscard]] double mean_variance(double rho) const;

  /// One i.i.d. draw from the law.
  double sample(RandomStream& stream) const;

  /// Gaussian mean or Bernoulli p, as stored.
  [[nodiscard]] double param_a() const { return param_a_; }
  /// Gaussian variance; unused for Bernoulli.
  [[nodiscard]] double param_b() const { return param_b_; }

  [[nodiscard]] std::string describe() const;

  friend bool operator==(const ArmDistribution&, const ArmDistribution&) = default;

 private:
  ArmDistribution(Kind kind, double a, double b) : kind_(kind), param_a_(a), param_b_(b) {}

  Kind kind_;
  double param_a_;
  double param_b_;
};

}  // namespace mvbandit
