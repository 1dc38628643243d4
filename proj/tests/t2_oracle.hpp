#pragma once

// Test-only oracle for two-step policies on gaussian instances, independent
// of the simulation path: conditional on the first reward x, the expected
// final cumulative mean-variance when the second pull is arm j equals
//   (var_j + (x - mu_j)^2) / 2 - rho * x - rho * mu_j,
// so policy values reduce to one-dimensional gaussian integrals, evaluated
// here with composite Simpson quadrature over +-12 sigma.

#include <cmath>
#include <cstddef>
#include <functional>

#include "mvbandit/instance.hpp"

namespace mvbandit::testing {

inline double gaussian_expectation(double mean, double variance,
                                   const std::function<double(double)>& f) {
  const double sigma = std::sqrt(variance);
  const double lo = mean - 12.0 * sigma;
  const double hi = mean + 12.0 * sigma;
  const std::size_t intervals = 40000;  // even
  const double h = (hi - lo) / static_cast<double>(intervals);
  const double inv_norm = 1.0 / (sigma * std::sqrt(2.0 * 3.14159265358979323846));
  const auto density = [&](double x) {
    const double z = (x - mean) / sigma;
    return inv_norm * std::exp(-0.5 * z * z);
  };
  double sum = density(lo) * f(lo) + density(hi) * f(hi);
  for (std::size_t i = 1; i < intervals; ++i) {
    const double x = lo + h * static_cast<double>(i);
    sum += density(x) * f(x) * (i % 2 == 1 ? 4.0 : 2.0);
  }
  return sum * h / 3.0;
}

inline double second_pull_cost(const BanditInstance& instance, std::size_t arm, double x) {
  const double mu = instance.mean(arm);
  const double var = instance.variance(arm);
  return 0.5 * (var + (x - mu) * (x - mu)) - instance.rho() * instance.mean(arm);
}

/// Exact value of the two-step policy that starts on arm 0 and stays there
/// iff the first reward is below the threshold.
inline double threshold_policy_value(const BanditInstance& instance, double threshold) {
  const double rho = instance.rho();
  const double value = gaussian_expectation(
      instance.mean(0), instance.variance(0), [&](double x) {
        const std::size_t arm = x < threshold ? 0 : 1;
        return second_pull_cost(instance, arm, x) - rho * x;
      });
  return value;
}

/// Exact value of the optimal two-step policy: best starting arm, then the
/// pointwise-optimal second pull.
inline double optimal_two_step_value(const BanditInstance& instance) {
  double best = 0.0;
  for (std::size_t start = 0; start < instance.num_arms(); ++start) {
    const double rho = instance.rho();
    const double value = gaussian_expectation(
        instance.mean(start), instance.variance(start), [&](double x) {
          double cost = second_pull_cost(instance, 0, x);
          for (std::size_t j = 1; j < instance.num_arms(); ++j) {
            cost = std::min(cost, second_pull_cost(instance, j, x));
          }
          return cost - rho * x;
        });
    if (start == 0 || value < best) {
      best = value;
    }
  }
  return best;
}

}  // namespace mvbandit::testing
