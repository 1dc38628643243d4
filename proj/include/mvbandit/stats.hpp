#pragma once

#include <span>

namespace mvbandit {

struct ValueWithError {
  double value = 0.0;
  double std_err = 0.0;  // NaN when undefined (fewer than two batches)
};

/// Monte Carlo mean with a batch-means standard error. Values are split by
/// index into at most `max_batches` contiguous batches; the error is the
/// spread of batch means. Fixed batching keeps the result identical no
/// matter how replications were scheduled across threads.
ValueWithError mean_with_error(std::span<const double> values, std::size_t max_batches = 100);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Ordinary least squares of y on x. Requires >= 2 distinct x values.
LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

}  // namespace mvbandit
