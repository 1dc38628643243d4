#pragma once

#include <cstdint>

namespace mvbandit {

/// Single-pass accumulator for count, mean and the un-normalized second
/// central moment (Welford's recurrence; Chan's update for merge). The
/// incremental form avoids the catastrophic cancellation of the naive
/// sum-of-squares formula on long near-constant streams.
///
/// variance() divides by the count (the default estimator everywhere in
/// this library); variance_unbiased() divides by count - 1.
/// Queries on an empty accumulator throw std::logic_error.
class StreamingMoments {
 public:
  StreamingMoments() = default;

  void add(double x);
  void merge(const StreamingMoments& other);

  [[nodiscard]] std::uint64_t count() const { return count_; }
  [[nodiscard]] double mean() const;
  [[nodiscard]] double variance() const;
  [[nodiscard]] double variance_unbiased() const;
  /// variance() - rho * mean(), computed from the exact same subexpressions.
  [[nodiscard]] double mean_variance(double rho) const;
  /// Sum of squared deviations from the running mean (m2).
  [[nodiscard]] double second_moment_sum() const { return m2_; }

 private:
  std::uint64_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

}  // namespace mvbandit
