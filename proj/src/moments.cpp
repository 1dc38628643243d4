#include "mvbandit/moments.hpp"

#include <stdexcept>

namespace mvbandit {

void StreamingMoments::add(double x) {
  ++count_;
  const double delta = x - mean_;
  mean_ += delta / static_cast<double>(count_);
  m2_ += delta * (x - mean_);
}

void StreamingMoments::merge(const StreamingMoments& other) {
  if (other.count_ == 0) {
    return;
  }
  if (count_ == 0) {
    *this = other;
    return;
  }
  const double na = static_cast<double>(count_);
  const double nb = static_cast<double>(other.count_);
  const double n = na + nb;
  const double delta = other.mean_ - mean_;
  mean_ += delta * (nb / n);
  m2_ += other.m2_ + delta * delta * (na * nb / n);
  count_ += other.count_;
}

double StreamingMoments::mean() const {
  if (count_ == 0) {
    throw std::logic_error("mean of empty accumulator");
  }
  return mean_;
}

double StreamingMoments::variance() const {
  if (count_ == 0) {
    throw std::logic_error("variance of empty accumulator");
  }
  return m2_ / static_cast<double>(count_);
}

double StreamingMoments::variance_unbiased() const {
  if (count_ < 2) {
    throw std::logic_error("unbiased variance requires at least two observations");
  }
  return m2_ / static_cast<double>(count_ - 1);
}

double StreamingMoments::mean_variance(double rho) const { return variance() - rho * mean(); }

}  // namespace mvbandit
