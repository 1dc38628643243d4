#include "mvbandit/stats.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace mvbandit {

ValueWithError mean_with_error(std::span<const double> values, std::size_t max_batches) {
  const std::size_t n = values.size();
  if (n == 0) {
    throw std::invalid_argument("mean of an empty sample");
  }
  double total = 0.0;
  for (double v : values) {
    total += v;
  }
  const double mean = total / static_cast<double>(n);
  const std::size_t batches = std::min(max_batches, n);
  if (batches < 2) {
    return {mean, std::numeric_limits<double>::quiet_NaN()};
  }
  std::vector<double> batch_means(batches);
  for (std::size_t b = 0; b < batches; ++b) {
    const std::size_t lo = b * n / batches;
    const std::size_t hi = (b + 1) * n / batches;
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      s += values[i];
    }
    batch_means[b] = s / static_cast<double>(hi - lo);
  }
  double ss = 0.0;
  for (double m : batch_means) {
    ss += (m - mean) * (m - mean);
  }
  const double batch_var = ss / static_cast<double>(batches - 1);
  return {mean, std::sqrt(batch_var / static_cast<double>(batches))};
}

LinearFit linear_fit(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("linear fit requires two or more paired points");
  }
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) {
    throw std::invalid_argument("linear fit requires distinct x values");
  }
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (syy == 0.0) {
    fit.r_squared = 1.0;
  } else {
    double ss_res = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double e = y[i] - (fit.intercept + fit.slope * x[i]);
      ss_res += e * e;
    }
    fit.r_squared = 1.0 - ss_res / syy;
  }
  return fit;
}

}  // namespace mvbandit
