#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <vector>

#include "mvbandit/moments.hpp"
#include "mvbandit/random.hpp"

using namespace mvbandit;

namespace {

struct TwoPass {
  double mean = 0.0;
  double variance = 0.0;
};

TwoPass two_pass(const std::vector<double>& xs) {
  double sum = 0.0;
  for (double x : xs) {
    sum += x;
  }
  TwoPass out;
  out.mean = sum / static_cast<double>(xs.size());
  double m2 = 0.0;
  for (double x : xs) {
    m2 += (x - out.mean) * (x - out.mean);
  }
  out.variance = m2 / static_cast<double>(xs.size());
  return out;
}

}  // namespace

TEST_CASE("single observation") {
  StreamingMoments m;
  m.add(5.0);
  CHECK(m.count() == 1);
  CHECK(m.mean() == 5.0);
  CHECK(m.variance() == 0.0);
}

TEST_CASE("constant sequence has zero variance") {
  StreamingMoments m;
  for (int i = 0; i < 4; ++i) {
    m.add(1.0);
  }
  CHECK(m.mean() == 1.0);
  CHECK(m.variance() == 0.0);
}

TEST_CASE("two-point mean-variance") {
  StreamingMoments m;
  m.add(0.0);
  m.add(1.0);
  CHECK(m.mean() == 0.5);
  CHECK(m.variance() == 0.25);
  CHECK(m.mean_variance(1.0) == -0.25);
}

TEST_CASE("empty queries are errors") {
  const StreamingMoments m;
  CHECK(m.count() == 0);
  CHECK_THROWS_AS((void)m.mean(), std::logic_error);
  CHECK_THROWS_AS((void)m.variance(), std::logic_error);
  StreamingMoments one;
  one.add(2.0);
  CHECK_THROWS_AS((void)one.variance_unbiased(), std::logic_error);
}

TEST_CASE("unbiased estimator differs by the usual factor") {
  StreamingMoments m;
  for (double x : {1.0, 2.0, 3.0, 4.0}) {
    m.add(x);
  }
  CHECK(m.variance_unbiased() == doctest::Approx(m.variance() * 4.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("mean-variance identity holds bit for bit") {
  RandomStream stream(31);
  StreamingMoments m;
  for (int i = 0; i < 257; ++i) {
    m.add(stream.gaussian() * 3.0 + 1.0);
    for (double rho : {0.0, 0.5, 1.0, 5.0}) {
      CHECK(m.mean_variance(rho) == m.variance() - rho * m.mean());
    }
  }
}

TEST_CASE("streaming matches two-pass within 1e-10 relative over randomized sequences") {
  RandomStream root(2024);
  double worst = 0.0;
  for (int trial = 0; trial < 10000; ++trial) {
    RandomStream stream = root.child(trial);
    const std::size_t len = 1 + static_cast<std::size_t>(stream.uniform01() * 999);
    const double scale = std::pow(10.0, -3.0 + 5.0 * stream.uniform01());
    const double offset = (stream.uniform01() - 0.5) * 2.0e4;
    std::vector<double> xs(len);
    StreamingMoments m;
    for (double& x : xs) {
      x = offset + scale * stream.gaussian();
      m.add(x);
    }
    const TwoPass expected = two_pass(xs);
    const double tol = 1e-10 * std::max(1.0, std::abs(expected.variance));
    worst = std::max(worst, std::abs(m.variance() - expected.variance));
    REQUIRE(std::abs(m.variance() - expected.variance) <= tol);
    REQUIRE(std::abs(m.mean() - expected.mean) <= 1e-10 * std::max(1.0, std::abs(expected.mean)));
  }
  CHECK(worst >= 0.0);
}

TEST_CASE("merge equals sequential feeding") {
  RandomStream root(77);
  for (int trial = 0; trial < 2000; ++trial) {
    RandomStream stream = root.child(trial);
    const std::size_t len = 2 + static_cast<std::size_t>(stream.uniform01() * 998);
    const std::size_t cut = static_cast<std::size_t>(stream.uniform01() * static_cast<double>(len));
    StreamingMoments left;
    StreamingMoments right;
    StreamingMoments sequential;
    for (std::size_t i = 0; i < len; ++i) {
      const double x = stream.gaussian() * 2.0 + 0.3;
      (i < cut ? left : right).add(x);
      sequential.add(x);
    }
    left.merge(right);
    REQUIRE(left.count() == sequential.count());
    const double tol_var = 1e-10 * std::max(1.0, std::abs(sequential.variance()));
    REQUIRE(std::abs(left.variance() - sequential.variance()) <= tol_var);
    REQUIRE(std::abs(left.mean() - sequential.mean()) <= 1e-10);
  }

  // Merging with an empty side is the identity.
  StreamingMoments a;
  a.add(1.0);
  a.add(2.0);
  StreamingMoments b;
  a.merge(b);
  CHECK(a.count() == 2);
  b.merge(a);
  CHECK(b.count() == 2);
  CHECK(b.mean() == 1.5);
}
