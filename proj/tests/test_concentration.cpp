#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <vector>

#include "mvbandit/concentration.hpp"
#include "mvbandit/experiments.hpp"

using namespace mvbandit;

namespace {

std::vector<TailGridCell> cross(std::initializer_list<std::uint64_t> s_values,
                                std::initializer_list<double> deltas) {
  std::vector<TailGridCell> grid;
  for (std::uint64_t s : s_values) {
    for (double d : deltas) {
      grid.push_back({s, d});
    }
  }
  return grid;
}

const TailCheckRow& find_row(const TailCheckReport& report, std::uint64_t s, double delta,
                             TailSide side) {
  for (const TailCheckRow& row : report.rows) {
    if (row.sample_count == s && row.deviation == delta && row.side == side) {
      return row;
    }
  }
  REQUIRE(false);
  return report.rows.front();
}

}  // namespace

TEST_CASE("bounded rewards cannot exceed an impossible deviation") {
  const std::vector<TailGridCell> grid = {{100, 3.0}};
  const TailCheckReport report = verify_mv_concentration(
      ArmDistribution::bernoulli(0.5), 0.0, 0.25, grid, 2000, RandomStream(1), 0);
  const TailCheckRow& upper = find_row(report, 100, 3.0, TailSide::kUpper);
  CHECK(upper.empirical == 0.0);
  CHECK(upper.violated.has_value());
  CHECK_FALSE(*upper.violated);
  // delta = 3 > 2 + rho: the lower-tail bound does not apply.
  const TailCheckRow& lower = find_row(report, 100, 3.0, TailSide::kLower);
  CHECK_FALSE(lower.violated.has_value());
}

TEST_CASE("vanishing deviations make the bound vacuous, never violated") {
  const std::vector<TailGridCell> grid = {{50, 1e-9}};
  const TailCheckReport report = verify_mv_concentration(
      ArmDistribution::gaussian(0.0, 1.0), 1.0, 0.25, grid, 1000, RandomStream(2), 0);
  for (const TailCheckRow& row : report.rows) {
    CHECK(row.bound >= 2.0 * std::exp(-1e-10));
    CHECK(row.violated.has_value());
    CHECK_FALSE(*row.violated);
  }
}

TEST_CASE("bernoulli grid shows no violations at the default constant") {
  for (double rho : {0.0, 1.0}) {
    CAPTURE(rho);
    const TailCheckReport report =
        verify_mv_concentration(ArmDistribution::bernoulli(0.5), rho, 0.25,
                                cross({10, 100, 1000}, {0.1, 0.3, 1.0}), 5000, RandomStream(3), 0);
    CHECK_FALSE(report.any_violation());
    CHECK(report.rows.size() == 18);
  }
}

TEST_CASE("gaussian grid at a looser constant shows no violations") {
  const TailCheckReport report =
      verify_mv_concentration(ArmDistribution::gaussian(0.0, 1.0), 1.0, 0.1,
                              cross({50, 200, 1000}, {0.2, 0.5, 1.0}), 2000, RandomStream(4), 0);
  CHECK_FALSE(report.any_violation());
}

TEST_CASE("an inflated constant is caught as a violation") {
  const TailCheckReport report = verify_mv_concentration(
      ArmDistribution::gaussian(0.0, 1.0), 0.0, 100.0, cross({10}, {0.1}), 2000, RandomStream(5), 0);
  CHECK(report.any_violation());
}

TEST_CASE("tail check input validation") {
  const std::vector<TailGridCell> grid = {{10, 0.1}};
  CHECK_THROWS_AS((void)verify_mv_concentration(ArmDistribution::bernoulli(0.5), 0.0, 0.25, grid,
                                                999, RandomStream(1), 0),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)verify_mv_concentration(ArmDistribution::bernoulli(0.5), 0.0, 0.25, {},
                                                2000, RandomStream(1), 0),
                  std::invalid_argument);
  const std::vector<TailGridCell> bad = {{10, 0.0}};
  CHECK_THROWS_AS((void)verify_mv_concentration(ArmDistribution::bernoulli(0.5), 0.0, 0.25, bad,
                                                2000, RandomStream(1), 0),
                  std::invalid_argument);
}

TEST_CASE("stopping-time bound under a fixed-arm policy recovers the arm variance") {
  const BanditInstance instance = counterexample_instance();
  const std::uint64_t horizon = 200;
  const auto checks =
      verify_stopping_time_bound(instance, SingleArmPolicy{0}, horizon, 4000, RandomStream(6), 0);
  REQUIRE(checks.size() == 2);
  // Arm 0 is always played: pulls * (sample mean - mean)^2 has expectation
  // equal to the variance, far below (log T + 2) / a.
  CHECK(std::abs(checks[0].lhs - instance.variance(0)) <= 4.0 * checks[0].lhs_std_err);
  CHECK(checks[0].rhs == doctest::Approx((std::log(200.0) + 2.0) / 0.25).epsilon(1e-12));
  CHECK(checks[0].satisfied);
  // The unplayed arm contributes zero.
  CHECK(checks[1].lhs == 0.0);
  CHECK(checks[1].satisfied);
}

TEST_CASE("doubling the concentration constant halves the bound side only") {
  const std::vector<ArmDistribution> arms = {ArmDistribution::gaussian(0.0, 0.25),
                                             ArmDistribution::gaussian(0.5, 1.0)};
  const BanditInstance base(arms, 1.0, 0.25);
  const BanditInstance doubled(arms, 1.0, 0.5);
  const auto before = verify_stopping_time_bound(base, MvUcbPolicy{2.0}, 300, 500, RandomStream(7), 0);
  const auto after =
      verify_stopping_time_bound(doubled, MvUcbPolicy{2.0}, 300, 500, RandomStream(7), 0);
  for (std::size_t i = 0; i < before.size(); ++i) {
    CHECK(after[i].lhs == before[i].lhs);  // same seed, same draws
    CHECK(after[i].rhs == before[i].rhs / 2.0);
  }
}

TEST_CASE("stopping-time check requires a two-step horizon") {
  CHECK_THROWS_AS((void)verify_stopping_time_bound(counterexample_instance(), SingleArmPolicy{0}, 1,
                                                   1000, RandomStream(8), 0),
                  std::invalid_argument);
}

TEST_CASE("pull-count bound holds for mv-ucb on a separated instance") {
  const BanditInstance instance = two_arm_gap_instance(0.25);
  const auto checks =
      verify_suboptimal_pull_bound(instance, MvUcbPolicy{}, 500, 400, RandomStream(9), 0);
  REQUIRE(checks.size() == 1);
  CHECK(checks[0].arm == 1);
  CHECK(checks[0].satisfied);
  CHECK(checks[0].mean_pulls.value <= 500.0);
  const double b = default_mv_ucb_scale(1.0, 0.25);
  CHECK(checks[0].bound ==
        doctest::Approx(4.0 * b * b * std::log(500.0) / 0.0625 + 5.0).epsilon(1e-12));
}
