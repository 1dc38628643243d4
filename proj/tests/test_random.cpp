#include <doctest.h>

#include <vector>

#include "mvbandit/random.hpp"

using namespace mvbandit;

TEST_CASE("equal seeds give identical sequences") {
  RandomStream a(987654321);
  RandomStream b(987654321);
  for (int i = 0; i < 1000; ++i) {
    CHECK(a.next_u64() == b.next_u64());
  }
}

TEST_CASE("different seeds diverge") {
  RandomStream a(1);
  RandomStream b(2);
  int equal = 0;
  for (int i = 0; i < 64; ++i) {
    equal += a.next_u64() == b.next_u64();
  }
  CHECK(equal < 4);
}

TEST_CASE("children are independent of parent state and of each other") {
  RandomStream parent(7);
  const RandomStream c0 = parent.child(0);
  parent.next_u64();
  parent.next_u64();
  RandomStream c0_again = parent.child(0);  // derivation ignores generator state
  RandomStream c0_copy = c0;
  for (int i = 0; i < 100; ++i) {
    CHECK(c0_copy.next_u64() == c0_again.next_u64());
  }

  RandomStream c1 = parent.child(1);
  RandomStream c0b = parent.child(0);
  int equal = 0;
  for (int i = 0; i < 64; ++i) {
    equal += c0b.next_u64() == c1.next_u64();
  }
  CHECK(equal < 4);
}

TEST_CASE("appending child indices never perturbs earlier children") {
  RandomStream root(123);
  std::vector<std::uint64_t> first;
  for (std::uint64_t r = 0; r < 5; ++r) {
    first.push_back(RandomStream(root.child(r)).next_u64());
  }
  // Deriving more children afterwards changes nothing.
  for (std::uint64_t r = 0; r < 50; ++r) {
    (void)root.child(r);
  }
  for (std::uint64_t r = 0; r < 5; ++r) {
    CHECK(RandomStream(root.child(r)).next_u64() == first[r]);
  }
}

TEST_CASE("uniform01 stays in [0, 1)") {
  RandomStream s(99);
  for (int i = 0; i < 10000; ++i) {
    const double u = s.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("gaussian draws have sane first moments") {
  RandomStream s(1234);
  double sum = 0.0;
  double sumsq = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double x = s.gaussian();
    sum += x;
    sumsq += x * x;
  }
  const double mean = sum / n;
  const double var = sumsq / n - mean * mean;
  CHECK(std::abs(mean) < 0.01);
  CHECK(std::abs(var - 1.0) < 0.02);
}
