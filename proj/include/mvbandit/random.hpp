#pragma once

#include <array>
#include <cstdint>

namespace mvbandit {

/// Deterministic, splittable random stream.
///
/// A stream is identified by a 64-bit key derived from the user seed.
/// `child(i)` derives a new independent stream from the parent *key* (not
/// from the generator state), so the family of streams reachable from one
/// seed is a pure function of (seed, path of child indices). Simulations
/// split hierarchically as seed -> replication -> arm, which keeps every
/// draw stable when replications or arms are appended.
///
/// Generation uses xoshiro256++ seeded via splitmix64; both are fixed here
/// (never delegated to implementation-defined library distributions) so
/// that equal seeds give bit-identical sequences on every build.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed);

  /// Derive the `index`-th child stream. Pure: does not advance this stream.
  [[nodiscard]] RandomStream child(std::uint64_t index) const;

  std::uint64_t next_u64();

  /// Uniform draw in [0, 1) with 53 random bits.
  double uniform01();

  /// Standard normal draw (Box-Muller, two uniforms per call, no cache).
  double gaussian();

  bool bernoulli(double p);

  [[nodiscard]] std::uint64_t key() const { return key_; }

 private:
  struct FromKey {};
  RandomStream(std::uint64_t key, FromKey);

  std::uint64_t key_;
  std::array<std::uint64_t, 4> state_;
};

/// splitmix64 mixing step; used for key derivation and generator seeding.
std::uint64_t splitmix64(std::uint64_t& state);

}  // namespace mvbandit
