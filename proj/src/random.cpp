#include "mvbandit/random.hpp"

#include <cmath>

namespace mvbandit {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
constexpr double kTwoPi = 6.283185307179586476925286766559;

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

std::uint64_t mix_keys(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a + kGolden * (b + 1);
  std::uint64_t h = splitmix64(s);
  s ^= h + rotl(a, 17);
  return splitmix64(s);
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += kGolden);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

RandomStream::RandomStream(std::uint64_t seed) : RandomStream(mix_keys(seed, 0x6D76626E64697421ULL), FromKey{}) {}

RandomStream::RandomStream(std::uint64_t key, FromKey) : key_(key) {
  std::uint64_t s = key_;
  for (auto& word : state_) {
    word = splitmix64(s);
  }
}

RandomStream RandomStream::child(std::uint64_t index) const {
  return RandomStream(mix_keys(key_, index), FromKey{});
}

std::uint64_t RandomStream::next_u64() {
  // xoshiro256++ (Blackman & Vigna, public domain reference implementation).
  const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double RandomStream::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::gaussian() {
  // u1 is shifted into (0, 1] so the logarithm is always finite.
  const double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

bool RandomStream::bernoulli(double p) { return uniform01() < p; }

}  // namespace mvbandit
