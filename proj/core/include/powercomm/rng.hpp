#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace powercomm {

// Deterministic, platform-independent PRNG (splitmix64). The standard
// <random> distributions are implementation-defined, which breaks the
// byte-identical-artifact guarantee, so all randomness in this project
// goes through this engine.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform in [0, n). n must be > 0.
  std::uint64_t next_below(std::uint64_t n);

  // Uniform integer in [lo, hi] inclusive.
  long next_int(long lo, long hi) {
    return lo + static_cast<long>(next_below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  bool next_bool() { return (next_u64() >> 63) != 0; }

  // True with probability p.
  bool bernoulli(double p) { return next_double() < p; }

  // Index drawn from unnormalized nonnegative weights.
  std::size_t categorical(const std::vector<double>& weights);

  // In-place Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(next_below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::uint64_t state_;
};

// Stateless mix of a seed and a stream index; used for counter-based
// per-thread / per-iteration seeding so parallel order never matters.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

// FNV-1a over a string, for deterministic hash-based split assignment.
std::uint64_t fnv1a(const std::string& s);

}  // namespace powercomm
