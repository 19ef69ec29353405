#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace uavsim {

// Mixes a master seed with a stream label. Streams derived from the same
// master seed with different labels are statistically independent, so the
// drone strategy can consume randomness without perturbing the match.
std::uint64_t derive_seed(std::uint64_t master, std::string_view label);

// Seeded generator with the handful of draws the simulator needs. The
// conversions are written out rather than taken from <random> distributions
// so that streams are bit-identical across standard library vendors.
class Rng {
 public:
  Rng() : Rng(0) {}
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  Rng(std::uint64_t master, std::string_view label) : engine_(derive_seed(master, label)) {}

  std::uint64_t next_u64() { return engine_(); }
  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Uniform integer in [0, n); n must be positive.
  std::uint64_t below(std::uint64_t n);
  bool chance(double p) { return uniform() < p; }

  friend bool operator==(const Rng& a, const Rng& b) { return a.engine_ == b.engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace uavsim
