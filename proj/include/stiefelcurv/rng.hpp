#pragma once

#include <cstdint>
#include <cmath>

namespace stcurv {

// Counter-based 64-bit generator (splitmix64 mix of seed + counter), so a
// stream is a pure function of (seed, index) and safe to shard.
class Rng {
 public:
  explicit Rng(uint64_t seed) : seed_(seed) {}

  uint64_t next_u64() {
    uint64_t z = seed_ + 0x9e3779b97f4a7c15ull * (++counter_);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

  // [-1, 1) scaled uniform
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform(), u2 = uniform();
    while (u1 <= 1e-300) u1 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  uint64_t seed_;
  uint64_t counter_ = 0;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace stcurv
