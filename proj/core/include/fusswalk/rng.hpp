#pragma once

#include <cstdint>

namespace fusswalk {

/// Counter-based deterministic random stream. The n-th draw is a pure
/// function of (seed, n), so identical seeds replay identical trajectories
/// and distinct streams can run on distinct threads with no shared state.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed = 0) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t counter() const { return counter_; }

  /// Next 64 uniform bits (splitmix64 of the stream counter).
  std::uint64_t next() {
    std::uint64_t z = seed_ + (++counter_) * 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform draw from [0, bound). Rejection sampling keeps it exactly
  /// uniform; the statistical tests depend on that.
  std::uint64_t uniform(std::uint64_t bound) {
    const std::uint64_t limit = bound * (~0ull / bound);
    std::uint64_t z;
    do {
      z = next();
    } while (z >= limit);
    return z % bound;
  }

  bool coin() { return (next() & 1ull) != 0; }

  /// Uniform double in [0, 1).
  double uniform_real() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace fusswalk
