// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>

namespace choquet {

// SplitMix64 mixing step; used to decorrelate seeds and derive substreams.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Random stream with counter-based substream derivation: the substream for a
// given index is a pure function of (base seed, index), independent of draw
// history, thread assignment, or evaluation order.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed)
      : base_(seed), engine_(splitmix64(seed)) {}

  RngStream substream(std::uint64_t index) const {
    return RngStream(splitmix64(base_) ^
                     splitmix64(index * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL));
  }

  std::uint64_t base_seed() const { return base_; }

  // Uniform draw on the open interval (0, 1); never returns an endpoint.
  double uniform01() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1p-53;
  }

  double normal() { return normal_(engine_); }

  std::uint64_t raw() { return engine_(); }

 private:
  std::uint64_t base_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace choquet
