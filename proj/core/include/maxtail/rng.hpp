#pragma once

#include <cstdint>

namespace maxtail {

// Counter-style splitmix64 generator.  Cheap to construct, so simulations
// make one fresh stream per trial instead of sharing state across threads;
// that is what keeps results independent of the worker count.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
  }

  // Uniform on (0, 1]: 53 random bits, never exactly zero, so values can be
  // passed straight to log() or used as survival probabilities.
  double next_unit() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

// Decorrelated stream for one trial of a seeded experiment.  The double mix
// spreads (seed, trial) pairs far apart in the splitmix64 state orbit.
inline SplitMix64 trial_stream(std::uint64_t seed, std::uint64_t trial) {
  return SplitMix64(SplitMix64::mix(seed ^ SplitMix64::mix(trial + 1)));
}

}  // namespace maxtail
