#pragma once

#include <cstdint>

namespace qcka {

// SplitMix64 finalizer; bijective with full avalanche.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Counter-based generator keyed on (seed, stream, pulse). Every pulse owns an
// independent draw sequence, so simulation results do not depend on the order
// pulses are visited or on the thread layout.
class PulseRng {
 public:
  PulseRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t pulse) noexcept
      : state_(mix64(mix64(seed ^ kSeedTag) + kGolden * (stream + 1)) ^
               mix64(pulse + kGolden)) {}

  std::uint64_t next_u64() noexcept {
    state_ += kGolden;
    return mix64(state_);
  }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  bool bernoulli(double p) noexcept { return uniform() < p; }

  std::uint8_t bit() noexcept { return static_cast<std::uint8_t>(next_u64() >> 63); }

 private:
  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
  static constexpr std::uint64_t kSeedTag = 0x51a7b2c3d4e5f607ULL;
  std::uint64_t state_;
};

}  // namespace qcka
