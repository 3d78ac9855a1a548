#pragma once

#include <cstdint>

namespace corruptlab {

/// Counter-based splittable generator.
///
/// Stream `key` yields outputs mix(key + i·γ) for i = 1, 2, ... where γ is the
/// 64-bit golden-ratio increment and mix is the SplitMix64 finalizer
/// (Stafford variant 13). This is exactly SplitMix64 seeded with `key`, so the
/// sequence depends only on the key and the counter and is identical on every
/// platform. Child streams are keyed by key ⊕ mix((index + 1)·γ), which makes trial i
/// of an experiment reproducible regardless of how trials are scheduled.
///
/// Uniform doubles take the top 53 bits: (x >> 11)·2⁻⁵³ ∈ [0, 1).
class Rng {
 public:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  explicit constexpr Rng(std::uint64_t key) noexcept : key_(key) {}

  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  constexpr std::uint64_t next() noexcept {
    ++counter_;
    return mix(key_ + counter_ * kGamma);
  }

  constexpr double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  constexpr Rng split(std::uint64_t index) const noexcept { return Rng(key_ ^ mix((index + 1) * kGamma)); }

  constexpr std::uint64_t key() const noexcept { return key_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace corruptlab
