#pragma once

#include <cstdint>

namespace divapport {

/// SplitMix64 generator.
///
/// state += 0x9E3779B97F4A7C15, then the output is the state mixed by
///   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   z =  z ^ (z >> 31)
/// Unit doubles take the top 53 bits: (z >> 11) * 2^-53, in [0, 1).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  double unit() noexcept { return static_cast<double>(next() >> 11) * 0x1p-53; }

  /// Uniform integer in [0, bound) by multiply-shift (Lemire, without rejection).
  std::uint64_t below(std::uint64_t bound) noexcept {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(next()) * bound) >> 64);
  }

 private:
  std::uint64_t state_;
};

/// Independent seed for sub-stream `stream` of `base`: the first output of
/// SplitMix64(base ^ (stream * 0xD1B54A32D192ED03)).
inline std::uint64_t split_seed(std::uint64_t base, std::uint64_t stream) noexcept {
  SplitMix64 gen(base ^ (stream * 0xD1B54A32D192ED03ULL));
  return gen.next();
}

}  // namespace divapport
