#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

namespace divapport {

inline constexpr double kDefaultTolerance = 1e-9;

/// Default nudge applied before rounding closed-form inverses: 2^-33.
inline constexpr double kDefaultNudge = 0x1p-33;

/// Relative fuzzy comparison of reals.
///
/// Two values are identified when |x - y| <= tolerance * max(|x|, |y|), so the
/// relation is unchanged when all votes are rescaled by a common factor. Zero
/// is only fuzzy-equal to zero.
struct Fuzzy {
  double tolerance = kDefaultTolerance;

  bool eq(double x, double y) const {
    return std::abs(x - y) <= tolerance * std::max(std::abs(x), std::abs(y));
  }
  bool lt(double x, double y) const { return x < y && !eq(x, y); }
  bool le(double x, double y) const { return x <= y || eq(x, y); }
};

/// Reads the default tolerance from DIVAPPORT_TOLERANCE when set and valid.
inline Fuzzy fuzzy_from_env() {
  Fuzzy fuzzy;
  if (const char* raw = std::getenv("DIVAPPORT_TOLERANCE"); raw != nullptr) {
    char* end = nullptr;
    double value = std::strtod(raw, &end);
    if (end != raw && *end == '\0' && value >= 0.0 && std::isfinite(value)) {
      fuzzy.tolerance = value;
    }
  }
  return fuzzy;
}

// Floors and ceilings of closed-form inverses. The argument is pushed away
// from the rounding direction by nudge * max(1, |y|), which absorbs rounding
// error of the inverse when the exact value is integral.
inline long long nudged_floor(double y, double nudge = kDefaultNudge) {
  return static_cast<long long>(std::floor(y + nudge * std::max(1.0, std::abs(y))));
}

inline long long nudged_ceil(double y, double nudge = kDefaultNudge) {
  return static_cast<long long>(std::ceil(y - nudge * std::max(1.0, std::abs(y))));
}

}  // namespace divapport
