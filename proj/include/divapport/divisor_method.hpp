#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "divapport/error.hpp"

namespace divapport {

/// Linear envelope alpha*x + beta_lo <= delta(x) <= alpha*x + beta_hi on x >= 0.
struct Sandwich {
  double alpha = 1.0;
  double beta_lo = 0.0;
  double beta_hi = 0.0;
};

/// Power-mean signpost families with a closed-form inverse.
enum class PowerMean { minus_infinity, minus_one, zero, one, two, plus_infinity };

namespace detail {

inline std::string format_number(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, ptr);
}

inline double parse_number(std::string_view text, std::string_view context) {
  double value = 0.0;
  std::string copy(text);
  if (copy == "inf" || copy == "+inf") return std::numeric_limits<double>::infinity();
  if (copy == "-inf") return -std::numeric_limits<double>::infinity();
  const char* first = copy.data();
  const char* last = copy.data() + copy.size();
  if (!copy.empty() && copy.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || copy.empty()) {
    throw Error(ErrorCode::invalid_argument,
                "cannot parse number '" + copy + "' in " + std::string(context));
  }
  return value;
}

}  // namespace detail

/// A divisor sequence d_j together with its continuous continuation delta,
/// the constant-time inverse and the linear sandwich used to bound a*.
///
/// Instances are immutable; every member function is pure.
class DivisorMethod {
 public:
  enum class Kind { linear, power_mean, modified_sainte_lague };

  /// d_j = alpha*j + beta. Requires alpha > 0 and beta >= 0.
  static DivisorMethod linear(double alpha, double beta, std::string name = {}) {
    if (!(alpha > 0.0) || !std::isfinite(alpha) || !(beta >= 0.0) || !std::isfinite(beta)) {
      throw Error(ErrorCode::invalid_argument,
                  "linear divisor method needs alpha > 0 and beta >= 0");
    }
    DivisorMethod m;
    m.kind_ = Kind::linear;
    m.alpha_ = alpha;
    m.beta_ = beta;
    // beta_lo is clamped to alpha when the intercept exceeds the slope.
    m.sandwich_ = Sandwich{alpha, std::min(beta, alpha), beta};
    m.name_ = name.empty()
                  ? "linear:" + detail::format_number(alpha) + "," + detail::format_number(beta)
                  : std::move(name);
    return m;
  }

  /// Stationary signposts s(n) = n - 1 + r, i.e. d_j = j + r.
  static DivisorMethod stationary(double r) {
    if (!(r >= 0.0 && r <= 1.0)) {
      throw Error(ErrorCode::invalid_argument, "stationary parameter must lie in [0, 1]");
    }
    return linear(1.0, r, "stationary:" + detail::format_number(r));
  }

  /// Power-mean signposts shifted so that d_j = s_p(j + 1).
  static DivisorMethod power_mean(PowerMean p, std::string name = {}) {
    DivisorMethod m;
    m.kind_ = Kind::power_mean;
    m.power_ = p;
    m.alpha_ = 1.0;
    switch (p) {
      case PowerMean::minus_infinity: m.beta_ = 0.0; m.sandwich_ = {1.0, 0.0, 0.0}; break;
      case PowerMean::minus_one: m.beta_ = 0.25; m.sandwich_ = {1.0, 0.0, 0.5}; break;
      case PowerMean::zero: m.beta_ = 0.25; m.sandwich_ = {1.0, 0.0, 0.5}; break;
      case PowerMean::one: m.beta_ = 0.5; m.sandwich_ = {1.0, 0.5, 0.5}; break;
      case PowerMean::two:
        m.sandwich_ = {1.0, 0.5, std::sqrt(0.5)};
        m.beta_ = 0.5 * (m.sandwich_.beta_lo + m.sandwich_.beta_hi);
        break;
      case PowerMean::plus_infinity: m.beta_ = 1.0; m.sandwich_ = {1.0, 1.0, 1.0}; break;
    }
    m.name_ = name.empty() ? "power-mean:" + power_label(p) : std::move(name);
    return m;
  }

  /// 1.4, 3, 5, 7, ...
  static DivisorMethod modified_sainte_lague() {
    DivisorMethod m;
    m.kind_ = Kind::modified_sainte_lague;
    m.alpha_ = 2.0;
    m.sandwich_ = {2.0, 1.0, 1.4};
    m.beta_ = 1.2;
    m.name_ = "modified-sainte-lague";
    return m;
  }

  static DivisorMethod smallest_divisors() { return linear(1.0, 0.0, "smallest-divisors"); }
  static DivisorMethod greatest_divisors() { return linear(1.0, 1.0, "greatest-divisors"); }
  static DivisorMethod sainte_lague() { return linear(2.0, 1.0, "sainte-lague"); }
  static DivisorMethod equal_proportions() {
    return power_mean(PowerMean::zero, "equal-proportions");
  }
  static DivisorMethod harmonic_mean() {
    return power_mean(PowerMean::minus_one, "harmonic-mean");
  }
  static DivisorMethod imperiali() { return linear(1.0, 2.0, "imperiali"); }
  static DivisorMethod danish() { return linear(3.0, 1.0, "danish"); }

  const std::string& name() const noexcept { return name_; }
  Kind kind() const noexcept { return kind_; }
  PowerMean power() const noexcept { return power_; }

  /// True when d_j = alpha*j + beta exactly.
  bool exactly_linear() const noexcept {
    if (kind_ == Kind::linear) return true;
    if (kind_ == Kind::power_mean) {
      return power_ == PowerMean::minus_infinity || power_ == PowerMean::one ||
             power_ == PowerMean::plus_infinity;
    }
    return false;
  }

  Sandwich sandwich() const noexcept { return sandwich_; }

  /// Intercept used by the jump-and-step estimator: the exact intercept of
  /// linear sequences, otherwise the midpoint of the sandwich.
  double estimator_intercept() const noexcept { return beta_; }

  double divisor(std::uint64_t j) const { return delta(static_cast<double>(j)); }

  double d0() const { return delta(0.0); }

  double delta(double x) const {
    switch (kind_) {
      case Kind::linear:
        return alpha_ * x + beta_;
      case Kind::modified_sainte_lague:
        return x < 1.0 ? 1.6 * x + 1.4 : 2.0 * x + 1.0;
      case Kind::power_mean:
        switch (power_) {
          case PowerMean::minus_infinity: return x;
          case PowerMean::minus_one: return 2.0 * x * (x + 1.0) / (2.0 * x + 1.0);
          case PowerMean::zero: return std::sqrt(x * (x + 1.0));
          case PowerMean::one: return x + 0.5;
          case PowerMean::two: return std::sqrt(x * x + x + 0.5);
          case PowerMean::plus_infinity: return x + 1.0;
        }
    }
    return 0.0;
  }

  /// Inverse of delta on [d_0, inf); below d_0 the clamped linear continuation
  /// max((y - beta_hi) / alpha, -1), which lies in [-1, 0).
  double delta_inv(double y) const {
    switch (kind_) {
      case Kind::linear:
        return std::max((y - beta_) / alpha_, -1.0);
      case Kind::modified_sainte_lague:
        return y < 3.0 ? std::max((y - 1.4) / 1.6, -1.0) : (y - 1.0) / 2.0;
      case Kind::power_mean:
        break;
    }
    switch (power_) {
      case PowerMean::minus_infinity: return std::max(y, -1.0);
      case PowerMean::one: return std::max(y - 0.5, -1.0);
      case PowerMean::plus_infinity: return std::max(y - 1.0, -1.0);
      case PowerMean::zero:
        if (y < 0.0) return below_d0(y);
        // (sqrt(1 + 4y^2) - 1) / 2 without cancellation
        return 2.0 * y * y / (1.0 + std::sqrt(1.0 + 4.0 * y * y));
      case PowerMean::minus_one:
        if (y < 0.0) return below_d0(y);
        if (y >= 1.0) return 0.5 * ((y - 1.0) + std::sqrt(y * y + 1.0));
        return y / (std::sqrt(y * y + 1.0) + 1.0 - y);
      case PowerMean::two: {
        if (y < sandwich_.beta_hi) return below_d0(y);
        // (sqrt(4y^2 - 1) - 1) / 2 without cancellation
        return (2.0 * y * y - 1.0) / (1.0 + std::sqrt(4.0 * y * y - 1.0));
      }
    }
    return -1.0;
  }

  static std::string power_label(PowerMean p) {
    switch (p) {
      case PowerMean::minus_infinity: return "-inf";
      case PowerMean::minus_one: return "-1";
      case PowerMean::zero: return "0";
      case PowerMean::one: return "1";
      case PowerMean::two: return "2";
      case PowerMean::plus_infinity: return "inf";
    }
    return "?";
  }

 private:
  DivisorMethod() = default;

  double below_d0(double y) const {
    return std::min(std::max((y - sandwich_.beta_hi) / sandwich_.alpha, -1.0),
                    -std::numeric_limits<double>::min());
  }

  Kind kind_ = Kind::linear;
  PowerMean power_ = PowerMean::one;
  double alpha_ = 1.0;
  double beta_ = 0.0;
  Sandwich sandwich_{};
  std::string name_;
};

/// The eight methods of the common-methods table, in table order.
inline std::vector<DivisorMethod> standard_methods() {
  return {DivisorMethod::smallest_divisors(), DivisorMethod::greatest_divisors(),
          DivisorMethod::sainte_lague(),      DivisorMethod::modified_sainte_lague(),
          DivisorMethod::equal_proportions(), DivisorMethod::harmonic_mean(),
          DivisorMethod::imperiali(),         DivisorMethod::danish()};
}

/// Parses a canonical method name such as `sainte-lague`, `stationary:0.3`,
/// `linear:1,0.75` or `power-mean:-inf`.
inline DivisorMethod parse_method(std::string_view text) {
  for (auto& m : standard_methods()) {
    if (m.name() == text) return m;
  }
  auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw Error(ErrorCode::invalid_argument, "unknown divisor method '" + std::string(text) + "'");
  }
  std::string_view head = text.substr(0, colon);
  std::string_view args = text.substr(colon + 1);
  if (head == "stationary") {
    return DivisorMethod::stationary(detail::parse_number(args, "stationary"));
  }
  if (head == "linear") {
    auto comma = args.find(',');
    if (comma == std::string_view::npos) {
      throw Error(ErrorCode::invalid_argument, "linear method needs '<alpha>,<beta>'");
    }
    return DivisorMethod::linear(detail::parse_number(args.substr(0, comma), "linear"),
                                 detail::parse_number(args.substr(comma + 1), "linear"));
  }
  if (head == "power-mean") {
    double p = detail::parse_number(args, "power-mean");
    if (p == -std::numeric_limits<double>::infinity()) {
      return DivisorMethod::power_mean(PowerMean::minus_infinity);
    }
    if (p == std::numeric_limits<double>::infinity()) {
      return DivisorMethod::power_mean(PowerMean::plus_infinity);
    }
    if (p == -1.0) return DivisorMethod::power_mean(PowerMean::minus_one);
    if (p == 0.0) return DivisorMethod::power_mean(PowerMean::zero);
    if (p == 1.0) return DivisorMethod::power_mean(PowerMean::one);
    if (p == 2.0) return DivisorMethod::power_mean(PowerMean::two);
    throw Error(ErrorCode::invalid_argument,
                "power-mean exponent must be one of -inf, -1, 0, 1, 2, inf");
  }
  throw Error(ErrorCode::invalid_argument, "unknown divisor method '" + std::string(text) + "'");
}

}  // namespace divapport
