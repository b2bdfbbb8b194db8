#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "divapport/core.hpp"
#include "divapport/divisor_method.hpp"
#include "divapport/error.hpp"
#include "divapport/random.hpp"

namespace divapport {

/// Vote distributions of the running-time experiments.
///
/// Draws use one SplitMix64 stream with u = unit() in [0, 1):
///   uniform(lo, hi)      lo + (hi - lo) * u
///   exponential(mean)    -mean * log(1 - u)
///   poisson(mean)        Knuth's product method, zero draws rejected
///   pareto(shape, scale) scale / (1 - u)^(1 / shape)
/// Any non-positive draw is discarded and redrawn.
struct VoteDistribution {
  enum class Kind { uniform, exponential, poisson, pareto };

  Kind kind = Kind::uniform;
  double first = 1.0;
  double second = 3.0;

  static VoteDistribution uniform(double lo = 1.0, double hi = 3.0) {
    if (!(lo >= 0.0 && hi > lo && std::isfinite(hi))) {
      throw Error(ErrorCode::invalid_argument, "uniform distribution needs 0 <= lo < hi");
    }
    return {Kind::uniform, lo, hi};
  }
  static VoteDistribution exponential(double mean = 2.0) {
    if (!(mean > 0.0 && std::isfinite(mean))) {
      throw Error(ErrorCode::invalid_argument, "exponential mean must be positive");
    }
    return {Kind::exponential, mean, 0.0};
  }
  static VoteDistribution poisson(double mean = 2.0) {
    if (!(mean > 0.0 && mean <= 500.0)) {
      throw Error(ErrorCode::invalid_argument, "poisson mean must lie in (0, 500]");
    }
    return {Kind::poisson, mean, 0.0};
  }
  static VoteDistribution pareto(double shape = 1.5, double scale = 1.0) {
    if (!(shape > 0.0 && scale > 0.0 && std::isfinite(shape) && std::isfinite(scale))) {
      throw Error(ErrorCode::invalid_argument, "pareto shape and scale must be positive");
    }
    return {Kind::pareto, shape, scale};
  }

  std::string name() const {
    using detail::format_number;
    switch (kind) {
      case Kind::uniform: return "uniform:" + format_number(first) + "," + format_number(second);
      case Kind::exponential: return "exponential:" + format_number(first);
      case Kind::poisson: return "poisson:" + format_number(first);
      case Kind::pareto: return "pareto:" + format_number(first) + "," + format_number(second);
    }
    return "?";
  }

  double draw(SplitMix64& rng) const {
    for (;;) {
      double value = 0.0;
      switch (kind) {
        case Kind::uniform:
          value = first + (second - first) * rng.unit();
          break;
        case Kind::exponential:
          value = -first * std::log1p(-rng.unit());
          break;
        case Kind::poisson: {
          const double limit = std::exp(-first);
          double product = rng.unit();
          std::uint64_t count = 0;
          while (product > limit) {
            ++count;
            product *= rng.unit();
          }
          value = static_cast<double>(count);
          break;
        }
        case Kind::pareto:
          value = second / std::pow(1.0 - rng.unit(), 1.0 / first);
          break;
      }
      if (value > 0.0 && std::isfinite(value)) return value;
    }
  }
};

/// Accepts `uniform`, `uniform:<lo>,<hi>`, `exponential[:<mean>]`,
/// `poisson[:<mean>]`, `pareto[:<shape>[,<scale>]]`.
inline VoteDistribution parse_distribution(std::string_view text) {
  using detail::parse_number;
  const auto colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  const std::string_view args =
      colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  auto split = [&](double& a, double& b) {
    const auto comma = args.find(',');
    a = parse_number(args.substr(0, comma), "distribution");
    if (comma != std::string_view::npos) b = parse_number(args.substr(comma + 1), "distribution");
  };
  if (head == "uniform") {
    double lo = 1.0, hi = 3.0;
    if (!args.empty()) {
      if (args.find(',') == std::string_view::npos) {
        throw Error(ErrorCode::invalid_argument, "uniform needs '<lo>,<hi>'");
      }
      split(lo, hi);
    }
    return VoteDistribution::uniform(lo, hi);
  }
  if (head == "exponential") {
    return VoteDistribution::exponential(args.empty() ? 2.0 : parse_number(args, "exponential"));
  }
  if (head == "poisson") {
    return VoteDistribution::poisson(args.empty() ? 2.0 : parse_number(args, "poisson"));
  }
  if (head == "pareto") {
    double shape = 1.5, scale = 1.0;
    if (!args.empty()) split(shape, scale);
    return VoteDistribution::pareto(shape, scale);
  }
  throw Error(ErrorCode::invalid_argument, "unknown distribution '" + std::string(text) + "'");
}

inline std::vector<VoteDistribution> standard_distributions() {
  return {VoteDistribution::uniform(), VoteDistribution::exponential(),
          VoteDistribution::poisson(), VoteDistribution::pareto()};
}

inline std::vector<double> gen_votes(const VoteDistribution& dist, std::size_t n,
                                     std::uint64_t seed) {
  if (n < 1) throw Error(ErrorCode::invalid_argument, "need at least one party");
  SplitMix64 rng(seed);
  std::vector<double> votes(n);
  for (auto& v : votes) v = dist.draw(rng);
  return votes;
}

/// Random instance with house size k = multiplier * n.
inline Instance gen_instance(const VoteDistribution& dist, std::size_t n, std::uint64_t multiplier,
                             std::uint64_t seed) {
  if (multiplier < 1) throw Error(ErrorCode::invalid_argument, "k multiplier must be >= 1");
  return {gen_votes(dist, n, seed), multiplier * n};
}

}  // namespace divapport
