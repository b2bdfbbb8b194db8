#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "divapport/core.hpp"

namespace divapport {

enum class StepStrategy { scan, heap };

/// delta_a is the signed seat surplus sum(s_i) - k right after the jump;
/// steps counts the single-seat corrections that follow.
struct JumpStepStats {
  std::int64_t delta_a = 0;
  std::uint64_t steps = 0;
  double estimate = 0.0;
};

struct JumpStepResult {
  Allocation allocation;
  std::vector<std::uint64_t> seats;
  JumpStepStats stats;
};

/// Recommended (0 <= beta/alpha <= 1) resp. universal estimator for a*:
///   alpha/V * (k + n*(beta/alpha - 1/2))   or   alpha/V * (k + n*floor(beta/alpha)).
inline double estimate_a(double alpha, double beta, double vote_total, std::size_t n,
                         std::uint64_t k) {
  const double ratio = beta / alpha;
  const double dn = static_cast<double>(n);
  const double dk = static_cast<double>(k);
  const double seats = (ratio >= 0.0 && ratio <= 1.0) ? dk + dn * (ratio - 0.5)
                                                      : dk + dn * std::floor(ratio);
  return alpha / vote_total * seats;
}

inline double estimate_a(const DivisorMethod& method, std::span<const double> votes,
                         std::uint64_t k) {
  const Sandwich sw = method.sandwich();
  if (!(sw.alpha > 0.0) || !std::isfinite(sw.alpha)) {
    throw Error(ErrorCode::estimator_unavailable,
                "method '" + method.name() + "' has no linear parameters");
  }
  const double total = std::accumulate(votes.begin(), votes.end(), 0.0);
  return estimate_a(sw.alpha, method.estimator_intercept(), total, votes.size(), k);
}

namespace detail {

// Step phase: moves sum(seats) to k one seat at a time.
inline std::uint64_t step_to_house_size(const DivisorMethod& method,
                                        std::span<const double> votes,
                                        std::vector<std::uint64_t>& seats, std::int64_t surplus,
                                        StepStrategy strategy) {
  const std::size_t n = votes.size();
  std::uint64_t steps = 0;
  if (surplus == 0) return 0;

  struct Entry {
    double value;
    std::uint32_t party;
  };

  if (surplus < 0) {
    // Add: smallest next quotient d_{s_i}/v_i (= largest v_i/d_{s_i}).
    auto next = [&](std::size_t i) { return method.divisor(seats[i]) / votes[i]; };
    if (strategy == StepStrategy::scan) {
      for (; surplus < 0; ++surplus, ++steps) {
        std::size_t best = 0;
        double best_value = next(0);
        for (std::size_t i = 1; i < n; ++i) {
          const double value = next(i);
          if (value < best_value) {
            best_value = value;
            best = i;
          }
        }
        ++seats[best];
      }
    } else {
      auto after = [](const Entry& a, const Entry& b) {
        return a.value != b.value ? a.value > b.value : a.party > b.party;
      };
      std::vector<Entry> heap(n);
      for (std::size_t i = 0; i < n; ++i) heap[i] = {next(i), static_cast<std::uint32_t>(i)};
      std::make_heap(heap.begin(), heap.end(), after);
      for (; surplus < 0; ++surplus, ++steps) {
        std::pop_heap(heap.begin(), heap.end(), after);
        const auto party = heap.back().party;
        ++seats[party];
        heap.back() = {next(party), party};
        std::push_heap(heap.begin(), heap.end(), after);
      }
    }
    return steps;
  }

  // Remove: largest current quotient d_{s_i-1}/v_i (= smallest v_i/d_{s_i-1}),
  // parties without seats excluded.
  auto current = [&](std::size_t i) { return method.divisor(seats[i] - 1) / votes[i]; };
  if (strategy == StepStrategy::scan) {
    for (; surplus > 0; --surplus, ++steps) {
      std::size_t best = n;
      double best_value = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (seats[i] == 0) continue;
        const double value = current(i);
        if (best == n || value > best_value) {
          best_value = value;
          best = i;
        }
      }
      --seats[best];
    }
  } else {
    auto before = [](const Entry& a, const Entry& b) {
      return a.value != b.value ? a.value < b.value : a.party > b.party;
    };
    std::vector<Entry> heap;
    heap.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (seats[i] > 0) heap.push_back({current(i), static_cast<std::uint32_t>(i)});
    }
    std::make_heap(heap.begin(), heap.end(), before);
    for (; surplus > 0; --surplus, ++steps) {
      std::pop_heap(heap.begin(), heap.end(), before);
      const auto party = heap.back().party;
      --seats[party];
      if (seats[party] > 0) {
        heap.back() = {current(party), party};
        std::push_heap(heap.begin(), heap.end(), before);
      } else {
        heap.pop_back();
      }
    }
  }
  return steps;
}

}  // namespace detail

/// Jump-and-step: jumps to s_i = floor(delta_inv(v_i * a)) + 1 for an
/// estimate a of a*, then corrects one seat at a time until sum(s) = k.
/// Passing an explicit estimate bypasses the built-in estimator.
inline JumpStepResult jump_and_step(const DivisorMethod& method, std::span<const double> votes,
                                    std::uint64_t k, StepStrategy strategy = StepStrategy::heap,
                                    std::optional<double> estimate = std::nullopt,
                                    const Fuzzy& fuzzy = {}) {
  validate_instance(votes, k);
  JumpStepResult out;
  const double a = estimate ? *estimate : estimate_a(method, votes, k);
  out.stats.estimate = a;
  out.seats.resize(votes.size());
  std::int64_t total = 0;
  for (std::size_t i = 0; i < votes.size(); ++i) {
    double below = std::floor(method.delta_inv(votes[i] * a)) + 1.0;
    // Quotients with j >= k lie above a*, so arbitrary estimates may be capped.
    if (estimate) below = std::min(below, static_cast<double>(k));
    const auto s = below > 0.0 ? static_cast<std::uint64_t>(below) : std::uint64_t{0};
    out.seats[i] = s;
    total += static_cast<std::int64_t>(s);
  }
  out.stats.delta_a = total - static_cast<std::int64_t>(k);
  out.stats.steps =
      detail::step_to_house_size(method, votes, out.seats, out.stats.delta_a, strategy);
  const double astar = astar_from_seats(method, votes, out.seats);
  out.allocation = finalize_allocation(method, votes, k, astar, fuzzy);
  return out;
}

}  // namespace divapport
