#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "divapport/divisor_method.hpp"
#include "divapport/error.hpp"
#include "divapport/fuzzy.hpp"

namespace divapport {

/// Vote vector and house size.
struct Instance {
  std::vector<double> votes;
  std::uint64_t house_size = 0;
};

/// One element d_j / v_i of the candidate multiset.
struct Candidate {
  double value = 0.0;
  std::uint32_t party = 0;
  std::uint64_t index = 0;
};

/// Symbolic representation of all valid seat assignments.
///
/// Every party i certainly receives undisputed[i] seats; the residual seats
/// go to distinct parties among those flagged in tied. A boundary group that
/// fits exactly into the remaining seats is folded into undisputed, so tie
/// flags are set iff the outcome is ambiguous (0 < residual < tied parties).
struct Allocation {
  std::vector<std::uint64_t> undisputed;
  std::vector<bool> tied;
  std::uint64_t residual = 0;
  double astar = 0.0;

  std::size_t tied_count() const {
    return static_cast<std::size_t>(std::count(tied.begin(), tied.end(), true));
  }

  std::uint64_t undisputed_total() const {
    std::uint64_t total = 0;
    for (auto s : undisputed) total += s;
    return total;
  }

  /// Same seats, ties and residual; a* is not compared.
  bool same_seats(const Allocation& other) const {
    return undisputed == other.undisputed && tied == other.tied && residual == other.residual;
  }
};

inline void validate_instance(std::span<const double> votes, std::uint64_t k) {
  if (votes.empty()) throw Error(ErrorCode::invalid_instance, "at least one party required");
  if (votes.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw Error(ErrorCode::invalid_instance, "too many parties");
  }
  for (std::size_t i = 0; i < votes.size(); ++i) {
    if (!(votes[i] > 0.0) || !std::isfinite(votes[i])) {
      throw Error(ErrorCode::invalid_instance,
                  "vote count of party " + std::to_string(i + 1) + " must be positive and finite");
    }
  }
  if (k < 1) throw Error(ErrorCode::invalid_instance, "house size must be at least 1");
}

/// Number of elements d_j / v_i of the candidate multiset that are <= x.
inline std::uint64_t rank(const DivisorMethod& method, std::span<const double> votes, double x,
                          double nudge = kDefaultNudge) {
  std::uint64_t total = 0;
  for (double v : votes) {
    long long below = nudged_floor(method.delta_inv(v * x), nudge) + 1;
    if (below > 0) total += static_cast<std::uint64_t>(below);
  }
  return total;
}

/// a* = max_i d_{s_i - 1} / v_i over parties holding at least one seat.
inline double astar_from_seats(const DivisorMethod& method, std::span<const double> votes,
                               std::span<const std::uint64_t> seats) {
  if (seats.size() != votes.size()) {
    throw Error(ErrorCode::invalid_argument, "seat and vote vectors differ in length");
  }
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < votes.size(); ++i) {
    if (seats[i] == 0) continue;
    best = std::max(best, method.divisor(seats[i] - 1) / votes[i]);
  }
  if (best == -std::numeric_limits<double>::infinity()) {
    throw Error(ErrorCode::invalid_argument, "no party holds a seat");
  }
  return best;
}

/// Derives the canonical tie report from a proportionality constant.
///
/// undisputed[i] counts the d_j / v_i fuzzy-below astar; party i is tied when
/// its next quotient fuzzy-equals astar. Theta(n).
inline Allocation finalize_allocation(const DivisorMethod& method, std::span<const double> votes,
                                      std::uint64_t k, double astar, const Fuzzy& fuzzy = {}) {
  Allocation out;
  out.astar = astar;
  out.undisputed.resize(votes.size());
  out.tied.resize(votes.size());
  std::uint64_t sum = 0;
  std::size_t ties = 0;
  for (std::size_t i = 0; i < votes.size(); ++i) {
    const double v = votes[i];
    long long guess = nudged_floor(method.delta_inv(v * astar)) + 1;
    std::uint64_t s = guess > 0 ? static_cast<std::uint64_t>(guess) : 0;
    while (s > 0 && !fuzzy.lt(method.divisor(s - 1) / v, astar)) --s;
    while (fuzzy.lt(method.divisor(s) / v, astar)) ++s;
    out.undisputed[i] = s;
    out.tied[i] = fuzzy.eq(method.divisor(s) / v, astar);
    sum += s;
    if (out.tied[i]) ++ties;
  }
  if (sum > k || k - sum > ties) {
    throw Error(ErrorCode::inconsistent_rank,
                "undisputed seats " + std::to_string(sum) + " and " + std::to_string(ties) +
                    " tied parties cannot fill house size " + std::to_string(k));
  }
  out.residual = k - sum;
  if (out.residual == ties || out.residual == 0) {
    for (std::size_t i = 0; i < votes.size(); ++i) {
      if (out.tied[i] && out.residual > 0) ++out.undisputed[i];
      out.tied[i] = false;
    }
    out.residual = 0;
  }
  return out;
}

/// Max-min check of every completion of the allocation.
///
/// Collects the "current" quotients d_{s-1}/v and "next" quotients d_s/v of
/// every party under every seat status it can take in some completion, and
/// requires max(current) <= min(next) up to fuzzy tolerance.
inline bool verify_allocation(const DivisorMethod& method, std::span<const double> votes,
                              std::uint64_t k, const Allocation& alloc, const Fuzzy& fuzzy = {}) {
  const std::size_t n = votes.size();
  if (alloc.undisputed.size() != n || alloc.tied.size() != n) return false;
  const std::size_t ties = alloc.tied_count();
  if (alloc.undisputed_total() + alloc.residual != k) return false;
  if (alloc.residual > ties) return false;

  const bool can_seat = alloc.residual > 0;
  const bool can_skip = alloc.residual < ties;
  double max_current = -std::numeric_limits<double>::infinity();
  double min_next = std::numeric_limits<double>::infinity();
  auto consider = [&](std::size_t i, std::uint64_t seats) {
    if (seats > 0) max_current = std::max(max_current, method.divisor(seats - 1) / votes[i]);
    min_next = std::min(min_next, method.divisor(seats) / votes[i]);
  };
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t base = alloc.undisputed[i];
    if (!alloc.tied[i]) {
      consider(i, base);
      continue;
    }
    if (can_seat) consider(i, base + 1);
    if (can_skip) consider(i, base);
  }
  return fuzzy.le(max_current, min_next);
}

/// Guard for the brute-force oracle: n * k candidates at most.
inline constexpr std::uint64_t kOracleLimit = 10'000'000;

/// Brute-force reference: materializes d_j / v_i for j < k, selects the kth
/// smallest and derives the allocation from it.
inline Allocation enumerate_oracle(const DivisorMethod& method, std::span<const double> votes,
                                   std::uint64_t k, const Fuzzy& fuzzy = {}) {
  validate_instance(votes, k);
  if (k > kOracleLimit / votes.size()) {
    throw Error(ErrorCode::instance_too_large,
                "oracle limited to n*k <= " + std::to_string(kOracleLimit));
  }
  std::vector<double> all;
  all.reserve(votes.size() * k);
  for (double v : votes) {
    for (std::uint64_t j = 0; j < k; ++j) all.push_back(method.divisor(j) / v);
  }
  auto kth = all.begin() + static_cast<std::ptrdiff_t>(k - 1);
  std::nth_element(all.begin(), kth, all.end());
  return finalize_allocation(method, votes, k, *kth, fuzzy);
}

}  // namespace divapport
