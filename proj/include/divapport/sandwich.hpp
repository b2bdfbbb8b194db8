#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "divapport/core.hpp"
#include "divapport/selection.hpp"

namespace divapport {

/// Intermediate state of SandwichSelect: the cutoff x_bar, the contributing
/// parties I (v_i > d_0 / x_bar), the bounds a_lo <= a* <= a_hi and the
/// materialized candidates A_hat = A ∩ [a_lo, a_hi] with the rank k_hat of a*
/// inside it.
struct CandidateWindow {
  double x_bar = 0.0;
  double eps = 0.0;
  std::size_t index_set_size = 0;
  double v_sum = 0.0;
  double a_lo = 0.0;
  double a_hi = 0.0;
  std::vector<Candidate> candidates;
  std::int64_t k_hat = 0;
  std::uint64_t excluded = 0;  // sum of j_lo over I
  double nudge = kDefaultNudge;
};

struct SandwichStats {
  std::size_t window_size = 0;
  std::size_t index_set_size = 0;
  double a_lo = 0.0;
  double a_hi = 0.0;
  std::int64_t k_hat = 0;
  bool widened = false;
};

struct SandwichResult {
  Allocation allocation;
  SandwichStats stats;
};

inline CandidateWindow compute_window(const DivisorMethod& method, std::span<const double> votes,
                                      std::uint64_t k, double nudge = kDefaultNudge) {
  validate_instance(votes, k);
  CandidateWindow w;
  w.nudge = nudge;
  const Sandwich sw = method.sandwich();

  const double v_max = *std::max_element(votes.begin(), votes.end());
  const double d_prev = method.divisor(k - 1);
  const double d_k = method.divisor(k);
  // Midpoint of the open interval (0, (d_k - d_{k-1}) / v_max).
  w.eps = (d_k - d_prev) / (2.0 * v_max);
  w.x_bar = d_prev / v_max + w.eps;

  const double threshold = method.d0() / w.x_bar;
  std::size_t size = 0;
  double v_sum = 0.0;
  for (double v : votes) {
    if (v > threshold) {
      ++size;
      v_sum += v;
    }
  }
  w.index_set_size = size;
  w.v_sum = v_sum;
  const double dk = static_cast<double>(k);
  const double di = static_cast<double>(size);
  w.a_lo = std::max(0.0, (sw.alpha * dk - (sw.alpha - sw.beta_lo) * di) / v_sum);
  w.a_hi = (sw.alpha * dk + sw.beta_hi * di) / v_sum;

  w.candidates.reserve(
      static_cast<std::size_t>(2.0 * (1.0 + (sw.beta_hi - sw.beta_lo) / sw.alpha) * di) +
      2 * size + 1);
  std::int64_t k_hat = static_cast<std::int64_t>(k);
  const long long last = static_cast<long long>(k) - 1;
  for (std::size_t i = 0; i < votes.size(); ++i) {
    const double v = votes[i];
    if (!(v > threshold)) continue;
    const long long j_lo = std::max(0LL, nudged_ceil(method.delta_inv(v * w.a_lo), nudge));
    // j >= k would put the quotient above d_{k-1}/v_max >= a*.
    const long long j_hi = std::min(nudged_floor(method.delta_inv(v * w.a_hi), nudge), last);
    for (long long j = j_lo; j <= j_hi; ++j) {
      const auto idx = static_cast<std::uint64_t>(j);
      w.candidates.push_back({method.divisor(idx) / v, static_cast<std::uint32_t>(i), idx});
    }
    k_hat -= j_lo;
    w.excluded += static_cast<std::uint64_t>(j_lo);
  }
  w.k_hat = k_hat;
  return w;
}

/// SandwichSelect: a* is the k_hat-th smallest element of the candidate
/// window. A window whose k_hat falls outside [1, |A_hat|] signals rounding
/// trouble; it is rebuilt once with a 4x nudge before giving up.
inline SandwichResult sandwich_select(const DivisorMethod& method, std::span<const double> votes,
                                      std::uint64_t k,
                                      SelectBackend backend = SelectBackend::quick,
                                      std::uint64_t seed = 0x5EEDULL, const Fuzzy& fuzzy = {}) {
  SandwichResult out;
  CandidateWindow w = compute_window(method, votes, k);
  auto usable = [](const CandidateWindow& cw) {
    return cw.k_hat >= 1 && static_cast<std::uint64_t>(cw.k_hat) <= cw.candidates.size();
  };
  if (!usable(w)) {
    w = compute_window(method, votes, k, 4.0 * kDefaultNudge);
    out.stats.widened = true;
    if (!usable(w)) {
      throw Error(ErrorCode::inconsistent_rank,
                  "candidate window of size " + std::to_string(w.candidates.size()) +
                      " cannot hold rank " + std::to_string(w.k_hat));
    }
  }
  out.stats.window_size = w.candidates.size();
  out.stats.index_set_size = w.index_set_size;
  out.stats.a_lo = w.a_lo;
  out.stats.a_hi = w.a_hi;
  out.stats.k_hat = w.k_hat;

  const Candidate& pick =
      select(backend, std::span<Candidate>(w.candidates), static_cast<std::size_t>(w.k_hat), seed,
             &Candidate::value);
  out.allocation = finalize_allocation(method, votes, k, pick.value, fuzzy);
  return out;
}

}  // namespace divapport
