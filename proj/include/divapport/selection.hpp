#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>

#include "divapport/error.hpp"
#include "divapport/random.hpp"

namespace divapport {

enum class SelectBackend { quick, mom };

inline SelectBackend parse_select_backend(std::string_view text) {
  if (text == "quick") return SelectBackend::quick;
  if (text == "mom") return SelectBackend::mom;
  throw Error(ErrorCode::invalid_argument, "selection backend must be 'quick' or 'mom'");
}

struct SelectStats {
  std::uint64_t comparisons = 0;
};

namespace detail {

template <class T, class Key>
struct Selector {
  std::span<T> buf;
  Key key;
  SelectStats* stats;

  bool less(const T& a, const T& b) {
    if (stats) ++stats->comparisons;
    return std::invoke(key, a) < std::invoke(key, b);
  }

  // Dijkstra three-way partition of [lo, hi) around the value of buf[p].
  // Returns [lt, gt): the block equal to the pivot.
  std::pair<std::size_t, std::size_t> partition(std::size_t lo, std::size_t hi, std::size_t p) {
    std::swap(buf[lo], buf[p]);
    const T pivot = buf[lo];
    std::size_t lt = lo, i = lo + 1, gt = hi;
    while (i < gt) {
      if (less(buf[i], pivot)) {
        std::swap(buf[lt++], buf[i++]);
      } else if (less(pivot, buf[i])) {
        std::swap(buf[i], buf[--gt]);
      } else {
        ++i;
      }
    }
    return {lt, gt};
  }

  void insertion_sort(std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo + 1; i < hi; ++i) {
      for (std::size_t j = i; j > lo && less(buf[j], buf[j - 1]); --j)
        std::swap(buf[j], buf[j - 1]);
    }
  }

  void quick(std::size_t lo, std::size_t hi, std::size_t target, SplitMix64& rng) {
    while (hi - lo > 1) {
      auto [lt, gt] = partition(lo, hi, lo + rng.below(hi - lo));
      if (target < lt) {
        hi = lt;
      } else if (target >= gt) {
        lo = gt;
      } else {
        return;
      }
    }
  }

  void median_of_medians(std::size_t lo, std::size_t hi, std::size_t target) {
    while (hi - lo > 5) {
      // Group medians are gathered at the front of the range.
      std::size_t groups = 0;
      for (std::size_t g = lo; g < hi; g += 5) {
        const std::size_t end = std::min(g + 5, hi);
        insertion_sort(g, end);
        std::swap(buf[lo + groups], buf[g + (end - g - 1) / 2]);
        ++groups;
      }
      const std::size_t mid = lo + (groups - 1) / 2;
      median_of_medians(lo, lo + groups, mid);
      auto [lt, gt] = partition(lo, hi, mid);
      if (target < lt) {
        hi = lt;
      } else if (target >= gt) {
        lo = gt;
      } else {
        return;
      }
    }
    insertion_sort(lo, hi);
  }
};

inline void check_rank(std::size_t size, std::size_t rank) {
  if (rank < 1 || rank > size) {
    throw Error(ErrorCode::rank_out_of_range,
                "rank " + std::to_string(rank) + " outside [1, " + std::to_string(size) + "]");
  }
}

}  // namespace detail

/// Randomized Quickselect with three-way partitioning.
///
/// Returns the rank-th smallest element (1-based, duplicates counted) by key.
/// The buffer is permuted so that the result sits at position rank - 1.
template <class T, class Key = std::identity>
T& quickselect(std::span<T> buf, std::size_t rank, std::uint64_t seed, Key key = {},
               SelectStats* stats = nullptr) {
  detail::check_rank(buf.size(), rank);
  SplitMix64 rng(seed);
  detail::Selector<T, Key> sel{buf, key, stats};
  sel.quick(0, buf.size(), rank - 1, rng);
  return buf[rank - 1];
}

/// Deterministic median-of-medians selection (groups of five), worst-case
/// linear number of comparisons. Same contract as quickselect.
template <class T, class Key = std::identity>
T& mom_select(std::span<T> buf, std::size_t rank, Key key = {}, SelectStats* stats = nullptr) {
  detail::check_rank(buf.size(), rank);
  detail::Selector<T, Key> sel{buf, key, stats};
  sel.median_of_medians(0, buf.size(), rank - 1);
  return buf[rank - 1];
}

template <class T, class Key = std::identity>
T& select(SelectBackend backend, std::span<T> buf, std::size_t rank, std::uint64_t seed,
          Key key = {}, SelectStats* stats = nullptr) {
  if (backend == SelectBackend::mom) return mom_select(buf, rank, key, stats);
  return quickselect(buf, rank, seed, key, stats);
}

}  // namespace divapport
