#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "divapport/core.hpp"

namespace divapport {

enum class IterativeStrategy { scan, heap };

struct IterativeStats {
  std::uint64_t comparisons = 0;  // argmin candidate evaluations (scan)
  std::uint64_t heap_builds = 0;  // elements heapified (heap)
  std::uint64_t heap_pops = 0;
  std::uint64_t heap_pushes = 0;
};

struct IterativeResult {
  Allocation allocation;
  std::vector<std::uint64_t> seats;  // the raw seat vector of the run
  IterativeStats stats;
};

namespace detail {

struct HeapEntry {
  double value;
  std::uint32_t party;
};

// std heaps are max-heaps; order so the top is the smallest value, lowest index.
inline bool heap_after(const HeapEntry& a, const HeapEntry& b) {
  if (a.value != b.value) return a.value > b.value;
  return a.party > b.party;
}

}  // namespace detail

/// Highest-averages method: awards the k seats one by one to the party with
/// the smallest next quotient d_{s_i} / v_i, lowest index first among equals.
inline IterativeResult iterative_apportion(const DivisorMethod& method,
                                           std::span<const double> votes, std::uint64_t k,
                                           IterativeStrategy strategy,
                                           const Fuzzy& fuzzy = {}) {
  validate_instance(votes, k);
  const std::size_t n = votes.size();
  IterativeResult out;
  out.seats.assign(n, 0);
  auto& seats = out.seats;

  if (strategy == IterativeStrategy::scan) {
    for (std::uint64_t seat = 0; seat < k; ++seat) {
      std::size_t best = 0;
      double best_value = method.divisor(seats[0]) / votes[0];
      for (std::size_t i = 1; i < n; ++i) {
        const double value = method.divisor(seats[i]) / votes[i];
        if (value < best_value) {
          best_value = value;
          best = i;
        }
      }
      out.stats.comparisons += n;
      ++seats[best];
    }
  } else {
    std::vector<detail::HeapEntry> heap(n);
    for (std::size_t i = 0; i < n; ++i) {
      heap[i] = {method.divisor(0) / votes[i], static_cast<std::uint32_t>(i)};
    }
    std::make_heap(heap.begin(), heap.end(), detail::heap_after);
    out.stats.heap_builds = n;
    for (std::uint64_t seat = 0; seat < k; ++seat) {
      std::pop_heap(heap.begin(), heap.end(), detail::heap_after);
      const std::uint32_t party = heap.back().party;
      ++seats[party];
      heap.back() = {method.divisor(seats[party]) / votes[party], party};
      std::push_heap(heap.begin(), heap.end(), detail::heap_after);
      ++out.stats.heap_pops;
      ++out.stats.heap_pushes;
    }
  }

  const double astar = astar_from_seats(method, votes, seats);
  out.allocation = finalize_allocation(method, votes, k, astar, fuzzy);
  return out;
}

}  // namespace divapport
