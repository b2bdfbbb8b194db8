#pragma once

#include <cstdint>
#include <cstdlib>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "divapport/core.hpp"
#include "divapport/iterative.hpp"
#include "divapport/jump_step.hpp"
#include "divapport/sandwich.hpp"
#include "divapport/selection.hpp"

namespace divapport {

enum class Algorithm { iterative_scan, iterative_heap, jump_step_scan, jump_step_heap, sandwich };

enum class CounterKind { none, delta_a, window_size };

inline const char* to_string(Algorithm a) {
  switch (a) {
    case Algorithm::iterative_scan: return "iterative-scan";
    case Algorithm::iterative_heap: return "iterative-heap";
    case Algorithm::jump_step_scan: return "jump-step-scan";
    case Algorithm::jump_step_heap: return "jump-step-heap";
    case Algorithm::sandwich: return "sandwich";
  }
  return "?";
}

inline const char* to_string(CounterKind c) {
  switch (c) {
    case CounterKind::none: return "none";
    case CounterKind::delta_a: return "delta_a";
    case CounterKind::window_size: return "window_size";
  }
  return "?";
}

inline constexpr Algorithm kAllAlgorithms[] = {Algorithm::iterative_scan, Algorithm::iterative_heap,
                                               Algorithm::jump_step_scan, Algorithm::jump_step_heap,
                                               Algorithm::sandwich};

inline Algorithm parse_algorithm(std::string_view text) {
  for (Algorithm a : kAllAlgorithms) {
    if (text == to_string(a)) return a;
  }
  throw Error(ErrorCode::invalid_argument, "unknown algorithm '" + std::string(text) + "'");
}

inline CounterKind counter_kind(Algorithm a) {
  switch (a) {
    case Algorithm::jump_step_scan:
    case Algorithm::jump_step_heap: return CounterKind::delta_a;
    case Algorithm::sandwich: return CounterKind::window_size;
    default: return CounterKind::none;
  }
}

struct RunOptions {
  SelectBackend select = SelectBackend::quick;
  std::uint64_t seed = 0x5EEDULL;
  Fuzzy fuzzy{};
};

struct RunOutcome {
  Allocation allocation;
  std::int64_t counter = 0;
  CounterKind kind = CounterKind::none;
};

/// Uniform entry point over all algorithms; counter is delta_a for
/// jump-and-step, |A_hat| for SandwichSelect and 0 otherwise.
inline RunOutcome run_algorithm(Algorithm algorithm, const DivisorMethod& method,
                                std::span<const double> votes, std::uint64_t k,
                                const RunOptions& options = {}) {
  RunOutcome out;
  out.kind = counter_kind(algorithm);
  switch (algorithm) {
    case Algorithm::iterative_scan:
    case Algorithm::iterative_heap: {
      auto r = iterative_apportion(method, votes, k,
                                   algorithm == Algorithm::iterative_scan ? IterativeStrategy::scan
                                                                          : IterativeStrategy::heap,
                                   options.fuzzy);
      out.allocation = std::move(r.allocation);
      break;
    }
    case Algorithm::jump_step_scan:
    case Algorithm::jump_step_heap: {
      auto r = jump_and_step(method, votes, k,
                             algorithm == Algorithm::jump_step_scan ? StepStrategy::scan
                                                                    : StepStrategy::heap,
                             std::nullopt, options.fuzzy);
      out.allocation = std::move(r.allocation);
      out.counter = r.stats.delta_a;
      break;
    }
    case Algorithm::sandwich: {
      auto r = sandwich_select(method, votes, k, options.select, options.seed, options.fuzzy);
      out.allocation = std::move(r.allocation);
      out.counter = static_cast<std::int64_t>(r.stats.window_size);
      break;
    }
  }
  return out;
}

/// Allocations agree when seats, ties and residual match and a* agrees to
/// the fuzzy tolerance.
inline bool allocations_agree(const Allocation& a, const Allocation& b, const Fuzzy& fuzzy = {}) {
  return a.same_seats(b) && fuzzy.eq(a.astar, b.astar);
}

}  // namespace divapport
