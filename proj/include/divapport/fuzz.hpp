#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "divapport/divisor_method.hpp"
#include "divapport/generators.hpp"
#include "divapport/random.hpp"

namespace divapport {

struct FuzzCase {
  DivisorMethod method;
  VoteDistribution dist;
  std::vector<double> votes;
  std::uint64_t k = 0;

  std::string describe() const {
    return "method=" + method.name() + " dist=" + dist.name() +
           " n=" + std::to_string(votes.size()) + " k=" + std::to_string(k);
  }
};

/// Random (method, distribution, n, k, votes) drawn uniformly over the
/// standard methods and distributions, n in [1, max_n], k in [1, k_mult * n].
inline FuzzCase sample_fuzz_case(SplitMix64& rng, std::size_t max_n,
                                 std::uint64_t max_k_multiplier = 10) {
  static const std::vector<DivisorMethod> methods = standard_methods();
  static const std::vector<VoteDistribution> dists = standard_distributions();
  const auto& method = methods[rng.below(methods.size())];
  const auto& dist = dists[rng.below(dists.size())];
  const std::size_t n = 1 + static_cast<std::size_t>(rng.below(max_n));
  const std::uint64_t k = 1 + rng.below(max_k_multiplier * n);
  return {method, dist, gen_votes(dist, n, rng.next()), k};
}

}  // namespace divapport
