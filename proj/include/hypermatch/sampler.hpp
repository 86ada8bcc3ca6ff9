#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "hypermatch/exact.hpp"
#include "hypermatch/hypergraph.hpp"

namespace hypermatch {

inline constexpr std::uint64_t kDefaultEnumCap = 10'000'000;

struct ConfigurationCounts {
  ExactInteger paper_count;      // (lm)! / (d^{lm/d} (lm/d)!)
  ExactInteger partition_count;  // (lm)! / ((d!)^{lm/d} (lm/d)!)
};

ConfigurationCounts count_configurations(const Params& p);

// Visits every set partition of the half-edges into d-blocks once, in
// lexicographic order of the canonical vertex_of array.
void for_each_configuration(const Params& p, const std::function<void(const Hypergraph&)>& visit,
                            std::uint64_t cap = kDefaultEnumCap);

std::vector<Hypergraph> enumerate_all(const Params& p, std::uint64_t cap = kDefaultEnumCap);

Hypergraph sample_uniform(const Params& p, std::uint64_t seed);

// Uniform over configurations in which edges {0..k-1} form a matching.
std::pair<Hypergraph, Matching> sample_conditional_on_matching(const Params& p, std::int64_t k,
                                                               std::uint64_t seed);

// P(edges {0..k-1} form a matching) under the uniform configuration.
ExactRational prob_fixed_matching(const Params& p, std::int64_t k);
ExactRational prob_fixed_matching(const Params& p, const ExactRational& beta);

}  // namespace hypermatch
