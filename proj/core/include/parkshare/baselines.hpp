#pragma once

#include <cstdint>
#include <vector>

#include "parkshare/matching.hpp"

namespace parkshare {

// Driver indices ordered by ascending list length, ties by ascending id.
// Shared by the random and greedy baselines.
std::vector<std::uint32_t> baseline_driver_order(const MarketIndex& market);

// Each driver, in baseline order, draws uniformly (with replacement) from its
// own list and takes the first draw that is still free. A driver gets as many
// draws as its list is long; running out leaves it unmatched.
Matching random_match(const MarketIndex& market, std::uint64_t seed);

// Each driver, in baseline order, takes the best spot on its list that is
// still free. Nobody is ever displaced.
Matching greedy_match(const MarketIndex& market);

}  // namespace parkshare
