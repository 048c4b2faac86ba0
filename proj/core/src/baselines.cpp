#include "parkshare/baselines.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace parkshare {

std::vector<std::uint32_t> baseline_driver_order(const MarketIndex& market) {
  std::vector<std::uint32_t> order(market.num_drivers());
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    const auto la = market.driver_list(a).size();
    const auto lb = market.driver_list(b).size();
    if (la != lb) return la < lb;
    return market.driver_id(a) < market.driver_id(b);
  });
  return order;
}

Matching random_match(const MarketIndex& market, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::uint32_t> spot_of_driver(market.num_drivers(), MarketIndex::kNone);
  std::vector<bool> taken(market.num_spots(), false);

  for (const auto i : baseline_driver_order(market)) {
    const auto list = market.driver_list(i);
    if (list.empty()) continue;
    std::uniform_int_distribution<std::size_t> pick(0, list.size() - 1);
    for (std::size_t attempt = 0; attempt < list.size(); ++attempt) {
      const auto j = list[pick(rng)];
      if (taken[j] || market.spot_rank(j, i) == MarketIndex::kUnranked) continue;
      taken[j] = true;
      spot_of_driver[i] = j;
      break;
    }
  }
  return market.to_matching(spot_of_driver);
}

Matching greedy_match(const MarketIndex& market) {
  std::vector<std::uint32_t> spot_of_driver(market.num_drivers(), MarketIndex::kNone);
  std::vector<bool> taken(market.num_spots(), false);

  for (const auto i : baseline_driver_order(market)) {
    for (const auto j : market.driver_list(i)) {
      if (taken[j] || market.spot_rank(j, i) == MarketIndex::kUnranked) continue;
      taken[j] = true;
      spot_of_driver[i] = j;
      break;
    }
  }
  return market.to_matching(spot_of_driver);
}

}  // namespace parkshare
