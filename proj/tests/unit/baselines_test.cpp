#include <random>

#include "doctest.h"
#include "parkshare/baselines.hpp"
#include "parkshare/matching.hpp"
#include "parkshare/scenario.hpp"
#include "support/test_support.hpp"

using namespace parkshare;
using namespace parkshare::testing;

TEST_CASE("baseline order: shortest list first, ties by id") {
  PreferenceProfile p;
  p.drivers = {driver_list(1, {1, 2, 3}), driver_list(2, {1}), driver_list(3, {2, 3}),
               driver_list(4, {3})};
  p.spots = {spot_list(1, {1, 2}), spot_list(2, {1, 3}), spot_list(3, {1, 3, 4})};
  const MarketIndex market(p);
  const auto order = baseline_driver_order(market);
  std::vector<DriverId> ids;
  for (auto i : order) ids.push_back(market.driver_id(i));
  CHECK(ids == std::vector<DriverId>{DriverId(2), DriverId(4), DriverId(3), DriverId(1)});
}

TEST_CASE("greedy: first-come first-served on a shared first choice") {
  PreferenceProfile p;
  p.drivers = {driver_list(1, {1, 2}), driver_list(2, {1, 2})};
  p.spots = {spot_list(1, {2, 1}), spot_list(2, {2, 1})};
  const auto m = greedy_match(MarketIndex(p));
  CHECK(m.pairs == std::vector<MatchedPair>{{DriverId(1), SpotId(1)}, {DriverId(2), SpotId(2)}});
}

TEST_CASE("greedy: disjoint first choices give every driver its nearest spot") {
  PreferenceProfile p;
  p.drivers = {driver_list(1, {1, 2}), driver_list(2, {2, 3}), driver_list(3, {3, 1})};
  p.spots = {spot_list(1, {1, 3}), spot_list(2, {1, 2}), spot_list(3, {2, 3})};
  const MarketIndex market(p);
  const auto m = greedy_match(market);
  CHECK(m.size() == 3);
  double minima = 0;
  for (const auto& l : p.drivers) minima += l.ranked.front().distance;
  CHECK(total_distance(m, market) == minima);
}

TEST_CASE("random and greedy coincide when every list has one entry") {
  PreferenceProfile p;
  p.drivers = {driver_list(1, {1}), driver_list(2, {1}), driver_list(3, {2}), driver_list(4, {3})};
  p.spots = {spot_list(1, {1, 2}), spot_list(2, {3}), spot_list(3, {4})};
  const MarketIndex market(p);
  const auto greedy = greedy_match(market);
  for (std::uint64_t seed = 0; seed < 50; ++seed) CHECK(random_match(market, seed) == greedy);
}

TEST_CASE("baselines on empty lists return the empty matching") {
  PreferenceProfile p;
  p.drivers = {driver_list(1, {}), driver_list(2, {})};
  p.spots = {spot_list(1, {})};
  const MarketIndex market(p);
  CHECK(greedy_match(market).pairs.empty());
  CHECK(random_match(market, 9).pairs.empty());
  CHECK(greedy_match(market).unmatched_drivers.size() == 2);
}

TEST_CASE("random: replay determinism and structural validity") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const auto profile = random_profile(rng, 20, 15, 0.3);
    const MarketIndex market(profile);
    const auto a = random_match(market, trial);
    CHECK(a == random_match(market, trial));
    CHECK_NOTHROW(validate_matching(a, market));
    CHECK_NOTHROW(validate_matching(greedy_match(market), market));
  }
}

TEST_CASE("random: a driver whose spots are all taken exhausts its budget") {
  PreferenceProfile p;
  p.drivers = {driver_list(1, {1}), driver_list(2, {2}), driver_list(3, {1, 2})};
  p.spots = {spot_list(1, {1, 3}), spot_list(2, {2, 3})};
  const auto m = random_match(MarketIndex(p), 123);
  CHECK(m.unmatched_drivers == std::vector<DriverId>{DriverId(3)});
}

TEST_CASE("greedy is worse than mm on average over seeds (50x50, 20% edges)") {
  double greedy_sum = 0, mm_sum = 0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    ScenarioConfig cfg;
    cfg.num_drivers = cfg.num_spots = 50;
    cfg.edge_fraction = 0.2;
    cfg.seed = seed;
    const auto s = generate(cfg);
    const auto profile = s.preferences();
    const MarketIndex market(profile);
    greedy_sum += total_distance(greedy_match(market), market);
    mm_sum += total_distance(mm_match(market).matching, market);
  }
  CHECK(greedy_sum > mm_sum);
}
