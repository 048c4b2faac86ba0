#include <algorithm>

#include "doctest.h"
#include "parkshare/errors.hpp"
#include "parkshare/preferences.hpp"
#include "parkshare/scenario.hpp"

using namespace parkshare;

namespace {

Driver driver_at(std::uint32_t id, double x, double y) {
  Driver d;
  d.id = DriverId(id);
  d.location = {x, y};
  d.max_price = 10;
  return d;
}

ParkingSpot spot_at(std::uint32_t id, double x, double y) {
  ParkingSpot p;
  p.id = SpotId(id);
  p.location = {x, y};
  p.price = 1;
  return p;
}

std::vector<std::uint32_t> ids_of(const DriverPreferenceList& l) {
  std::vector<std::uint32_t> out;
  for (const auto& e : l.ranked) out.push_back(e.id.value);
  return out;
}

std::vector<std::uint32_t> ids_of(const SpotPreferenceList& l) {
  std::vector<std::uint32_t> out;
  for (const auto& e : l.ranked) out.push_back(e.id.value);
  return out;
}

}  // namespace

TEST_CASE("distance: coordinate and matrix modes") {
  const auto coords = DistanceModel::coordinates();
  CHECK(*distance(coords, driver_at(1, 0, 0), spot_at(1, 3, 4)) == 5.0);
  CHECK(*distance(coords, driver_at(1, 2, 2), spot_at(1, 2, 2)) == 0.0);

  auto matrix = DistanceModel::matrix();
  matrix.set(DriverId(1), SpotId(1), 2.5);
  CHECK(*distance(matrix, driver_at(1, 0, 0), spot_at(1, 0, 0)) == 2.5);
  CHECK_FALSE(distance(matrix, driver_at(2, 0, 0), spot_at(7, 0, 0)).has_value());
}

TEST_CASE("distance model rejects bad entries") {
  auto matrix = DistanceModel::matrix();
  CHECK_THROWS_AS(matrix.set(DriverId(1), SpotId(1), -0.1), ParameterError);
  auto coords = DistanceModel::coordinates();
  CHECK_THROWS_AS(coords.set(DriverId(1), SpotId(1), 1.0), StructuralError);
}

TEST_CASE("driver preferences: nearest first") {
  auto model = DistanceModel::matrix();
  std::vector<ParkingSpot> spots{spot_at(1, 0, 0), spot_at(2, 0, 0), spot_at(3, 0, 0)};
  model.set(DriverId(1), SpotId(1), 2.0);
  model.set(DriverId(1), SpotId(2), 1.0);
  model.set(DriverId(1), SpotId(3), 3.0);
  const auto l = build_driver_preferences(driver_at(1, 0, 0), spots, model);
  CHECK(ids_of(l) == std::vector<std::uint32_t>{2, 1, 3});
  CHECK(l.ranked[0].distance == 1.0);
  CHECK(l.ranked[2].distance == 3.0);
}

TEST_CASE("driver preferences: infeasible spots are filtered out") {
  auto model = DistanceModel::matrix();
  std::vector<ParkingSpot> spots{spot_at(1, 0, 0), spot_at(2, 0, 0)};
  spots[0].price = 50;  // over the driver's budget
  model.set(DriverId(1), SpotId(1), 1.0);
  model.set(DriverId(1), SpotId(2), 4.0);
  const auto l = build_driver_preferences(driver_at(1, 0, 0), spots, model);
  REQUIRE(l.size() == 1);
  CHECK(l.ranked[0].id == SpotId(2));
  CHECK(l.ranked[0].distance == 4.0);
}

TEST_CASE("spot preferences: ascending distance, empty when nobody qualifies") {
  std::vector<Driver> drivers{driver_at(1, 0.5, 0), driver_at(2, 0.2, 0)};
  const auto p = spot_at(9, 0, 0);
  const auto l = build_spot_preferences(p, drivers, DistanceModel::coordinates());
  CHECK(ids_of(l) == std::vector<std::uint32_t>{2, 1});
  CHECK(l.ranked[0].distance == doctest::Approx(0.2));

  auto picky = p;
  picky.min_driver_reputation = 1.0;
  for (auto& d : drivers) d.reputation = 0.9;
  CHECK(build_spot_preferences(picky, drivers, DistanceModel::coordinates()).empty());
}

TEST_CASE("equal distances are ordered by ascending id") {
  std::vector<ParkingSpot> spots{spot_at(5, 1, 0), spot_at(3, -1, 0), spot_at(4, 0, 1)};
  const auto l = build_driver_preferences(driver_at(1, 0, 0), spots, DistanceModel::coordinates());
  CHECK(ids_of(l) == std::vector<std::uint32_t>{3, 4, 5});
}

TEST_CASE("distance matrix reproduces the five-driver walkthrough lists") {
  // Distances chosen so the induced rankings are exactly the walkthrough's.
  std::vector<Driver> drivers;
  std::vector<ParkingSpot> spots;
  for (std::uint32_t i = 1; i <= 5; ++i) drivers.push_back(driver_at(i, 0, 0));
  for (std::uint32_t j = 1; j <= 4; ++j) spots.push_back(spot_at(j, 0, 0));
  auto model = DistanceModel::matrix();
  model.set(DriverId(1), SpotId(2), 1.0);
  model.set(DriverId(1), SpotId(1), 2.0);
  model.set(DriverId(2), SpotId(1), 3.0);
  model.set(DriverId(2), SpotId(3), 4.0);
  model.set(DriverId(3), SpotId(2), 0.5);
  model.set(DriverId(4), SpotId(1), 5.0);
  model.set(DriverId(5), SpotId(4), 1.0);

  const auto profile = build_profile(drivers, spots, model);
  CHECK(ids_of(profile.drivers[0]) == std::vector<std::uint32_t>{2, 1});
  CHECK(ids_of(profile.drivers[1]) == std::vector<std::uint32_t>{1, 3});
  CHECK(ids_of(profile.drivers[2]) == std::vector<std::uint32_t>{2});
  CHECK(ids_of(profile.drivers[3]) == std::vector<std::uint32_t>{1});
  CHECK(ids_of(profile.drivers[4]) == std::vector<std::uint32_t>{4});
  CHECK(ids_of(profile.spots[0]) == std::vector<std::uint32_t>{1, 2, 4});
  CHECK(ids_of(profile.spots[1]) == std::vector<std::uint32_t>{3, 1});
  CHECK(ids_of(profile.spots[2]) == std::vector<std::uint32_t>{2});
  CHECK(ids_of(profile.spots[3]) == std::vector<std::uint32_t>{5});
}

TEST_CASE("lists are mutually consistent, complete and deterministic on seeded instances") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    ScenarioConfig cfg;
    cfg.num_drivers = 10;
    cfg.num_spots = 10;
    cfg.edge_fraction = 0.6;
    cfg.seed = seed;
    cfg.mode = seed % 2 ? ConstraintMode::kFull : ConstraintMode::kEdgesOnly;
    const auto s = generate(cfg);
    const auto profile = s.preferences();
    CHECK(profile == s.preferences());

    for (const auto& d : s.drivers) {
      const auto l = build_driver_preferences(d, s.spots, s.distances);
      CHECK(l == profile.drivers[d.id.value]);

      // Independent recount of admissible spots.
      std::size_t admissible = 0;
      for (const auto& p : s.spots) {
        const bool ok = feasible(d, p) && distance(s.distances, d, p).has_value();
        admissible += ok;
        const auto& sl = profile.spots[p.id.value];
        const bool d_lists_p = std::any_of(l.ranked.begin(), l.ranked.end(),
                                           [&](const auto& e) { return e.id == p.id; });
        const bool p_lists_d = std::any_of(sl.ranked.begin(), sl.ranked.end(),
                                           [&](const auto& e) { return e.id == d.id; });
        CHECK(d_lists_p == ok);
        CHECK(p_lists_d == d_lists_p);
      }
      CHECK(l.size() == admissible);
      for (std::size_t k = 1; k < l.ranked.size(); ++k) {
        CHECK(l.ranked[k - 1].distance <= l.ranked[k].distance);
      }
    }
    for (const auto& p : s.spots) {
      CHECK(build_spot_preferences(p, s.drivers, s.distances) == profile.spots[p.id.value]);
    }
  }
}
