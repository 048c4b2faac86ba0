#include <random>

#include "doctest.h"
#include "parkshare/domain.hpp"
#include "parkshare/errors.hpp"

using namespace parkshare;

namespace {

Driver base_driver() {
  Driver d;
  d.id = DriverId(1);
  d.max_price = 10;
  d.min_spot_reputation = 0.5;
  d.reputation = 0.6;
  d.demand = TimeVector{1, 0};
  return d;
}

ParkingSpot base_spot() {
  ParkingSpot p;
  p.id = SpotId(1);
  p.price = 8;
  p.reputation = 0.7;
  p.min_driver_reputation = 0.4;
  p.availability = TimeVector{0, 1};
  return p;
}

}  // namespace

TEST_CASE("time vector rejects empty and non-binary input") {
  CHECK_THROWS_AS(TimeVector(std::vector<std::uint8_t>{}), ParameterError);
  CHECK_THROWS_AS((TimeVector{0, 2}), ParameterError);
  CHECK_THROWS_AS(TimeVector::zeros(0), ParameterError);
  CHECK(TimeVector::zeros(48).size() == 48);
}

TEST_CASE("time vector block wraps around the day") {
  const auto t = TimeVector::zeros(4).with_block(3, 2);
  CHECK(t == TimeVector{1, 0, 0, 1});
}

TEST_CASE("feasible: worked constraint examples") {
  const auto d = base_driver();
  const auto p = base_spot();
  CHECK(feasible(d, p));

  auto cheap = d;
  cheap.max_price = 5;
  CHECK_FALSE(feasible(cheap, p));

  auto clash = p;
  clash.availability = TimeVector{1, 0};
  CHECK_FALSE(feasible(d, clash));
}

TEST_CASE("feasible: ties on price and reputation count as satisfied") {
  auto d = base_driver();
  auto p = base_spot();
  d.max_price = p.price;
  d.min_spot_reputation = p.reputation;
  p.min_driver_reputation = d.reputation;
  CHECK(feasible(d, p));
}

TEST_CASE("feasible: each single violated constraint flips the verdict") {
  const auto d = base_driver();
  const auto p = base_spot();
  REQUIRE(feasible(d, p));

  auto d1 = d;
  d1.max_price = 7.99;
  CHECK_FALSE(feasible(d1, p));

  auto d2 = d;
  d2.min_spot_reputation = 0.71;
  CHECK_FALSE(feasible(d2, p));

  auto p3 = p;
  p3.min_driver_reputation = 0.61;
  CHECK_FALSE(feasible(d, p3));

  auto p4 = p;
  p4.availability = TimeVector{1, 1};
  CHECK_FALSE(feasible(d, p4));
}

TEST_CASE("feasible: mismatched slot counts are a structural error") {
  auto p = base_spot();
  p.availability = TimeVector{0, 1, 0};
  CHECK_THROWS_AS(feasible(base_driver(), p), StructuralError);
}

TEST_CASE("feasible: time conflict is symmetric and the predicate is monotone") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::bernoulli_distribution bit(0.3);
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<std::uint8_t> a(6), b(6);
    for (auto& v : a) v = bit(rng);
    for (auto& v : b) v = bit(rng);
    const TimeVector ta(a), tb(b);
    CHECK(ta.dot(tb) == tb.dot(ta));

    Driver d;
    d.max_price = 10 * u(rng);
    d.min_spot_reputation = u(rng);
    d.reputation = u(rng);
    d.demand = ta;
    ParkingSpot p;
    p.price = 10 * u(rng);
    p.min_driver_reputation = u(rng);
    p.reputation = u(rng);
    p.availability = tb;

    if (!feasible(d, p)) continue;
    auto richer = d;
    richer.max_price += u(rng);
    CHECK(feasible(richer, p));
    auto trusted = d;
    trusted.reputation = std::min(1.0, d.reputation + u(rng));
    CHECK(feasible(trusted, p));
    auto better_spot = p;
    better_spot.reputation = std::min(1.0, p.reputation + u(rng));
    CHECK(feasible(d, better_spot));
  }
}

TEST_CASE("reputation updates: closed-form values") {
  CHECK(update_driver_reputation(0.8, 0.5, 1.0) == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(update_driver_reputation(0.8, 0.0, 0.1) == 0.8);
  CHECK(update_driver_reputation(0.3, 1.0, 0.7) == 0.7);
  CHECK(update_spot_reputation(1.0, 0.5, 0.0) == 0.5);
  CHECK(update_spot_reputation(0.6, 0.25, 0.6) == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(update_spot_reputation(0.0, 0.5, 1.0) == 0.5);
}

TEST_CASE("reputation updates: parameter domains") {
  CHECK_THROWS_AS(update_driver_reputation(0.5, -0.1, 0.5), ParameterError);
  CHECK_THROWS_AS(update_driver_reputation(0.5, 1.1, 0.5), ParameterError);
  CHECK_THROWS_AS(update_spot_reputation(0.5, 0.0, 0.5), ParameterError);
  CHECK_THROWS_AS(update_spot_reputation(0.5, 1.0, 0.5), ParameterError);
  CHECK_THROWS_AS(update_driver_reputation(1.5, 0.5, 0.5), ParameterError);
  CHECK_THROWS_AS(update_spot_reputation(0.5, 0.5, -0.5), ParameterError);
}

TEST_CASE("reputation updates stay between prior and score") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 5000; ++trial) {
    const double prev = u(rng), score = u(rng), w = u(rng);
    const double lo = std::min(prev, score), hi = std::max(prev, score);
    const double rd = update_driver_reputation(prev, w, score);
    CHECK((rd >= lo - 1e-15 && rd <= hi + 1e-15));
    if (w > 0.0 && w < 1.0) {
      const double rs = update_spot_reputation(prev, w, score);
      CHECK((rs >= lo - 1e-15 && rs <= hi + 1e-15));
    }
  }
}

TEST_CASE("validate rejects out-of-range participants") {
  auto d = base_driver();
  d.reputation = 1.2;
  CHECK_THROWS_AS(validate(d), ParameterError);
  auto p = base_spot();
  p.price = -1;
  CHECK_THROWS_AS(validate(p), ParameterError);
  CHECK_NOTHROW(validate(base_driver()));
  CHECK_NOTHROW(validate(base_spot()));
}
