#include "parkshare/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "parkshare/errors.hpp"

namespace parkshare {

std::string_view to_string(ConstraintMode mode) {
  return mode == ConstraintMode::kFull ? "full" : "edges-only";
}

std::optional<ConstraintMode> parse_constraint_mode(std::string_view text) {
  if (text == "edges-only") return ConstraintMode::kEdgesOnly;
  if (text == "full") return ConstraintMode::kFull;
  return std::nullopt;
}

void ScenarioConfig::validate() const {
  auto fail = [](const std::string& msg) { throw ParameterError(msg); };
  if (num_drivers == 0) fail("num_drivers must be positive");
  if (num_spots == 0) fail("num_spots must be positive");
  if (!(edge_fraction > 0.0 && edge_fraction <= 1.0)) {
    std::ostringstream os;
    os << "edge fraction must lie in (0,1], got " << edge_fraction;
    fail(os.str());
  }
  if (!(dist_lo >= 0.0 && dist_lo < dist_hi && std::isfinite(dist_hi))) {
    std::ostringstream os;
    os << "distance range must satisfy 0 <= lo < hi, got [" << dist_lo << "," << dist_hi << "]";
    fail(os.str());
  }
  if (slots == 0) fail("slots must be positive");
}

std::size_t edge_count(const ScenarioConfig& config) {
  const double max_edges =
      static_cast<double>(config.num_drivers) * static_cast<double>(config.num_spots);
  const auto count = static_cast<std::size_t>(std::floor(config.edge_fraction * max_edges + 0.5));
  return std::min(count, static_cast<std::size_t>(max_edges));
}

std::size_t Scenario::slots() const {
  if (!drivers.empty()) return drivers.front().demand.size();
  if (!spots.empty()) return spots.front().availability.size();
  return config ? config->slots : kDefaultSlots;
}

PreferenceProfile Scenario::preferences() const {
  return build_profile(drivers, spots, distances);
}

namespace {

void sample_side_constraints(Scenario& s, std::mt19937_64& rng, std::size_t slots) {
  std::uniform_real_distribution<double> max_price(2.0, 10.0);
  std::uniform_real_distribution<double> price(1.0, 5.0);
  std::uniform_real_distribution<double> reputation(0.5, 1.0);
  std::uniform_real_distribution<double> threshold(0.0, 0.6);
  std::uniform_int_distribution<std::size_t> start(0, slots - 1);
  std::uniform_int_distribution<std::size_t> demand_len(1, std::max<std::size_t>(1, slots / 4));
  std::uniform_int_distribution<std::size_t> blocked_len(0, slots / 2);

  const auto empty = TimeVector::zeros(slots);
  for (auto& d : s.drivers) {
    d.max_price = max_price(rng);
    d.min_spot_reputation = threshold(rng);
    d.reputation = reputation(rng);
    const auto first = start(rng);
    d.demand = empty.with_block(first, demand_len(rng));
  }
  for (auto& p : s.spots) {
    p.price = price(rng);
    p.min_driver_reputation = threshold(rng);
    p.reputation = reputation(rng);
    const auto first = start(rng);
    p.availability = empty.with_block(first, blocked_len(rng));
  }
}

}  // namespace

Scenario generate(const ScenarioConfig& config) {
  config.validate();
  std::mt19937_64 rng(config.seed);

  Scenario s;
  s.config = config;
  s.distances = DistanceModel::matrix();

  const auto empty = TimeVector::zeros(config.slots);
  s.drivers.reserve(config.num_drivers);
  for (std::uint32_t i = 0; i < config.num_drivers; ++i) {
    Driver d;
    d.id = DriverId(i);
    d.max_price = 1.0;
    d.demand = empty;
    s.drivers.push_back(std::move(d));
  }
  s.spots.reserve(config.num_spots);
  for (std::uint32_t j = 0; j < config.num_spots; ++j) {
    ParkingSpot p;
    p.id = SpotId(j);
    p.price = 0.0;
    p.availability = empty;
    s.spots.push_back(std::move(p));
  }

  const std::uint64_t max_edges =
      static_cast<std::uint64_t>(config.num_drivers) * config.num_spots;
  std::vector<std::uint64_t> cells(max_edges);
  std::iota(cells.begin(), cells.end(), std::uint64_t{0});
  std::vector<std::uint64_t> chosen;
  chosen.reserve(edge_count(config));
  std::sample(cells.begin(), cells.end(), std::back_inserter(chosen), edge_count(config), rng);

  std::uniform_real_distribution<double> km(config.dist_lo, config.dist_hi);
  s.edges.reserve(chosen.size());
  for (const auto cell : chosen) {
    const DriverId d(static_cast<std::uint32_t>(cell / config.num_spots));
    const SpotId p(static_cast<std::uint32_t>(cell % config.num_spots));
    const double dist = km(rng);
    s.edges.push_back({d, p, dist});
    s.distances.set(d, p, dist);
  }

  if (config.mode == ConstraintMode::kFull) sample_side_constraints(s, rng, config.slots);
  return s;
}

Scenario ingest(std::vector<Driver> drivers, std::vector<ParkingSpot> spots) {
  std::optional<std::size_t> slots;
  auto check_slots = [&](std::size_t n, const std::string& who) {
    if (!slots) slots = n;
    if (n != *slots) {
      std::ostringstream os;
      os << who << ": time vector has " << n << " slots, expected " << *slots;
      throw IngestionError(os.str());
    }
  };

  std::set<DriverId> seen_drivers;
  for (std::size_t k = 0; k < drivers.size(); ++k) {
    std::ostringstream who;
    who << "driver record " << k << " (id " << drivers[k].id.value << ")";
    try {
      validate(drivers[k]);
    } catch (const ParameterError& e) {
      throw IngestionError(who.str() + ": " + e.what());
    }
    check_slots(drivers[k].demand.size(), who.str());
    if (!seen_drivers.insert(drivers[k].id).second) {
      throw IngestionError(who.str() + ": duplicate driver id");
    }
  }
  std::set<SpotId> seen_spots;
  for (std::size_t k = 0; k < spots.size(); ++k) {
    std::ostringstream who;
    who << "spot record " << k << " (id " << spots[k].id.value << ")";
    try {
      validate(spots[k]);
    } catch (const ParameterError& e) {
      throw IngestionError(who.str() + ": " + e.what());
    }
    check_slots(spots[k].availability.size(), who.str());
    if (!seen_spots.insert(spots[k].id).second) {
      throw IngestionError(who.str() + ": duplicate spot id");
    }
  }

  Scenario s;
  s.drivers = std::move(drivers);
  s.spots = std::move(spots);
  std::sort(s.drivers.begin(), s.drivers.end(),
            [](const Driver& a, const Driver& b) { return a.id < b.id; });
  std::sort(s.spots.begin(), s.spots.end(),
            [](const ParkingSpot& a, const ParkingSpot& b) { return a.id < b.id; });
  s.distances = DistanceModel::coordinates();
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestionError("cannot open scenario file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario_json(buf.str());
}

void save_scenario(const Scenario& scenario, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IngestionError("cannot write scenario file " + path.string());
  out << to_json(scenario);
}

}  // namespace parkshare
