#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "parkshare/domain.hpp"
#include "parkshare/preferences.hpp"

namespace parkshare {

// kEdgesOnly reproduces the synthetic benchmark protocol: every side
// constraint is trivially met and the sampled edge set alone decides which
// pairs are feasible. kFull also samples prices, reputations, thresholds and
// time vectors, so the four pairwise constraints prune the edge set further.
enum class ConstraintMode { kEdgesOnly, kFull };

std::string_view to_string(ConstraintMode mode);
std::optional<ConstraintMode> parse_constraint_mode(std::string_view text);

struct ScenarioConfig {
  std::uint32_t num_drivers = 50;
  std::uint32_t num_spots = 50;
  double edge_fraction = 0.2;  // |E| / (|D| * |P|), in (0,1]
  double dist_lo = 0.0;        // km, inclusive
  double dist_hi = 5.0;        // km, inclusive
  std::uint64_t seed = 0;
  std::size_t slots = kDefaultSlots;
  ConstraintMode mode = ConstraintMode::kEdgesOnly;

  // Throws ParameterError on an empty side, an edge fraction outside (0,1],
  // a bad distance range or zero slots.
  void validate() const;

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

// round(edge_fraction * drivers * spots), halves rounded up.
std::size_t edge_count(const ScenarioConfig& config);

struct Edge {
  DriverId driver;
  SpotId spot;
  double distance = 0.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Scenario {
  std::optional<ScenarioConfig> config;  // absent for ingested records
  std::vector<Driver> drivers;           // ascending id
  std::vector<ParkingSpot> spots;        // ascending id
  DistanceModel distances = DistanceModel::coordinates();
  std::vector<Edge> edges;  // matrix-mode entries, sorted by (driver, spot)

  std::size_t slots() const;
  PreferenceProfile preferences() const;
};

// Seeded synthetic instance: exactly edge_count(config) distinct pairs drawn
// uniformly without replacement, each with an independent uniform distance in
// [dist_lo, dist_hi]. Identical configs give identical scenarios.
Scenario generate(const ScenarioConfig& config);

// Builds a coordinate-mode scenario from participant records. Throws
// IngestionError naming the offending record on duplicate ids, a time vector
// whose length differs from the first record's, or an out-of-range field.
Scenario ingest(std::vector<Driver> drivers, std::vector<ParkingSpot> spots);

// JSON I/O. A document without "edges" is treated as participant records and
// goes through ingest(); a document with "edges" is a matrix-mode scenario.
// Field errors raise IngestionError.
Scenario parse_scenario_json(std::string_view text);
std::string to_json(const Scenario& scenario);

Scenario load_scenario(const std::filesystem::path& path);
void save_scenario(const Scenario& scenario, const std::filesystem::path& path);

}  // namespace parkshare
