#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "parkshare/domain.hpp"
#include "parkshare/ids.hpp"

namespace parkshare {

// Source of pairwise driver-spot distances (km).
//
// Coordinate mode measures the Euclidean distance between locations, so every
// pair has a distance. Matrix mode stores explicit entries; a missing entry
// means the pair has no edge and can never be matched.
class DistanceModel {
 public:
  enum class Mode { kCoordinates, kMatrix };

  static DistanceModel coordinates() { return DistanceModel(Mode::kCoordinates); }
  static DistanceModel matrix() { return DistanceModel(Mode::kMatrix); }

  Mode mode() const noexcept { return mode_; }

  // Matrix mode only. Throws ParameterError on a negative or non-finite
  // distance and StructuralError in coordinate mode.
  void set(DriverId d, SpotId p, double km);

  std::optional<double> lookup(DriverId d, SpotId p) const;
  std::size_t entry_count() const noexcept { return entries_.size(); }

 private:
  explicit DistanceModel(Mode mode) : mode_(mode) {}

  static std::uint64_t key(DriverId d, SpotId p) {
    return (static_cast<std::uint64_t>(d.value) << 32) | p.value;
  }

  Mode mode_;
  std::unordered_map<std::uint64_t, double> entries_;
};

std::optional<double> distance(const DistanceModel& model, const Driver& d,
                               const ParkingSpot& p);

template <typename CounterpartyId>
struct RankedEntry {
  CounterpartyId id;
  double distance = 0.0;

  friend bool operator==(const RankedEntry&, const RankedEntry&) = default;
};

// Feasible counterparties, nearest first. Equal distances are ordered by
// ascending counterparty id so the ranking is strict and reproducible.
template <typename OwnerId, typename CounterpartyId>
struct PreferenceList {
  OwnerId owner;
  std::vector<RankedEntry<CounterpartyId>> ranked;

  std::size_t size() const noexcept { return ranked.size(); }
  bool empty() const noexcept { return ranked.empty(); }

  friend bool operator==(const PreferenceList&, const PreferenceList&) = default;
};

using DriverPreferenceList = PreferenceList<DriverId, SpotId>;
using SpotPreferenceList = PreferenceList<SpotId, DriverId>;

// Both sides' lists for one instance, each vector sorted by owner id.
struct PreferenceProfile {
  std::vector<DriverPreferenceList> drivers;
  std::vector<SpotPreferenceList> spots;

  friend bool operator==(const PreferenceProfile&, const PreferenceProfile&) = default;
};

DriverPreferenceList build_driver_preferences(const Driver& d,
                                              std::span<const ParkingSpot> spots,
                                              const DistanceModel& model);

SpotPreferenceList build_spot_preferences(const ParkingSpot& p,
                                          std::span<const Driver> drivers,
                                          const DistanceModel& model);

// Builds every list in one pass over the pairs. Produces exactly what the
// per-owner builders would.
PreferenceProfile build_profile(std::span<const Driver> drivers,
                                std::span<const ParkingSpot> spots,
                                const DistanceModel& model);

}  // namespace parkshare
