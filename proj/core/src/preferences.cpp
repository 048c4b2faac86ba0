#include "parkshare/preferences.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "parkshare/errors.hpp"

namespace parkshare {

void DistanceModel::set(DriverId d, SpotId p, double km) {
  if (mode_ != Mode::kMatrix) {
    throw StructuralError("explicit distances require a matrix-mode model");
  }
  if (!(km >= 0.0) || !std::isfinite(km)) {
    std::ostringstream os;
    os << "distance for (" << d << "," << p << ") must be finite and >= 0, got " << km;
    throw ParameterError(os.str());
  }
  entries_[key(d, p)] = km;
}

std::optional<double> DistanceModel::lookup(DriverId d, SpotId p) const {
  auto it = entries_.find(key(d, p));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::optional<double> distance(const DistanceModel& model, const Driver& d,
                               const ParkingSpot& p) {
  if (model.mode() == DistanceModel::Mode::kMatrix) return model.lookup(d.id, p.id);
  return std::hypot(d.location.x - p.location.x, d.location.y - p.location.y);
}

namespace {

template <typename Entry>
void rank(std::vector<Entry>& entries) {
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    return a.id < b.id;
  });
}

}  // namespace

DriverPreferenceList build_driver_preferences(const Driver& d,
                                              std::span<const ParkingSpot> spots,
                                              const DistanceModel& model) {
  DriverPreferenceList list{d.id, {}};
  for (const auto& p : spots) {
    if (!feasible(d, p)) continue;
    if (auto km = distance(model, d, p)) list.ranked.push_back({p.id, *km});
  }
  rank(list.ranked);
  return list;
}

SpotPreferenceList build_spot_preferences(const ParkingSpot& p,
                                          std::span<const Driver> drivers,
                                          const DistanceModel& model) {
  SpotPreferenceList list{p.id, {}};
  for (const auto& d : drivers) {
    if (!feasible(d, p)) continue;
    if (auto km = distance(model, d, p)) list.ranked.push_back({d.id, *km});
  }
  rank(list.ranked);
  return list;
}

PreferenceProfile build_profile(std::span<const Driver> drivers,
                                std::span<const ParkingSpot> spots,
                                const DistanceModel& model) {
  PreferenceProfile profile;
  profile.drivers.reserve(drivers.size());
  profile.spots.reserve(spots.size());
  for (const auto& d : drivers) profile.drivers.push_back({d.id, {}});
  for (const auto& p : spots) profile.spots.push_back({p.id, {}});

  for (std::size_t i = 0; i < drivers.size(); ++i) {
    for (std::size_t j = 0; j < spots.size(); ++j) {
      if (!feasible(drivers[i], spots[j])) continue;
      auto km = distance(model, drivers[i], spots[j]);
      if (!km) continue;
      profile.drivers[i].ranked.push_back({spots[j].id, *km});
      profile.spots[j].ranked.push_back({drivers[i].id, *km});
    }
  }
  for (auto& l : profile.drivers) rank(l.ranked);
  for (auto& l : profile.spots) rank(l.ranked);

  auto by_owner = [](const auto& a, const auto& b) { return a.owner < b.owner; };
  std::sort(profile.drivers.begin(), profile.drivers.end(), by_owner);
  std::sort(profile.spots.begin(), profile.spots.end(), by_owner);
  return profile;
}

}  // namespace parkshare
