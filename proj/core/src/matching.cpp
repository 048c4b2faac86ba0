#include "parkshare/matching.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "parkshare/errors.hpp"

namespace parkshare {

std::optional<SpotId> Matching::spot_of(DriverId d) const {
  auto it = std::lower_bound(pairs.begin(), pairs.end(), d,
                             [](const MatchedPair& mp, DriverId id) { return mp.driver < id; });
  if (it == pairs.end() || it->driver != d) return std::nullopt;
  return it->spot;
}

std::optional<DriverId> Matching::driver_of(SpotId p) const {
  for (const auto& mp : pairs) {
    if (mp.spot == p) return mp.driver;
  }
  return std::nullopt;
}

namespace {

template <typename IdT>
std::vector<std::pair<IdT, std::uint32_t>> sorted_lookup(const std::vector<IdT>& ids,
                                                         const char* side) {
  std::vector<std::pair<IdT, std::uint32_t>> lookup;
  lookup.reserve(ids.size());
  for (std::uint32_t k = 0; k < ids.size(); ++k) lookup.emplace_back(ids[k], k);
  std::sort(lookup.begin(), lookup.end());
  for (std::size_t k = 1; k < lookup.size(); ++k) {
    if (lookup[k].first == lookup[k - 1].first) {
      std::ostringstream os;
      os << "duplicate " << side << " " << lookup[k].first << " in preference profile";
      throw StructuralError(os.str());
    }
  }
  return lookup;
}

template <typename IdT>
std::optional<std::size_t> find_index(const std::vector<IdT>& ids, IdT id) {
  // ids are usually sorted (profiles are built in id order); fall back to a scan.
  auto it = std::lower_bound(ids.begin(), ids.end(), id);
  if (it != ids.end() && *it == id) return static_cast<std::size_t>(it - ids.begin());
  auto lin = std::find(ids.begin(), ids.end(), id);
  if (lin == ids.end()) return std::nullopt;
  return static_cast<std::size_t>(lin - ids.begin());
}

template <typename IdT>
std::uint32_t resolve(const std::vector<std::pair<IdT, std::uint32_t>>& lookup, IdT id) {
  auto it = std::lower_bound(lookup.begin(), lookup.end(), std::pair<IdT, std::uint32_t>{id, 0});
  if (it == lookup.end() || it->first != id) return MarketIndex::kNone;
  return it->second;
}

}  // namespace

MarketIndex::MarketIndex(const PreferenceProfile& profile) {
  for (const auto& l : profile.drivers) driver_ids_.push_back(l.owner);
  for (const auto& l : profile.spots) spot_ids_.push_back(l.owner);
  const auto driver_lookup = sorted_lookup(driver_ids_, "driver");
  const auto spot_lookup = sorted_lookup(spot_ids_, "spot");

  const std::size_t nd = driver_ids_.size();
  const std::size_t ns = spot_ids_.size();
  driver_rank_.assign(nd * ns, kUnranked);
  spot_rank_.assign(nd * ns, kUnranked);

  driver_offsets_.reserve(nd + 1);
  driver_offsets_.push_back(0);
  for (std::size_t i = 0; i < nd; ++i) {
    const auto& list = profile.drivers[i];
    for (std::uint32_t r = 0; r < list.ranked.size(); ++r) {
      const auto j = resolve(spot_lookup, list.ranked[r].id);
      if (j == kNone) {
        std::ostringstream os;
        os << "driver " << list.owner << " lists unknown spot " << list.ranked[r].id;
        throw StructuralError(os.str());
      }
      auto& slot = driver_rank_[i * ns + j];
      if (slot != kUnranked) {
        std::ostringstream os;
        os << "driver " << list.owner << " lists spot " << list.ranked[r].id << " twice";
        throw StructuralError(os.str());
      }
      slot = r;
      driver_lists_.push_back(j);
      driver_distances_.push_back(list.ranked[r].distance);
    }
    driver_offsets_.push_back(driver_lists_.size());
  }

  spot_offsets_.reserve(ns + 1);
  spot_offsets_.push_back(0);
  for (std::size_t j = 0; j < ns; ++j) {
    const auto& list = profile.spots[j];
    for (std::uint32_t r = 0; r < list.ranked.size(); ++r) {
      const auto i = resolve(driver_lookup, list.ranked[r].id);
      if (i == kNone) {
        std::ostringstream os;
        os << "spot " << list.owner << " lists unknown driver " << list.ranked[r].id;
        throw StructuralError(os.str());
      }
      auto& slot = spot_rank_[j * nd + i];
      if (slot != kUnranked) {
        std::ostringstream os;
        os << "spot " << list.owner << " lists driver " << list.ranked[r].id << " twice";
        throw StructuralError(os.str());
      }
      slot = r;
      spot_lists_.push_back(i);
    }
    spot_offsets_.push_back(spot_lists_.size());
  }
}

std::optional<std::size_t> MarketIndex::driver_index(DriverId d) const {
  return find_index(driver_ids_, d);
}

std::optional<std::size_t> MarketIndex::spot_index(SpotId p) const {
  return find_index(spot_ids_, p);
}

Matching MarketIndex::to_matching(std::span<const std::uint32_t> spot_of_driver) const {
  Matching m;
  std::vector<bool> spot_taken(num_spots(), false);
  for (std::size_t i = 0; i < num_drivers(); ++i) {
    const auto j = spot_of_driver[i];
    if (j == kNone) {
      m.unmatched_drivers.push_back(driver_ids_[i]);
    } else {
      m.pairs.push_back({driver_ids_[i], spot_ids_[j]});
      spot_taken[j] = true;
    }
  }
  for (std::size_t j = 0; j < num_spots(); ++j) {
    if (!spot_taken[j]) m.unmatched_spots.push_back(spot_ids_[j]);
  }
  std::sort(m.pairs.begin(), m.pairs.end());
  std::sort(m.unmatched_drivers.begin(), m.unmatched_drivers.end());
  std::sort(m.unmatched_spots.begin(), m.unmatched_spots.end());
  return m;
}

std::vector<std::uint32_t> MarketIndex::assignment(const Matching& m) const {
  std::vector<std::uint32_t> spot_of_driver(num_drivers(), kNone);
  std::vector<bool> driver_seen(num_drivers(), false);
  std::vector<bool> spot_seen(num_spots(), false);

  auto fail = [](auto&&... parts) {
    std::ostringstream os;
    (os << ... << parts);
    throw StructuralError(os.str());
  };
  auto claim_driver = [&](DriverId d) {
    auto i = driver_index(d);
    if (!i) fail("matching names unknown driver ", d);
    if (driver_seen[*i]) fail("driver ", d, " appears more than once in matching");
    driver_seen[*i] = true;
    return *i;
  };
  auto claim_spot = [&](SpotId p) {
    auto j = spot_index(p);
    if (!j) fail("matching names unknown spot ", p);
    if (spot_seen[*j]) fail("spot ", p, " appears more than once in matching");
    spot_seen[*j] = true;
    return *j;
  };

  for (const auto& mp : m.pairs) {
    const auto i = claim_driver(mp.driver);
    const auto j = claim_spot(mp.spot);
    spot_of_driver[i] = static_cast<std::uint32_t>(j);
  }
  for (auto d : m.unmatched_drivers) claim_driver(d);
  for (auto p : m.unmatched_spots) claim_spot(p);

  if (std::find(driver_seen.begin(), driver_seen.end(), false) != driver_seen.end() ||
      std::find(spot_seen.begin(), spot_seen.end(), false) != spot_seen.end()) {
    fail("matching does not cover every participant");
  }
  return spot_of_driver;
}

MatchResult mm_match(const MarketIndex& market) {
  const std::size_t nd = market.num_drivers();
  const std::size_t ns = market.num_spots();

  std::vector<std::uint32_t> next_choice(nd, 0);
  std::vector<std::uint32_t> spot_of_driver(nd, MarketIndex::kNone);
  std::vector<std::uint32_t> holder(ns, MarketIndex::kNone);
  ProposalTrace trace;

  std::deque<std::uint32_t> queue;
  for (std::uint32_t i = 0; i < nd; ++i) queue.push_back(i);
  // Visit drivers in ascending id order even if the profile was not sorted.
  std::stable_sort(queue.begin(), queue.end(), [&](std::uint32_t a, std::uint32_t b) {
    return market.driver_id(a) < market.driver_id(b);
  });

  while (!queue.empty()) {
    const auto i = queue.front();
    queue.pop_front();

    const auto list = market.driver_list(i);
    if (next_choice[i] == list.size()) continue;  // exhausted: stays unmatched

    const auto j = list[next_choice[i]++];
    ++trace.proposal_count;

    const auto rank_i = market.spot_rank(j, i);
    if (rank_i == MarketIndex::kUnranked) {
      std::ostringstream os;
      os << "driver " << market.driver_id(i) << " proposed to spot " << market.spot_id(j)
         << " which does not list it";
      throw StructuralError(os.str());
    }

    const auto current = holder[j];
    if (current == MarketIndex::kNone) {
      holder[j] = i;
      spot_of_driver[i] = j;
    } else if (rank_i < market.spot_rank(j, current)) {
      holder[j] = i;
      spot_of_driver[i] = j;
      spot_of_driver[current] = MarketIndex::kNone;
      ++trace.displacements;
      queue.push_back(current);
    } else {
      queue.push_back(i);
    }
  }

  return {market.to_matching(spot_of_driver), trace};
}

MatchResult mm_match(const PreferenceProfile& profile) {
  return mm_match(MarketIndex(profile));
}

void validate_matching(const Matching& m, const MarketIndex& market) {
  const auto spot_of_driver = market.assignment(m);
  for (std::size_t i = 0; i < spot_of_driver.size(); ++i) {
    const auto j = spot_of_driver[i];
    if (j != MarketIndex::kNone && !market.mutually_listed(i, j)) {
      std::ostringstream os;
      os << "matched pair (" << market.driver_id(i) << "," << market.spot_id(j)
         << ") is not mutually listed";
      throw StructuralError(os.str());
    }
  }
}

std::vector<BlockingPair> find_blocking_pairs(const Matching& m, const MarketIndex& market) {
  validate_matching(m, market);
  const auto spot_of_driver = market.assignment(m);
  std::vector<std::uint32_t> driver_of_spot(market.num_spots(), MarketIndex::kNone);
  for (std::uint32_t i = 0; i < spot_of_driver.size(); ++i) {
    if (spot_of_driver[i] != MarketIndex::kNone) driver_of_spot[spot_of_driver[i]] = i;
  }

  std::vector<BlockingPair> blocking;
  for (std::uint32_t i = 0; i < market.num_drivers(); ++i) {
    const auto list = market.driver_list(i);
    // Only spots ranked strictly above the current partner can block.
    const std::size_t limit = spot_of_driver[i] == MarketIndex::kNone
                                  ? list.size()
                                  : market.driver_rank(i, spot_of_driver[i]);
    for (std::size_t k = 0; k < limit; ++k) {
      const auto j = list[k];
      const auto rank_i = market.spot_rank(j, i);
      if (rank_i == MarketIndex::kUnranked) continue;
      const auto current = driver_of_spot[j];
      if (current == MarketIndex::kNone || rank_i < market.spot_rank(j, current)) {
        blocking.push_back({market.driver_id(i), market.spot_id(j)});
      }
    }
  }
  std::sort(blocking.begin(), blocking.end());
  return blocking;
}

std::vector<BlockingPair> find_blocking_pairs(const Matching& m,
                                              const PreferenceProfile& profile) {
  return find_blocking_pairs(m, MarketIndex(profile));
}

bool is_stable(const Matching& m, const MarketIndex& market) {
  return find_blocking_pairs(m, market).empty();
}

bool is_stable(const Matching& m, const PreferenceProfile& profile) {
  return is_stable(m, MarketIndex(profile));
}

double total_distance(const Matching& m, const MarketIndex& market) {
  double total = 0.0;
  for (const auto& mp : m.pairs) {
    const auto i = market.driver_index(mp.driver);
    const auto j = market.spot_index(mp.spot);
    if (!i || !j) throw StructuralError("matching names an unknown participant");
    const auto r = market.driver_rank(*i, *j);
    if (r == MarketIndex::kUnranked) throw StructuralError("matched pair is not listed");
    total += market.driver_list_distances(*i)[r];
  }
  return total;
}

}  // namespace parkshare
