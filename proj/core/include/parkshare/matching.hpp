#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "parkshare/ids.hpp"
#include "parkshare/preferences.hpp"

namespace parkshare {

struct MatchedPair {
  DriverId driver;
  SpotId spot;

  friend auto operator<=>(const MatchedPair&, const MatchedPair&) = default;
};

// One-to-one partial assignment. `pairs` is sorted by driver id and the two
// unmatched vectors are ascending, so equal matchings compare equal.
struct Matching {
  std::vector<MatchedPair> pairs;
  std::vector<DriverId> unmatched_drivers;
  std::vector<SpotId> unmatched_spots;

  std::size_t size() const noexcept { return pairs.size(); }
  std::optional<SpotId> spot_of(DriverId d) const;
  std::optional<DriverId> driver_of(SpotId p) const;

  friend bool operator==(const Matching&, const Matching&) = default;
};

struct BlockingPair {
  DriverId driver;
  SpotId spot;

  friend auto operator<=>(const BlockingPair&, const BlockingPair&) = default;
};

struct ProposalTrace {
  std::uint64_t proposal_count = 0;
  std::uint64_t displacements = 0;
};

struct MatchResult {
  Matching matching;
  ProposalTrace trace;
};

// Dense, index-addressed form of a PreferenceProfile. Driver i is the i-th
// list in profile.drivers, spot j the j-th list in profile.spots. Rank tables
// give O(1) "where does X sit on Y's list" queries for the matchers.
class MarketIndex {
 public:
  static constexpr std::uint32_t kUnranked = std::numeric_limits<std::uint32_t>::max();
  static constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

  // Throws StructuralError on duplicate owners or when a list names a
  // counterparty that is not a participant.
  explicit MarketIndex(const PreferenceProfile& profile);

  std::size_t num_drivers() const noexcept { return driver_ids_.size(); }
  std::size_t num_spots() const noexcept { return spot_ids_.size(); }

  DriverId driver_id(std::size_t i) const { return driver_ids_[i]; }
  SpotId spot_id(std::size_t j) const { return spot_ids_[j]; }
  std::span<const DriverId> driver_ids() const noexcept { return driver_ids_; }
  std::span<const SpotId> spot_ids() const noexcept { return spot_ids_; }

  std::optional<std::size_t> driver_index(DriverId d) const;
  std::optional<std::size_t> spot_index(SpotId p) const;

  // Spot indices, best first.
  std::span<const std::uint32_t> driver_list(std::size_t i) const {
    return {driver_lists_.data() + driver_offsets_[i],
            driver_lists_.data() + driver_offsets_[i + 1]};
  }
  std::span<const double> driver_list_distances(std::size_t i) const {
    return {driver_distances_.data() + driver_offsets_[i],
            driver_distances_.data() + driver_offsets_[i + 1]};
  }
  // Driver indices, best first.
  std::span<const std::uint32_t> spot_list(std::size_t j) const {
    return {spot_lists_.data() + spot_offsets_[j],
            spot_lists_.data() + spot_offsets_[j + 1]};
  }

  // Position of spot j on driver i's list, or kUnranked.
  std::uint32_t driver_rank(std::size_t i, std::size_t j) const {
    return driver_rank_[i * spot_ids_.size() + j];
  }
  // Position of driver i on spot j's list, or kUnranked.
  std::uint32_t spot_rank(std::size_t j, std::size_t i) const {
    return spot_rank_[j * driver_ids_.size() + i];
  }

  bool mutually_listed(std::size_t i, std::size_t j) const {
    return driver_rank(i, j) != kUnranked && spot_rank(j, i) != kUnranked;
  }

  std::size_t total_list_length() const noexcept { return driver_lists_.size(); }

  // spot_of_driver[i] is a spot index or kNone.
  Matching to_matching(std::span<const std::uint32_t> spot_of_driver) const;

  // Inverse of to_matching. Throws StructuralError when the matching names an
  // unknown participant, reuses one, or does not partition the participants.
  std::vector<std::uint32_t> assignment(const Matching& m) const;

 private:
  std::vector<DriverId> driver_ids_;
  std::vector<SpotId> spot_ids_;
  std::vector<std::size_t> driver_offsets_;
  std::vector<std::uint32_t> driver_lists_;
  std::vector<double> driver_distances_;
  std::vector<std::size_t> spot_offsets_;
  std::vector<std::uint32_t> spot_lists_;
  std::vector<std::uint32_t> driver_rank_;
  std::vector<std::uint32_t> spot_rank_;
};

// Driver-proposing deferred acceptance over incomplete lists.
//
// Drivers wait in a circular queue, initially in ascending id order. The
// driver at the head proposes to the next spot on its list it has not tried.
// A free spot accepts; a held spot switches only to a proposer it ranks
// strictly higher, and the displaced driver rejoins the tail of the queue. A
// rejected proposer also rejoins the tail. A driver whose list runs out
// leaves the queue unmatched. The run ends when the queue is empty.
//
// Throws StructuralError if a driver proposes to a spot that does not list it.
MatchResult mm_match(const MarketIndex& market);
MatchResult mm_match(const PreferenceProfile& profile);

// Throws StructuralError unless every pair is mutually listed and the
// matching partitions the participants.
void validate_matching(const Matching& m, const MarketIndex& market);

// Mutually listed pairs outside `m` on which both sides would rather be
// together (an unassigned side always would). Sorted by (driver, spot).
std::vector<BlockingPair> find_blocking_pairs(const Matching& m, const MarketIndex& market);
std::vector<BlockingPair> find_blocking_pairs(const Matching& m,
                                              const PreferenceProfile& profile);

bool is_stable(const Matching& m, const MarketIndex& market);
bool is_stable(const Matching& m, const PreferenceProfile& profile);

// Sum of list distances over matched pairs.
double total_distance(const Matching& m, const MarketIndex& market);

}  // namespace parkshare
