#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

#include "parkshare/ids.hpp"

namespace parkshare {

inline constexpr std::size_t kDefaultSlots = 48;
inline constexpr double kDefaultInitialReputation = 1.0;
inline constexpr double kDefaultDriverSmoothing = 0.5;  // gamma
inline constexpr double kDefaultSpotSmoothing = 0.5;    // delta

// Day split into H equal slots of 24/H hours, one 0/1 flag per slot.
//
// For a driver a set flag means "needs parking in this slot". For a spot a
// set flag means "NOT rentable in this slot". A driver and a spot are time
// compatible iff the two vectors share no set flag.
class TimeVector {
 public:
  // All-zero vector of length `slots`; throws ParameterError when slots == 0.
  static TimeVector zeros(std::size_t slots);

  // Throws ParameterError on an empty vector or an entry other than 0/1.
  explicit TimeVector(std::vector<std::uint8_t> slots);
  TimeVector(std::initializer_list<std::uint8_t> slots);

  std::size_t size() const noexcept { return slots_.size(); }
  std::uint8_t operator[](std::size_t i) const { return slots_[i]; }
  const std::vector<std::uint8_t>& slots() const noexcept { return slots_; }

  // Number of slots set in both vectors. Throws StructuralError on a
  // length mismatch.
  std::size_t dot(const TimeVector& other) const;

  // Sets slots [first, first + count) modulo size().
  TimeVector with_block(std::size_t first, std::size_t count) const;

  friend bool operator==(const TimeVector&, const TimeVector&) = default;

 private:
  std::vector<std::uint8_t> slots_;
};

struct Location {
  double x = 0.0;  // km
  double y = 0.0;  // km

  friend bool operator==(const Location&, const Location&) = default;
};

struct Driver {
  DriverId id;
  Location location;
  double max_price = 0.0;            // per unit time
  double min_spot_reputation = 0.0;  // [0,1]
  TimeVector demand = TimeVector::zeros(kDefaultSlots);
  double reputation = kDefaultInitialReputation;  // [0,1]

  friend bool operator==(const Driver&, const Driver&) = default;
};

struct ParkingSpot {
  SpotId id;
  Location location;
  double price = 0.0;                  // per unit time
  double min_driver_reputation = 0.0;  // [0,1]
  TimeVector availability = TimeVector::zeros(kDefaultSlots);
  double reputation = kDefaultInitialReputation;  // [0,1]

  friend bool operator==(const ParkingSpot&, const ParkingSpot&) = default;
};

// Throw ParameterError when a price is negative or a reputation/threshold
// lies outside [0,1].
void validate(const Driver& d);
void validate(const ParkingSpot& p);

// The four pairwise constraints a driver/spot pair must meet to be matched:
// affordable price, both reputation thresholds met (ties count as met), and
// no overlap between the driver's demand and the spot's blocked slots.
// Throws StructuralError when the time vectors differ in length.
bool feasible(const Driver& d, const ParkingSpot& p);

// Exponential smoothing after a transaction: (1 - gamma) * prev + gamma * score.
// gamma in [0,1]; prev and score in [0,1].
double update_driver_reputation(double prev, double gamma, double score);

// Same rule for spots, but the smoothing weight must lie strictly inside (0,1).
double update_spot_reputation(double prev, double delta, double score);

}  // namespace parkshare
