#include "parkshare/domain.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "parkshare/errors.hpp"

namespace parkshare {
namespace {

bool in_unit_interval(double v) { return v >= 0.0 && v <= 1.0; }

void require_unit(double v, const char* what) {
  if (!in_unit_interval(v)) {
    std::ostringstream os;
    os << what << " must lie in [0,1], got " << v;
    throw ParameterError(os.str());
  }
}

void require_price(double v, const char* what) {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    std::ostringstream os;
    os << what << " must be a finite non-negative number, got " << v;
    throw ParameterError(os.str());
  }
}

}  // namespace

TimeVector TimeVector::zeros(std::size_t slots) {
  return TimeVector(std::vector<std::uint8_t>(slots, 0));
}

TimeVector::TimeVector(std::vector<std::uint8_t> slots) : slots_(std::move(slots)) {
  if (slots_.empty()) throw ParameterError("time vector needs at least one slot");
  for (auto v : slots_) {
    if (v > 1) throw ParameterError("time vector entries must be 0 or 1");
  }
}

TimeVector::TimeVector(std::initializer_list<std::uint8_t> slots)
    : TimeVector(std::vector<std::uint8_t>(slots)) {}

std::size_t TimeVector::dot(const TimeVector& other) const {
  if (other.size() != size()) {
    std::ostringstream os;
    os << "time vector length mismatch: " << size() << " vs " << other.size();
    throw StructuralError(os.str());
  }
  std::size_t sum = 0;
  for (std::size_t i = 0; i < slots_.size(); ++i) sum += slots_[i] & other.slots_[i];
  return sum;
}

TimeVector TimeVector::with_block(std::size_t first, std::size_t count) const {
  auto slots = slots_;
  for (std::size_t k = 0; k < count && k < slots.size(); ++k) {
    slots[(first + k) % slots.size()] = 1;
  }
  return TimeVector(std::move(slots));
}

void validate(const Driver& d) {
  require_price(d.max_price, "driver max_price");
  require_unit(d.min_spot_reputation, "driver min_spot_reputation");
  require_unit(d.reputation, "driver reputation");
}

void validate(const ParkingSpot& p) {
  require_price(p.price, "spot price");
  require_unit(p.min_driver_reputation, "spot min_driver_reputation");
  require_unit(p.reputation, "spot reputation");
}

bool feasible(const Driver& d, const ParkingSpot& p) {
  // A length mismatch throws even when a price or reputation test fails.
  const bool time_compatible = d.demand.dot(p.availability) == 0;
  return d.max_price >= p.price && d.min_spot_reputation <= p.reputation &&
         p.min_driver_reputation <= d.reputation && time_compatible;
}

double update_driver_reputation(double prev, double gamma, double score) {
  if (!in_unit_interval(gamma)) {
    std::ostringstream os;
    os << "gamma must lie in [0,1], got " << gamma;
    throw ParameterError(os.str());
  }
  require_unit(prev, "previous reputation");
  require_unit(score, "score");
  return (1.0 - gamma) * prev + gamma * score;
}

double update_spot_reputation(double prev, double delta, double score) {
  if (!(delta > 0.0 && delta < 1.0)) {
    std::ostringstream os;
    os << "delta must lie in (0,1), got " << delta;
    throw ParameterError(os.str());
  }
  require_unit(prev, "previous reputation");
  require_unit(score, "score");
  return (1.0 - delta) * prev + delta * score;
}

}  // namespace parkshare
