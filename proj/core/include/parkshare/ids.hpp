#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <ostream>

namespace parkshare {

// Strongly typed participant identifier. Drivers and spots live in separate
// id spaces, so a DriverId never compares against a SpotId.
template <typename Tag>
struct Id {
  std::uint32_t value = 0;

  constexpr Id() = default;
  constexpr explicit Id(std::uint32_t v) : value(v) {}

  friend constexpr auto operator<=>(Id, Id) = default;

  friend std::ostream& operator<<(std::ostream& os, Id id) {
    return os << Tag::prefix << id.value;
  }
};

struct DriverTag {
  static constexpr const char* prefix = "D";
};
struct SpotTag {
  static constexpr const char* prefix = "P";
};

using DriverId = Id<DriverTag>;
using SpotId = Id<SpotTag>;

}  // namespace parkshare

template <typename Tag>
struct std::hash<parkshare::Id<Tag>> {
  std::size_t operator()(parkshare::Id<Tag> id) const noexcept {
    return std::hash<std::uint32_t>{}(id.value);
  }
};
