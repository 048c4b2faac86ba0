#pragma once

#include <cstddef>
#include <vector>

#include "parkshare/matching.hpp"
#include "parkshare/preferences.hpp"

namespace parkshare {

// Exhaustive reference routines for small instances. They read the
// PreferenceProfile directly and share no code with the matchers or with
// find_blocking_pairs, so they can serve as an independent check.

inline constexpr std::size_t kMaxEnumerationSide = 8;

// Every one-to-one partial matching that uses only mutually listed pairs,
// including the empty one. Throws SizeError beyond 8 participants per side.
std::vector<Matching> enumerate_matchings(const PreferenceProfile& profile);

// Brute-force stability verdict: scans all driver/spot pairs.
bool brute_force_is_stable(const Matching& m, const PreferenceProfile& profile);

// All stable matchings (never empty for a consistent profile). Throws
// SizeError beyond 8 participants per side.
std::vector<Matching> enumerate_stable_matchings(const PreferenceProfile& profile);

}  // namespace parkshare
