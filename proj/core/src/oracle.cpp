#include "parkshare/oracle.hpp"

#include <algorithm>
#include <sstream>

#include "parkshare/errors.hpp"

namespace parkshare {
namespace {

void check_size(const PreferenceProfile& profile) {
  if (profile.drivers.size() > kMaxEnumerationSide ||
      profile.spots.size() > kMaxEnumerationSide) {
    std::ostringstream os;
    os << "exhaustive enumeration is limited to " << kMaxEnumerationSide
       << " participants per side, got " << profile.drivers.size() << "x"
       << profile.spots.size();
    throw SizeError(os.str());
  }
}

template <typename List, typename IdT>
std::optional<std::size_t> position(const List& list, IdT id) {
  for (std::size_t k = 0; k < list.ranked.size(); ++k) {
    if (list.ranked[k].id == id) return k;
  }
  return std::nullopt;
}

const SpotPreferenceList* spot_list(const PreferenceProfile& profile, SpotId p) {
  for (const auto& l : profile.spots) {
    if (l.owner == p) return &l;
  }
  return nullptr;
}

struct Enumerator {
  const PreferenceProfile& profile;
  std::vector<std::vector<SpotId>> options;  // mutually listed spots per driver
  std::vector<MatchedPair> current;
  std::vector<SpotId> used;
  std::vector<Matching> out;

  void run(std::size_t k) {
    if (k == profile.drivers.size()) {
      out.push_back(make());
      return;
    }
    run(k + 1);  // driver k stays single
    for (auto p : options[k]) {
      if (std::find(used.begin(), used.end(), p) != used.end()) continue;
      used.push_back(p);
      current.push_back({profile.drivers[k].owner, p});
      run(k + 1);
      current.pop_back();
      used.pop_back();
    }
  }

  Matching make() const {
    Matching m;
    m.pairs = current;
    std::sort(m.pairs.begin(), m.pairs.end());
    for (const auto& l : profile.drivers) {
      bool matched = std::any_of(current.begin(), current.end(),
                                 [&](const MatchedPair& mp) { return mp.driver == l.owner; });
      if (!matched) m.unmatched_drivers.push_back(l.owner);
    }
    for (const auto& l : profile.spots) {
      if (std::find(used.begin(), used.end(), l.owner) == used.end()) {
        m.unmatched_spots.push_back(l.owner);
      }
    }
    std::sort(m.unmatched_drivers.begin(), m.unmatched_drivers.end());
    std::sort(m.unmatched_spots.begin(), m.unmatched_spots.end());
    return m;
  }
};

}  // namespace

std::vector<Matching> enumerate_matchings(const PreferenceProfile& profile) {
  check_size(profile);
  Enumerator e{profile, {}, {}, {}, {}};
  for (const auto& dl : profile.drivers) {
    std::vector<SpotId> opts;
    for (const auto& entry : dl.ranked) {
      const auto* sl = spot_list(profile, entry.id);
      if (sl && position(*sl, dl.owner)) opts.push_back(entry.id);
    }
    e.options.push_back(std::move(opts));
  }
  e.run(0);
  return std::move(e.out);
}

bool brute_force_is_stable(const Matching& m, const PreferenceProfile& profile) {
  for (const auto& dl : profile.drivers) {
    for (const auto& sl : profile.spots) {
      const auto d = dl.owner;
      const auto p = sl.owner;
      const auto pos_p = position(dl, p);
      const auto pos_d = position(sl, d);
      if (!pos_p || !pos_d) continue;

      const auto partner_of_d = m.spot_of(d);
      const auto partner_of_p = m.driver_of(p);
      if (partner_of_d && *partner_of_d == p) continue;

      bool driver_wants = true;
      if (partner_of_d) {
        const auto cur = position(dl, *partner_of_d);
        driver_wants = cur && *pos_p < *cur;
      }
      bool spot_wants = true;
      if (partner_of_p) {
        const auto cur = position(sl, *partner_of_p);
        spot_wants = cur && *pos_d < *cur;
      }
      if (driver_wants && spot_wants) return false;
    }
  }
  return true;
}

std::vector<Matching> enumerate_stable_matchings(const PreferenceProfile& profile) {
  auto all = enumerate_matchings(profile);
  std::vector<Matching> stable;
  for (auto& m : all) {
    if (brute_force_is_stable(m, profile)) stable.push_back(std::move(m));
  }
  return stable;
}

}  // namespace parkshare
