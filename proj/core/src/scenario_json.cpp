#include <set>
#include <sstream>
#include <utility>

#include "json.hpp"
#include "parkshare/errors.hpp"
#include "parkshare/scenario.hpp"

namespace parkshare {
namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void bad_record(const std::string& who, const std::string& what) {
  throw IngestionError(who + ": " + what);
}

const json& field(const json& rec, const char* key, const std::string& who) {
  if (!rec.is_object()) bad_record(who, "record must be a JSON object");
  auto it = rec.find(key);
  if (it == rec.end()) bad_record(who, std::string("missing field '") + key + "'");
  return *it;
}

double number(const json& rec, const char* key, const std::string& who) {
  const auto& v = field(rec, key, who);
  if (!v.is_number()) bad_record(who, std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

double number_or(const json& rec, const char* key, double fallback, const std::string& who) {
  if (!rec.contains(key)) return fallback;
  return number(rec, key, who);
}

std::uint32_t identifier(const json& rec, const char* key, const std::string& who) {
  const auto& v = field(rec, key, who);
  if (!v.is_number_unsigned() || v.get<std::uint64_t>() > 0xffffffffull) {
    bad_record(who, std::string("field '") + key + "' must be a non-negative 32-bit integer");
  }
  return v.get<std::uint32_t>();
}

Location location(const json& rec, const std::string& who) {
  const auto& v = field(rec, "location", who);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    bad_record(who, "field 'location' must be [x, y]");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

TimeVector time_vector(const json& rec, const char* key, const std::string& who) {
  const auto& v = field(rec, key, who);
  if (!v.is_array() || v.empty()) bad_record(who, std::string("field '") + key + "' must be a non-empty array");
  std::vector<std::uint8_t> slots;
  slots.reserve(v.size());
  for (const auto& e : v) {
    if (!e.is_number_integer() || (e.get<std::int64_t>() != 0 && e.get<std::int64_t>() != 1)) {
      bad_record(who, std::string("field '") + key + "' entries must be 0 or 1");
    }
    slots.push_back(static_cast<std::uint8_t>(e.get<std::int64_t>()));
  }
  return TimeVector(std::move(slots));
}

std::string record_name(const char* kind, std::size_t k, const json& rec) {
  std::ostringstream os;
  os << kind << " record " << k;
  if (rec.is_object() && rec.contains("id")) os << " (id " << rec["id"].dump() << ")";
  return os.str();
}

Driver parse_driver(const json& rec, std::size_t k) {
  const auto who = record_name("driver", k, rec);
  Driver d;
  d.id = DriverId(identifier(rec, "id", who));
  d.location = location(rec, who);
  d.max_price = number(rec, "max_price", who);
  d.min_spot_reputation = number(rec, "min_spot_reputation", who);
  d.demand = time_vector(rec, "demand", who);
  d.reputation = number_or(rec, "reputation", kDefaultInitialReputation, who);
  return d;
}

ParkingSpot parse_spot(const json& rec, std::size_t k) {
  const auto who = record_name("spot", k, rec);
  ParkingSpot p;
  p.id = SpotId(identifier(rec, "id", who));
  p.location = location(rec, who);
  p.price = number(rec, "price", who);
  p.min_driver_reputation = number(rec, "min_driver_reputation", who);
  p.availability = time_vector(rec, "availability", who);
  p.reputation = number_or(rec, "reputation", kDefaultInitialReputation, who);
  return p;
}

ScenarioConfig parse_config(const json& c) {
  const std::string who = "config";
  if (!c.is_object()) bad_record(who, "must be a JSON object");
  ScenarioConfig cfg;
  cfg.num_drivers = identifier(c, "num_drivers", who);
  cfg.num_spots = identifier(c, "num_spots", who);
  cfg.edge_fraction = number(c, "edge_fraction", who);
  cfg.dist_lo = number(c, "dist_lo", who);
  cfg.dist_hi = number(c, "dist_hi", who);
  const auto& seed = field(c, "seed", who);
  if (!seed.is_number_unsigned()) bad_record(who, "field 'seed' must be a non-negative integer");
  cfg.seed = seed.get<std::uint64_t>();
  cfg.slots = identifier(c, "slots", who);
  const auto& mode = field(c, "constraint_mode", who);
  if (!mode.is_string()) bad_record(who, "field 'constraint_mode' must be a string");
  auto parsed = parse_constraint_mode(mode.get<std::string>());
  if (!parsed) bad_record(who, "unknown constraint_mode '" + mode.get<std::string>() + "'");
  cfg.mode = *parsed;
  try {
    cfg.validate();
  } catch (const ParameterError& e) {
    bad_record(who, e.what());
  }
  return cfg;
}

json location_json(const Location& l) { return json::array({l.x, l.y}); }

json slots_json(const TimeVector& t) {
  json a = json::array();
  for (auto v : t.slots()) a.push_back(static_cast<int>(v));
  return a;
}

}  // namespace

Scenario parse_scenario_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw IngestionError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw IngestionError("scenario document must be a JSON object");

  auto array_of = [&](const char* key) -> const json& {
    auto it = doc.find(key);
    if (it == doc.end() || !it->is_array()) {
      throw IngestionError(std::string("scenario document needs an array '") + key + "'");
    }
    return *it;
  };

  std::vector<Driver> drivers;
  std::vector<ParkingSpot> spots;
  const auto& driver_recs = array_of("drivers");
  const auto& spot_recs = array_of("spots");
  try {
    for (std::size_t k = 0; k < driver_recs.size(); ++k) drivers.push_back(parse_driver(driver_recs[k], k));
    for (std::size_t k = 0; k < spot_recs.size(); ++k) spots.push_back(parse_spot(spot_recs[k], k));
  } catch (const ParameterError& e) {
    throw IngestionError(e.what());
  }

  Scenario s = ingest(std::move(drivers), std::move(spots));
  if (doc.contains("config") && !doc["config"].is_null()) s.config = parse_config(doc["config"]);

  if (doc.contains("edges")) {
    const auto& edges = array_of("edges");
    std::set<DriverId> driver_ids;
    std::set<SpotId> spot_ids;
    for (const auto& d : s.drivers) driver_ids.insert(d.id);
    for (const auto& p : s.spots) spot_ids.insert(p.id);

    s.distances = DistanceModel::matrix();
    std::set<std::pair<DriverId, SpotId>> seen;
    for (std::size_t k = 0; k < edges.size(); ++k) {
      const auto who = "edge record " + std::to_string(k);
      const DriverId d(identifier(edges[k], "driver", who));
      const SpotId p(identifier(edges[k], "spot", who));
      const double km = number(edges[k], "distance", who);
      if (!driver_ids.count(d)) bad_record(who, "unknown driver " + std::to_string(d.value));
      if (!spot_ids.count(p)) bad_record(who, "unknown spot " + std::to_string(p.value));
      if (!seen.insert({d, p}).second) bad_record(who, "duplicate edge");
      try {
        s.distances.set(d, p, km);
      } catch (const ParameterError& e) {
        bad_record(who, e.what());
      }
      s.edges.push_back({d, p, km});
    }
    std::sort(s.edges.begin(), s.edges.end(), [](const Edge& a, const Edge& b) {
      return std::pair(a.driver, a.spot) < std::pair(b.driver, b.spot);
    });
  }
  return s;
}

std::string to_json(const Scenario& scenario) {
  json doc = json::object();
  if (scenario.config) {
    const auto& c = *scenario.config;
    doc["config"] = {{"num_drivers", c.num_drivers},
                     {"num_spots", c.num_spots},
                     {"edge_fraction", c.edge_fraction},
                     {"dist_lo", c.dist_lo},
                     {"dist_hi", c.dist_hi},
                     {"seed", c.seed},
                     {"slots", c.slots},
                     {"constraint_mode", std::string(to_string(c.mode))}};
  }
  json drivers = json::array();
  for (const auto& d : scenario.drivers) {
    drivers.push_back({{"id", d.id.value},
                       {"location", location_json(d.location)},
                       {"max_price", d.max_price},
                       {"min_spot_reputation", d.min_spot_reputation},
                       {"demand", slots_json(d.demand)},
                       {"reputation", d.reputation}});
  }
  json spots = json::array();
  for (const auto& p : scenario.spots) {
    spots.push_back({{"id", p.id.value},
                     {"location", location_json(p.location)},
                     {"price", p.price},
                     {"min_driver_reputation", p.min_driver_reputation},
                     {"availability", slots_json(p.availability)},
                     {"reputation", p.reputation}});
  }
  doc["drivers"] = std::move(drivers);
  doc["spots"] = std::move(spots);
  if (scenario.distances.mode() == DistanceModel::Mode::kMatrix) {
    json edges = json::array();
    for (const auto& e : scenario.edges) {
      edges.push_back({{"driver", e.driver.value}, {"spot", e.spot.value}, {"distance", e.distance}});
    }
    doc["edges"] = std::move(edges);
  }
  return doc.dump() + "\n";
}

}  // namespace parkshare
