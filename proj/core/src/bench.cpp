#include "parkshare/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "parkshare/baselines.hpp"
#include "parkshare/errors.hpp"
#include "parkshare/hungarian.hpp"

namespace parkshare {

std::string_view matcher_name(MatcherKind kind) {
  switch (kind) {
    case MatcherKind::kMm: return "mm";
    case MatcherKind::kGreedy: return "greedy";
    case MatcherKind::kRandom: return "random";
    case MatcherKind::kKm: return "km";
  }
  return "?";
}

std::optional<MatcherKind> parse_matcher(std::string_view name) {
  for (auto kind : kAllMatchers) {
    if (matcher_name(kind) == name) return kind;
  }
  return std::nullopt;
}

std::vector<MatcherKind> parse_matcher_list(std::string_view csv) {
  std::vector<MatcherKind> out;
  std::size_t start = 0;
  while (start <= csv.size()) {
    const auto comma = csv.find(',', start);
    const auto token = csv.substr(start, comma == std::string_view::npos ? csv.npos : comma - start);
    if (token.empty()) throw ParameterError("empty matcher name in list '" + std::string(csv) + "'");
    const auto kind = parse_matcher(token);
    if (!kind) throw ParameterError("unknown matcher '" + std::string(token) + "'");
    if (std::find(out.begin(), out.end(), *kind) != out.end()) {
      throw ParameterError("matcher '" + std::string(token) + "' listed twice");
    }
    out.push_back(*kind);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

namespace {

double realized_eta(const MarketIndex& market) {
  const double cells = static_cast<double>(market.num_drivers()) * market.num_spots();
  if (cells == 0) return 0.0;
  std::size_t listed = 0;
  for (std::size_t i = 0; i < market.num_drivers(); ++i) {
    for (const auto j : market.driver_list(i)) listed += market.spot_rank(j, i) != MarketIndex::kUnranked;
  }
  return static_cast<double>(listed) / cells;
}

}  // namespace

PreparedScenario::PreparedScenario(const Scenario& s)
    : scenario(&s),
      profile(s.preferences()),
      market(profile),
      eta(s.config ? s.config->edge_fraction : realized_eta(market)) {}

MatcherOutput run_matcher(const PreparedScenario& prepared, MatcherKind kind,
                          std::uint64_t seed) {
  using clock = std::chrono::steady_clock;
  MatcherOutput out;
  const auto start = clock::now();
  switch (kind) {
    case MatcherKind::kMm: {
      auto result = mm_match(prepared.market);
      out.matching = std::move(result.matching);
      out.trace = result.trace;
      break;
    }
    case MatcherKind::kGreedy: out.matching = greedy_match(prepared.market); break;
    case MatcherKind::kRandom: out.matching = random_match(prepared.market, seed); break;
    case MatcherKind::kKm: out.matching = hungarian_match(prepared.market); break;
  }
  out.wall_time_s = std::chrono::duration<double>(clock::now() - start).count();
  return out;
}

double matching_distance(const Scenario& scenario, const Matching& m) {
  double total = 0.0;
  for (const auto& mp : m.pairs) {
    auto d = std::lower_bound(scenario.drivers.begin(), scenario.drivers.end(), mp.driver,
                              [](const Driver& x, DriverId id) { return x.id < id; });
    auto p = std::lower_bound(scenario.spots.begin(), scenario.spots.end(), mp.spot,
                              [](const ParkingSpot& x, SpotId id) { return x.id < id; });
    if (d == scenario.drivers.end() || d->id != mp.driver || p == scenario.spots.end() ||
        p->id != mp.spot) {
      throw StructuralError("matching names a participant missing from the scenario");
    }
    const auto km = distance(scenario.distances, *d, *p);
    if (!km) throw StructuralError("matched pair has no distance in the scenario");
    total += *km;
  }
  return total;
}

namespace {

RunMetrics measure(const PreparedScenario& prepared, MatcherKind kind, std::uint64_t seed) {
  const auto out = run_matcher(prepared, kind, seed);
  RunMetrics r;
  r.matcher = std::string(matcher_name(kind));
  r.drivers = static_cast<std::uint32_t>(prepared.market.num_drivers());
  r.spots = static_cast<std::uint32_t>(prepared.market.num_spots());
  r.eta = prepared.eta;
  r.seed = seed;
  r.total_distance = matching_distance(*prepared.scenario, out.matching);
  r.matched_count = out.matching.size();
  r.blocking_pairs = find_blocking_pairs(out.matching, prepared.market).size();
  if (out.trace) r.proposals = out.trace->proposal_count;
  r.wall_time_s = out.wall_time_s;
  return r;
}

// Runs body(cell) for cell in [0, cells), possibly on several threads.
template <typename Body>
void for_each_cell(std::size_t cells, unsigned threads, Body body) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(cells)));
  if (threads <= 1) {
    for (std::size_t c = 0; c < cells; ++c) body(c);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::jthread> workers;
  for (unsigned t = 0; t < threads; ++t) {
    workers.emplace_back([&] {
      for (std::size_t c = next++; c < cells; c = next++) {
        try {
          body(c);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  workers.clear();
  if (error) std::rethrow_exception(error);
}

ScenarioConfig square_config(std::uint32_t size, double eta, DistanceRange range,
                             std::uint64_t seed) {
  ScenarioConfig cfg;
  cfg.num_drivers = size;
  cfg.num_spots = size;
  cfg.edge_fraction = eta;
  cfg.dist_lo = range.lo;
  cfg.dist_hi = range.hi;
  cfg.seed = seed;
  return cfg;
}

std::vector<RunMetrics> sweep(std::size_t points, const SweepOptions& options,
                              const std::function<ScenarioConfig(std::size_t, std::uint64_t)>& config_for) {
  const std::size_t nseeds = options.seeds.size();
  const std::size_t nm = options.matchers.size();
  // Validate up front so a bad point fails before any work starts.
  for (std::size_t k = 0; k < points; ++k) {
    for (auto seed : options.seeds) config_for(k, seed).validate();
  }
  std::vector<RunMetrics> rows(points * nseeds * nm);
  for_each_cell(points * nseeds, options.threads, [&](std::size_t cell) {
    const auto k = cell / nseeds;
    const auto seed = options.seeds[cell % nseeds];
    const auto scenario = generate(config_for(k, seed));
    const PreparedScenario prepared(scenario);
    for (std::size_t m = 0; m < nm; ++m) {
      rows[cell * nm + m] = measure(prepared, options.matchers[m], seed);
    }
  });
  return rows;
}

}  // namespace

std::vector<RunMetrics> run_matchers(const Scenario& scenario,
                                     std::span<const MatcherKind> matchers,
                                     std::span<const std::uint64_t> seeds) {
  const PreparedScenario prepared(scenario);
  std::vector<RunMetrics> rows;
  rows.reserve(matchers.size() * seeds.size());
  for (auto seed : seeds) {
    for (auto kind : matchers) rows.push_back(measure(prepared, kind, seed));
  }
  return rows;
}

std::vector<RunMetrics> sweep_size(std::span<const std::uint32_t> sizes, double eta,
                                   const SweepOptions& options) {
  return sweep(sizes.size(), options, [&](std::size_t k, std::uint64_t seed) {
    return square_config(sizes[k], eta, options.range, seed);
  });
}

std::vector<RunMetrics> sweep_density(std::span<const double> etas, std::uint32_t size,
                                      const SweepOptions& options) {
  return sweep(etas.size(), options, [&](std::size_t k, std::uint64_t seed) {
    return square_config(size, etas[k], options.range, seed);
  });
}

namespace {

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const auto n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

std::vector<AggregateRow> aggregate(std::span<const RunMetrics> rows) {
  using Key = std::tuple<std::string, std::uint32_t, std::uint32_t, double>;
  std::vector<Key> order;
  std::map<Key, std::vector<const RunMetrics*>> groups;
  for (const auto& r : rows) {
    Key key{r.matcher, r.drivers, r.spots, r.eta};
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) order.push_back(key);
    it->second.push_back(&r);
  }

  std::vector<AggregateRow> out;
  out.reserve(order.size());
  for (const auto& key : order) {
    const auto& group = groups[key];
    AggregateRow a;
    std::tie(a.matcher, a.drivers, a.spots, a.eta) = key;
    a.runs = group.size();
    std::vector<double> times;
    std::size_t with_proposals = 0;
    for (const auto* r : group) {
      a.mean_total_distance += r->total_distance;
      a.mean_matched += static_cast<double>(r->matched_count);
      a.mean_blocking += static_cast<double>(r->blocking_pairs);
      if (r->proposals) {
        a.mean_proposals += static_cast<double>(*r->proposals);
        ++with_proposals;
      }
      times.push_back(r->wall_time_s);
    }
    const auto n = static_cast<double>(group.size());
    a.mean_total_distance /= n;
    a.mean_matched /= n;
    a.mean_blocking /= n;
    if (with_proposals) a.mean_proposals /= static_cast<double>(with_proposals);
    a.median_wall_time_s = median(std::move(times));
    out.push_back(std::move(a));
  }
  return out;
}

std::vector<TimingRow> time_matchers(std::span<const std::uint32_t> sizes, double eta,
                                     const SweepOptions& options, unsigned repeats) {
  repeats = std::max(1u, repeats);
  std::vector<TimingRow> out;
  for (const auto size : sizes) {
    std::vector<std::vector<double>> samples(options.matchers.size());
    for (const auto seed : options.seeds) {
      const auto scenario = generate(square_config(size, eta, options.range, seed));
      const PreparedScenario prepared(scenario);
      for (std::size_t m = 0; m < options.matchers.size(); ++m) {
        for (unsigned rep = 0; rep < repeats; ++rep) {
          samples[m].push_back(run_matcher(prepared, options.matchers[m], seed).wall_time_s);
        }
      }
    }
    for (std::size_t m = 0; m < options.matchers.size(); ++m) {
      TimingRow row;
      row.matcher = std::string(matcher_name(options.matchers[m]));
      row.size = size;
      row.eta = eta;
      row.samples = samples[m].size();
      row.median_wall_time_s = median(std::move(samples[m]));
      out.push_back(std::move(row));
    }
  }
  return out;
}

double loglog_slope(std::span<const double> sizes, std::span<const double> times) {
  if (sizes.size() != times.size() || sizes.size() < 2) {
    throw ParameterError("log-log slope needs at least two (size, time) points");
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const auto n = static_cast<double>(sizes.size());
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    if (!(sizes[k] > 0) || !(times[k] > 0)) throw ParameterError("log-log slope needs positive values");
    const double x = std::log(sizes[k]);
    const double y = std::log(times[k]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0) throw ParameterError("log-log slope needs at least two distinct sizes");
  return (n * sxy - sx * sy) / denom;
}

namespace {

std::string fmt(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

using ojson = nlohmann::ordered_json;

}  // namespace

std::string to_csv(std::span<const RunMetrics> rows) {
  std::ostringstream os;
  os << kCsvHeader << '\n';
  for (const auto& r : rows) {
    os << r.matcher << ',' << r.drivers << ',' << r.spots << ',' << fmt(r.eta) << ',' << r.seed
       << ',' << fmt(r.total_distance) << ',' << r.matched_count << ',' << r.blocking_pairs << ',';
    if (r.proposals) os << *r.proposals;
    os << ',' << fmt(r.wall_time_s) << '\n';
  }
  return os.str();
}

std::string to_json(std::span<const RunMetrics> rows) {
  ojson a = ojson::array();
  for (const auto& r : rows) {
    ojson o = {{"matcher", r.matcher},
               {"drivers", r.drivers},
               {"spots", r.spots},
               {"eta", r.eta},
               {"seed", r.seed},
               {"total_distance", r.total_distance},
               {"matched_count", r.matched_count},
               {"blocking_pairs", r.blocking_pairs}};
    o["proposals"] = r.proposals ? ojson(*r.proposals) : ojson(nullptr);
    o["wall_time_s"] = r.wall_time_s;
    a.push_back(std::move(o));
  }
  return a.dump(2) + "\n";
}

std::string aggregate_to_csv(std::span<const AggregateRow> rows) {
  std::ostringstream os;
  os << "matcher,drivers,spots,eta,runs,mean_total_distance,mean_matched_count,"
        "mean_blocking_pairs,mean_proposals,median_wall_time_s\n";
  for (const auto& a : rows) {
    os << a.matcher << ',' << a.drivers << ',' << a.spots << ',' << fmt(a.eta) << ',' << a.runs
       << ',' << fmt(a.mean_total_distance) << ',' << fmt(a.mean_matched) << ','
       << fmt(a.mean_blocking) << ',' << fmt(a.mean_proposals) << ','
       << fmt(a.median_wall_time_s) << '\n';
  }
  return os.str();
}

std::string timing_to_csv(std::span<const TimingRow> rows) {
  std::ostringstream os;
  os << "matcher,size,eta,samples,median_wall_time_s\n";
  for (const auto& t : rows) {
    os << t.matcher << ',' << t.size << ',' << fmt(t.eta) << ',' << t.samples << ','
       << fmt(t.median_wall_time_s) << '\n';
  }
  return os.str();
}

std::string timing_to_json(std::span<const TimingRow> rows) {
  ojson a = ojson::array();
  for (const auto& t : rows) {
    a.push_back({{"matcher", t.matcher},
                 {"size", t.size},
                 {"eta", t.eta},
                 {"samples", t.samples},
                 {"median_wall_time_s", t.median_wall_time_s}});
  }
  return a.dump(2) + "\n";
}

}  // namespace parkshare
