#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "parkshare/matching.hpp"
#include "parkshare/preferences.hpp"
#include "parkshare/scenario.hpp"

namespace parkshare {

enum class MatcherKind { kMm, kGreedy, kRandom, kKm };

inline constexpr MatcherKind kAllMatchers[] = {MatcherKind::kMm, MatcherKind::kGreedy,
                                               MatcherKind::kRandom, MatcherKind::kKm};

std::string_view matcher_name(MatcherKind kind);
std::optional<MatcherKind> parse_matcher(std::string_view name);
// Comma separated names ("mm,greedy,random,km"). Throws ParameterError on an
// unknown or repeated name, or an empty list.
std::vector<MatcherKind> parse_matcher_list(std::string_view csv);

struct RunMetrics {
  std::string matcher;
  std::uint32_t drivers = 0;
  std::uint32_t spots = 0;
  double eta = 0.0;
  std::uint64_t seed = 0;
  double total_distance = 0.0;
  std::size_t matched_count = 0;
  std::size_t blocking_pairs = 0;
  std::optional<std::uint64_t> proposals;  // MM only
  double wall_time_s = 0.0;
};

// Preference lists and their indexed form, built once per scenario.
struct PreparedScenario {
  explicit PreparedScenario(const Scenario& s);

  const Scenario* scenario;
  PreferenceProfile profile;
  MarketIndex market;
  double eta;  // configured edge fraction, or the realized one for ingested data
};

struct MatcherOutput {
  Matching matching;
  std::optional<ProposalTrace> trace;
  double wall_time_s = 0.0;
};

// Runs one matcher; the timer covers the matcher call only.
MatcherOutput run_matcher(const PreparedScenario& prepared, MatcherKind kind,
                          std::uint64_t seed);

// Sum of scenario distances over the matched pairs, looked up from the
// scenario's own distance model rather than from any matcher state.
double matching_distance(const Scenario& scenario, const Matching& m);

// One row per (seed, matcher), seeds outermost. The seed drives only the
// random matcher here; the scenario is fixed.
std::vector<RunMetrics> run_matchers(const Scenario& scenario,
                                     std::span<const MatcherKind> matchers,
                                     std::span<const std::uint64_t> seeds);

struct DistanceRange {
  double lo = 0.0;
  double hi = 5.0;
};

struct SweepOptions {
  std::vector<std::uint64_t> seeds{0};
  std::vector<MatcherKind> matchers{std::begin(kAllMatchers), std::end(kAllMatchers)};
  DistanceRange range;
  unsigned threads = 1;  // cells may run concurrently; row order is fixed
};

// Square instances (n drivers, n spots) at a fixed edge fraction. Rows are
// ordered by (size, seed, matcher); each (size, seed) cell gets a freshly
// generated scenario with that seed.
std::vector<RunMetrics> sweep_size(std::span<const std::uint32_t> sizes, double eta,
                                   const SweepOptions& options);

// Fixed square size, varying edge fraction. Rows ordered by (eta, seed, matcher).
std::vector<RunMetrics> sweep_density(std::span<const double> etas, std::uint32_t size,
                                      const SweepOptions& options);

struct AggregateRow {
  std::string matcher;
  std::uint32_t drivers = 0;
  std::uint32_t spots = 0;
  double eta = 0.0;
  std::size_t runs = 0;
  double mean_total_distance = 0.0;
  double mean_matched = 0.0;
  double mean_blocking = 0.0;
  double mean_proposals = 0.0;
  double median_wall_time_s = 0.0;
};

// Seed means per (matcher, drivers, spots, eta), in first-appearance order.
std::vector<AggregateRow> aggregate(std::span<const RunMetrics> rows);

struct TimingRow {
  std::string matcher;
  std::uint32_t size = 0;
  double eta = 0.0;
  std::size_t samples = 0;
  double median_wall_time_s = 0.0;
};

// Median matcher wall time per (matcher, size) over seeds x repeats. Always
// runs sequentially. Rows ordered by (size, matcher).
std::vector<TimingRow> time_matchers(std::span<const std::uint32_t> sizes, double eta,
                                     const SweepOptions& options, unsigned repeats = 1);

// Least-squares slope of log(time) against log(size).
double loglog_slope(std::span<const double> sizes, std::span<const double> times);

inline constexpr std::string_view kCsvHeader =
    "matcher,drivers,spots,eta,seed,total_distance,matched_count,blocking_pairs,"
    "proposals,wall_time_s";

std::string to_csv(std::span<const RunMetrics> rows);
std::string to_json(std::span<const RunMetrics> rows);
std::string aggregate_to_csv(std::span<const AggregateRow> rows);
std::string timing_to_csv(std::span<const TimingRow> rows);
std::string timing_to_json(std::span<const TimingRow> rows);

}  // namespace parkshare
