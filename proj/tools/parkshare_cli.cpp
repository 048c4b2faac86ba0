// parkshare: generate scenarios, run matchers, sweep and time them.
//
// Exit codes: 0 success, 2 configuration/input error, 3 verification failure.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "parkshare/bench.hpp"
#include "parkshare/errors.hpp"
#include "parkshare/matching.hpp"
#include "parkshare/oracle.hpp"
#include "parkshare/scenario.hpp"

namespace {

using namespace parkshare;
using ojson = nlohmann::ordered_json;

constexpr int kExitConfig = 2;
constexpr int kExitVerification = 3;

struct CommonFlags {
  std::uint64_t seed = 0;
  std::size_t seeds = 1;
  std::uint32_t drivers = 50;
  std::uint32_t spots = 50;
  double eta = 0.2;
  double dist_lo = 0.0;
  double dist_hi = 5.0;
  std::size_t slots = kDefaultSlots;
  std::string mode = "edges-only";
  std::string matchers = "mm,greedy,random,km";
  std::string out;
  std::string format;
  std::string scenario;
  unsigned threads = 1;
};

void add_generation_flags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--seed", f.seed, "Base seed")->capture_default_str();
  cmd->add_option("--drivers", f.drivers, "Number of drivers")->capture_default_str();
  cmd->add_option("--spots", f.spots, "Number of parking spots")->capture_default_str();
  cmd->add_option("--eta", f.eta, "Edge fraction |E|/(|D||P|) in (0,1]")->capture_default_str();
  cmd->add_option("--dist-lo", f.dist_lo, "Lower distance bound (km)")->capture_default_str();
  cmd->add_option("--dist-hi", f.dist_hi, "Upper distance bound (km)")->capture_default_str();
  cmd->add_option("--slots", f.slots, "Time slots per day")->capture_default_str();
  cmd->add_option("--mode", f.mode, "Constraint mode")
      ->check(CLI::IsMember({"edges-only", "full"}))
      ->capture_default_str();
}

void add_output_flags(CLI::App* cmd, CommonFlags& f, const std::string& default_format) {
  f.format = default_format;
  cmd->add_option("--out", f.out, "Output file (default: stdout)");
  cmd->add_option("--format", f.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
}

void add_run_flags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--seeds", f.seeds, "Number of seeds, starting at --seed")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--matchers", f.matchers, "Comma separated subset of mm,greedy,random,km")
      ->capture_default_str();
}

ScenarioConfig to_config(const CommonFlags& f, std::uint64_t seed) {
  ScenarioConfig c;
  c.num_drivers = f.drivers;
  c.num_spots = f.spots;
  c.edge_fraction = f.eta;
  c.dist_lo = f.dist_lo;
  c.dist_hi = f.dist_hi;
  c.seed = seed;
  c.slots = f.slots;
  c.mode = *parse_constraint_mode(f.mode);
  return c;
}

std::vector<std::uint64_t> seed_list(const CommonFlags& f) {
  std::vector<std::uint64_t> seeds(f.seeds);
  for (std::size_t k = 0; k < f.seeds; ++k) seeds[k] = f.seed + k;
  return seeds;
}

Scenario scenario_from(const CommonFlags& f) {
  if (!f.scenario.empty()) return load_scenario(f.scenario);
  return generate(to_config(f, f.seed));
}

void emit(const CommonFlags& f, const std::string& text) {
  if (f.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(f.out, std::ios::binary);
  if (!out) throw IngestionError("cannot write " + f.out);
  out << text;
}

// "50,100,150" or "50:500:50" (inclusive range).
template <typename T>
std::vector<T> parse_points(const std::string& text) {
  std::vector<T> out;
  auto number = [&](const std::string& tok) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size() || tok.empty()) throw ParameterError("bad number '" + tok + "' in '" + text + "'");
    return v;
  };
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string tok; std::getline(ss, tok, ':');) parts.push_back(tok);
    if (parts.size() != 3) throw ParameterError("range must be lo:hi:step, got '" + text + "'");
    const double lo = number(parts[0]), hi = number(parts[1]), step = number(parts[2]);
    if (!(step > 0) || hi < lo) throw ParameterError("bad range '" + text + "'");
    const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    for (std::size_t k = 0; k < count; ++k) {
      // 12 significant digits, so 0.05 steps give 0.15 rather than 0.15000000000000002.
      std::ostringstream os;
      os.precision(12);
      os << lo + step * static_cast<double>(k);
      out.push_back(static_cast<T>(std::stod(os.str())));
    }
    return out;
  }
  std::stringstream ss(text);
  for (std::string tok; std::getline(ss, tok, ',');) out.push_back(static_cast<T>(number(tok)));
  return out;
}

std::vector<std::uint32_t> parse_sizes(const std::string& text) {
  std::vector<std::uint32_t> out;
  for (double v : parse_points<double>(text)) {
    if (!(v >= 1) || v != std::floor(v) || v > 1e6) {
      throw ParameterError("sizes must be positive integers, got '" + text + "'");
    }
    out.push_back(static_cast<std::uint32_t>(v));
  }
  return out;
}

SweepOptions sweep_options(const CommonFlags& f) {
  SweepOptions o;
  o.seeds = seed_list(f);
  o.matchers = parse_matcher_list(f.matchers);
  o.range = {f.dist_lo, f.dist_hi};
  o.threads = std::max(1u, f.threads);
  return o;
}

std::string render(const CommonFlags& f, const std::vector<RunMetrics>& rows, bool aggregated) {
  if (aggregated) return aggregate_to_csv(aggregate(rows));
  return f.format == "json" ? to_json(rows) : to_csv(rows);
}

// Stability of every selected matcher's output, plus, for MM, the proposal
// bound and (on instances up to 8x8) agreement with exhaustive enumeration.
int run_verify(const CommonFlags& f) {
  const auto scenario = scenario_from(f);
  const PreparedScenario prepared(scenario);
  const auto& market = prepared.market;
  const auto matchers = parse_matcher_list(f.matchers);

  ojson report = ojson::object();
  std::vector<std::string> failures;
  report["drivers"] = market.num_drivers();
  report["spots"] = market.num_spots();

  ojson per_matcher = ojson::object();
  for (const auto kind : matchers) {
    const auto out = run_matcher(prepared, kind, f.seed);
    const auto blocking = find_blocking_pairs(out.matching, market);
    const std::string name(matcher_name(kind));
    ojson entry = {{"matched", out.matching.size()}, {"blocking_pairs", blocking.size()}};
    if (!blocking.empty()) failures.push_back(name + " output has blocking pairs");
    if (out.trace) {
      const auto bound = static_cast<std::uint64_t>(market.num_drivers()) * market.num_spots();
      entry["proposals"] = out.trace->proposal_count;
      entry["proposal_bound"] = bound;
      if (out.trace->proposal_count > bound) failures.push_back("proposal count exceeds |D|x|P|");
    }
    per_matcher[name] = std::move(entry);
  }
  report["matchers"] = std::move(per_matcher);

  const bool small = market.num_drivers() <= kMaxEnumerationSide &&
                     market.num_spots() <= kMaxEnumerationSide;
  const bool check_oracle =
      small && std::find(matchers.begin(), matchers.end(), MatcherKind::kMm) != matchers.end();
  report["oracle_checked"] = check_oracle;
  if (check_oracle) {
    const auto mm = mm_match(market).matching;
    const auto stable = enumerate_stable_matchings(prepared.profile);
    report["stable_matchings"] = stable.size();
    if (std::find(stable.begin(), stable.end(), mm) == stable.end()) {
      failures.push_back("mm output is not among the enumerated stable matchings");
    }

    std::set<DriverId> mm_matched;
    for (const auto& p : mm.pairs) mm_matched.insert(p.driver);
    bool same_set = true;
    bool optimal = true;
    for (const auto& s : stable) {
      std::set<DriverId> matched;
      for (const auto& p : s.pairs) {
        matched.insert(p.driver);
        const auto i = *market.driver_index(p.driver);
        const auto mine = mm.spot_of(p.driver);
        if (!mine || market.driver_rank(i, *market.spot_index(*mine)) >
                         market.driver_rank(i, *market.spot_index(p.spot))) {
          optimal = false;
        }
      }
      same_set = same_set && matched == mm_matched;
    }
    if (!same_set) failures.push_back("stable matchings disagree on the matched driver set");
    if (!optimal) failures.push_back("mm output is not driver-optimal");
  }

  report["ok"] = failures.empty();
  report["failures"] = failures;
  emit(f, report.dump(2) + "\n");
  return failures.empty() ? 0 : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stable matching of drivers to shared parking spots, with baselines and benchmarks"};
  app.require_subcommand(1);

  CommonFlags gen_f, match_f, size_f, dens_f, time_f, verify_f;

  auto* gen = app.add_subcommand("generate", "Emit a seeded synthetic scenario as JSON");
  add_generation_flags(gen, gen_f);
  gen->add_option("--out", gen_f.out, "Output file (default: stdout)");

  auto* match = app.add_subcommand("match", "Run matchers on one scenario and emit metrics");
  add_generation_flags(match, match_f);
  add_run_flags(match, match_f);
  add_output_flags(match, match_f, "json");
  match->add_option("--scenario", match_f.scenario, "Scenario or record JSON file (overrides generation flags)");

  std::string size_points = "50:500:50";
  bool size_aggregate = false;
  auto* sweep_sz = app.add_subcommand("sweep-size", "Sweep square instance sizes at a fixed edge fraction");
  add_generation_flags(sweep_sz, size_f);
  add_run_flags(sweep_sz, size_f);
  add_output_flags(sweep_sz, size_f, "csv");
  sweep_sz->add_option("--sizes", size_points, "Sizes: list a,b,c or range lo:hi:step")->capture_default_str();
  sweep_sz->add_option("--threads", size_f.threads, "Worker threads")->capture_default_str();
  sweep_sz->add_flag("--aggregate", size_aggregate, "Emit per-size seed means instead of raw rows");

  std::string eta_points = "0.05:1:0.05";
  std::uint32_t dens_size = 250;
  bool dens_aggregate = false;
  auto* sweep_dn = app.add_subcommand("sweep-density", "Sweep the edge fraction at a fixed square size");
  add_generation_flags(sweep_dn, dens_f);
  add_run_flags(sweep_dn, dens_f);
  add_output_flags(sweep_dn, dens_f, "csv");
  sweep_dn->add_option("--etas", eta_points, "Edge fractions: list or range lo:hi:step")->capture_default_str();
  sweep_dn->add_option("--size", dens_size, "Drivers (= spots)")->capture_default_str();
  sweep_dn->add_option("--threads", dens_f.threads, "Worker threads")->capture_default_str();
  sweep_dn->add_flag("--aggregate", dens_aggregate, "Emit per-eta seed means instead of raw rows");

  std::string time_points = "100:500:100";
  unsigned repeats = 5;
  auto* timing = app.add_subcommand("time", "Median matcher wall time per size");
  add_generation_flags(timing, time_f);
  add_run_flags(timing, time_f);
  add_output_flags(timing, time_f, "csv");
  timing->add_option("--sizes", time_points, "Sizes: list or range lo:hi:step")->capture_default_str();
  timing->add_option("--repeats", repeats, "Timed runs per seed and matcher")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "Check stability and oracle agreement of the MM output");
  add_generation_flags(verify, verify_f);
  verify->add_option("--scenario", verify_f.scenario, "Scenario or record JSON file");
  verify_f.matchers = "mm";
  verify->add_option("--matchers", verify_f.matchers, "Matchers whose output must be stable")
      ->capture_default_str();
  verify->add_option("--out", verify_f.out, "Output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*gen) {
      emit(gen_f, to_json(generate(to_config(gen_f, gen_f.seed))));
    } else if (*match) {
      const auto scenario = scenario_from(match_f);
      const auto matchers = parse_matcher_list(match_f.matchers);
      const auto seeds = seed_list(match_f);
      emit(match_f, render(match_f, run_matchers(scenario, matchers, seeds), false));
    } else if (*sweep_sz) {
      const auto sizes = parse_sizes(size_points);
      emit(size_f, render(size_f, sweep_size(sizes, size_f.eta, sweep_options(size_f)), size_aggregate));
    } else if (*sweep_dn) {
      const auto etas = parse_points<double>(eta_points);
      emit(dens_f, render(dens_f, sweep_density(etas, dens_size, sweep_options(dens_f)), dens_aggregate));
    } else if (*timing) {
      const auto sizes = parse_sizes(time_points);
      auto opts = sweep_options(time_f);
      opts.threads = 1;
      const auto rows = time_matchers(sizes, time_f.eta, opts, repeats);
      emit(time_f, time_f.format == "json" ? timing_to_json(rows) : timing_to_csv(rows));
    } else if (*verify) {
      return run_verify(verify_f);
    }
  } catch (const ParameterError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const IngestionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const StructuralError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
