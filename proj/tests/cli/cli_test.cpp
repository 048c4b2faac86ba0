// Runs the built CLI as a subprocess and checks exit codes and output.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run cli(const std::string& args) {
  static int counter = 0;
  const auto path = fs::temp_directory_path() /
                    ("parkshare_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
  const auto cmd = std::string(PARKSHARE_CLI_PATH) + " " + args + " > " + path.string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(path, std::ios::binary);
  r.out.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  fs::remove(path);
  return r;
}

const std::string kData = PARKSHARE_TEST_DATA_DIR;

std::size_t line_count(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

}  // namespace

TEST_CASE("cli: worked example through match") {
  const auto r = cli("match --scenario " + kData + "/worked_example.json --matchers mm --format csv");
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("matcher,drivers,spots,eta,seed,total_distance,matched_count,blocking_pairs,"
                    "proposals,wall_time_s\n",
                    0) == 0);
  // (1,1)=2, (2,3)=4, (3,2)=0.5, (5,4)=1 with 7 proposals.
  CHECK(r.out.find("\nmm,5,4,") != std::string::npos);
  CHECK(r.out.find(",7.5,4,0,7,") != std::string::npos);
}

TEST_CASE("cli: generate is reproducible and round-trips through match") {
  const auto a = cli("generate --drivers 12 --spots 9 --eta 0.4 --seed 21");
  const auto b = cli("generate --drivers 12 --spots 9 --eta 0.4 --seed 21");
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out != cli("generate --drivers 12 --spots 9 --eta 0.4 --seed 22").out);

  const auto file = fs::temp_directory_path() / ("parkshare_gen_" + std::to_string(::getpid()) + ".json");
  REQUIRE(cli("generate --drivers 12 --spots 9 --eta 0.4 --seed 21 --out " + file.string()).code == 0);
  const auto from_file = cli("verify --scenario " + file.string());
  fs::remove(file);
  CHECK(from_file.code == 0);
}

TEST_CASE("cli: sweep row layout") {
  const auto r = cli("sweep-size --sizes 10:30:10 --seeds 2 --format csv");
  REQUIRE(r.code == 0);
  CHECK(line_count(r.out) == 1 + 3 * 2 * 4);
  const auto agg = cli("sweep-density --etas 0.2,0.6 --size 15 --seeds 3 --aggregate --format csv");
  REQUIRE(agg.code == 0);
  CHECK(line_count(agg.out) == 1 + 2 * 4);
}

TEST_CASE("cli: configuration errors exit 2") {
  CHECK(cli("match --eta 1.5").code == 2);
  CHECK(cli("match --eta 0").code == 2);
  CHECK(cli("match --dist-lo 3 --dist-hi 1").code == 2);
  CHECK(cli("match --matchers mm,bogus").code == 2);
  CHECK(cli("match --matchers mm,mm").code == 2);
  CHECK(cli("match --bogus").code == 2);
  CHECK(cli("match --format xml").code == 2);
  CHECK(cli("sweep-size --sizes 10:5:1").code == 2);
  CHECK(cli("match --scenario /nonexistent/scenario.json").code == 2);
  CHECK(cli("").code == 2);
}

TEST_CASE("cli: verify exit codes") {
  CHECK(cli("verify --drivers 8 --spots 8 --eta 0.5 --seed 2").code == 0);
  CHECK(cli("verify --scenario " + kData + "/worked_example.json").code == 0);
  // The optimal assignment is rarely stable at this size.
  const auto r = cli("verify --drivers 30 --spots 30 --seed 0 --matchers mm,km");
  CHECK(r.code == 3);
  CHECK(r.out.find("km output has blocking pairs") != std::string::npos);
}
