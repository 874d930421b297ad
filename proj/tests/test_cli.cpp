#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "kneser/experiment.hpp"

using namespace kneser;

namespace {
struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

// CSV rows without the `#` metadata block and header.
std::vector<std::string> rows(const std::string& csv) {
  std::vector<std::string> out;
  std::istringstream in(csv);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (header) {
      header = false;
      continue;
    }
    out.push_back(line);
  }
  return out;
}

std::vector<std::string> fields(const std::string& row) {
  std::vector<std::string> out;
  std::istringstream in(row);
  std::string f;
  while (std::getline(in, f, ',')) out.push_back(f);
  return out;
}

bool has_line(const std::string& text, const std::string& line) {
  std::istringstream in(text);
  std::string l;
  while (std::getline(in, l))
    if (l == line) return true;
  return false;
}
}  // namespace

TEST_CASE("ranges and seeds") {
  CHECK(parse_range("5..9") == std::pair{5, 9});
  CHECK(parse_range("7") == std::pair{7, 7});
  CHECK_THROWS_AS(parse_range("9..5"), UsageError);
  CHECK_THROWS_AS(parse_range("a..b"), UsageError);
  CHECK(parse_seeds("1,3..5,9") == std::vector<std::uint64_t>{1, 3, 4, 5, 9});
  CHECK_THROWS_AS(parse_seeds(""), UsageError);
  CHECK_THROWS_AS(parse_seeds("1,,2"), UsageError);
}

TEST_CASE("config round trip") {
  const std::vector<std::vector<std::string>> lines = {
      {"chi-random", "--n-range", "5..8", "--k", "2", "--p", "1/3", "--seeds", "0..4", "--no-timing"},
      {"search-empty", "--n-range", "20", "--l", "3", "--search-seed", "9", "--witness-dir", "w"},
      {"zeta", "--n-range", "5..7", "--k", "2", "--mode", "heuristic"},
      {"solve", "--problem", "colorable", "--n-range", "6", "--k", "2", "--t", "3"},
      {"verify-constructions", "--k", "3"},
  };
  for (const auto& args : lines) {
    const auto c = parse_config(args);
    CHECK(c.command == args[0]);
    CHECK(parse_config(c.to_args()) == c);
  }
  const auto c = parse_config(lines[0]);
  CHECK(c.n_lo == 5);
  CHECK(c.n_hi == 8);
  CHECK(c.p == Probability{1, 3});
  CHECK(c.seeds.size() == 5);
  CHECK(c.no_timing);
  CHECK_THROWS_AS(parse_config({"chi-random", "--l", "3"}), UsageError);
  CHECK_THROWS_AS(parse_config({"solve", "--problem", "nope"}), UsageError);
  CHECK_THROWS_AS(parse_config({"nope"}), UsageError);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"bogus"}).code == kExitUsage);
  CHECK(run({"chi-random", "--wat", "1"}).code == kExitUsage);
  CHECK(run({"chi-random", "--p", "2/1"}).code == kExitUsage);
  CHECK(run({"chi-random", "--n-range", "x"}).code == kExitUsage);
  CHECK_FALSE(run({"bogus"}).err.empty());
}

TEST_CASE("metadata block") {
  const auto r = run({"chi-random", "--n-range", "5", "--seeds", "0", "--no-timing"});
  REQUIRE(r.code == kExitOk);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "# kneser-lab 1.0.0");
  std::getline(in, line);
  CHECK(line.rfind("# config: chi-random", 0) == 0);
  std::getline(in, line);
  CHECK(line == "# prng: splitmix64-coin/xoshiro256**");
  std::getline(in, line);
  CHECK(line == "n,k,r,p_num,p_den,seed,chi_sample,chi_full,gap,optimality,nodes,millis");
}

TEST_CASE("verify-constructions") {
  const auto r = run({"verify-constructions", "--k", "3"});
  CHECK(r.code == kExitOk);
  CHECK(has_line(r.out, "starfree,8,3,2,4,true,0,0"));
  CHECK(has_line(r.out, "triple-block,9,3,2,3,true,0,27"));
  CHECK(has_line(r.out, "merged-canonical,7,3,2,2,false,10,0"));
  const auto two = run({"verify-constructions", "--k", "2"});
  CHECK(two.code == kExitOk);
  CHECK(has_line(two.out, "starfree,2,2,2,-,skipped,-,-"));
}

TEST_CASE("chi-random on complete and edgeless samples") {
  const auto full = run({"chi-random", "--n-range", "5..8", "--k", "2", "--p", "1", "--seeds", "0,1", "--no-timing"});
  REQUIRE(full.code == kExitOk);
  const auto fr = rows(full.out);
  REQUIRE(fr.size() == 8);
  for (const auto& row : fr) {
    const auto f = fields(row);
    const int n = std::stoi(f[0]);
    CHECK(f[6] == std::to_string(n - 2));
    CHECK(f[7] == std::to_string(n - 2));
    CHECK(f[8] == "0");
    CHECK(f[9] == "proven");
    CHECK(f[11] == "NA");
  }
  const auto none = run({"chi-random", "--n-range", "5..7", "--k", "2", "--p", "0", "--seeds", "3", "--no-timing"});
  REQUIRE(none.code == kExitOk);
  for (const auto& row : rows(none.out)) CHECK(fields(row)[6] == "1");
  // Rows come out in (n, seed) order.
  const auto order = rows(run({"chi-random", "--n-range", "5..6", "--seeds", "2,0", "--no-timing"}).out);
  REQUIRE(order.size() == 4);
  CHECK(fields(order[0])[5] == "2");
  CHECK(fields(order[1])[5] == "0");
  CHECK(fields(order[2])[0] == "6");
}

TEST_CASE("search-empty") {
  const auto zero = run({"search-empty", "--n-range", "8", "--p", "0", "--seeds", "0,1", "--l", "3", "--no-timing"});
  REQUIRE(zero.code == kExitOk);
  for (const auto& row : rows(zero.out)) {
    const auto f = fields(row);
    CHECK(f[6] == "true");
    CHECK(f[7] == "1");
  }
  const auto one = run({"search-empty", "--n-range", "8", "--p", "1", "--seeds", "0", "--l", "2", "--no-timing"});
  REQUIRE(one.code == kExitOk);
  CHECK(fields(rows(one.out).at(0))[6] == "false");

  const auto dir = std::filesystem::temp_directory_path() / "kneser_lab_cli_witness";
  std::filesystem::remove_all(dir);
  const auto w = run({"search-empty", "--n-range", "10", "--p", "1/2", "--seeds", "7", "--l", "2", "--witness-dir",
                      dir.string(), "--no-timing"});
  REQUIRE(w.code == kExitOk);
  std::ifstream file(dir / "witness_n10_k2_r2_l2_s7.txt");
  REQUIRE(file.good());
  std::string header;
  std::getline(file, header);
  CHECK(header == "kneser-witness v1 10 2 2 1 2 7 2");
  std::filesystem::remove_all(dir);
}

TEST_CASE("zeta rows") {
  const auto r = run({"zeta", "--n-range", "5..6", "--k", "2", "--no-timing"});
  REQUIRE(r.code == kExitOk);
  const auto z = rows(r.out);
  REQUIRE(z.size() == 2);
  CHECK(z[0].rfind("5,2,2,3,3,3,true,", 0) == 0);
  CHECK(z[1].rfind("6,2,3,5/2,3,3,true,", 0) == 0);
}

TEST_CASE("solve rows") {
  const auto u = run({"solve", "--problem", "union", "--n-range", "5", "--k", "2", "--t", "2", "--no-timing"});
  REQUIRE(u.code == kExitOk);
  CHECK(rows(u.out).at(0).rfind("union,5,2,2,2,NA,NA,0,7,proven,", 0) == 0);
  const auto a = run({"solve", "--problem", "alpha", "--n-range", "7", "--k", "3", "--p", "1", "--no-timing"});
  REQUIRE(a.code == kExitOk);
  CHECK(fields(rows(a.out).at(0))[8] == "15");
  const auto s = run({"solve", "--problem", "sequential-k2", "--n-range", "40", "--k", "2", "--seeds", "11", "--h", "8",
                      "--no-timing"});
  CHECK(s.code != kExitUsage);
  CHECK(fields(rows(s.out).at(0))[8] == "37");
}

TEST_CASE("sample and families") {
  const auto s = run({"sample", "--n-range", "5", "--k", "2", "--seeds", "1"});
  REQUIRE(s.code == kExitOk);
  CHECK(s.out == "kneser-sample v1 5 2 2 1 2 1\ncf92\n");

  const auto path = std::filesystem::temp_directory_path() / "kneser_lab_cli_family.txt";
  {
    std::ofstream f(path);
    f << "{1,2}\n{1,3}\n{2,3}\n{4,5}\n";
  }
  const auto fam = run({"families", "--in", path.string(), "--n", "6"});
  REQUIRE(fam.code == kExitOk);
  CHECK(has_line(fam.out, "size,4"));
  CHECK(has_line(fam.out, "disjoint_pairs,3"));
  CHECK(has_line(fam.out, "ell,1"));
  std::filesystem::remove(path);
  CHECK(run({"families", "--in", "/nonexistent/family.txt", "--n", "6"}).code != kExitOk);
}

TEST_CASE("output does not depend on the worker count") {
  const std::vector<std::string> args = {"chi-random", "--n-range", "5..8", "--k", "2", "--seeds", "0..5", "--no-timing"};
  ::setenv("KNESER_LAB_THREADS", "1", 1);
  CHECK(worker_count() == 1);
  const auto serial = run(args);
  ::setenv("KNESER_LAB_THREADS", "4", 1);
  const auto parallel = run(args);
  ::unsetenv("KNESER_LAB_THREADS");
  REQUIRE(serial.code == kExitOk);
  CHECK(serial.out == parallel.out);
}

TEST_CASE("chromatic formula") {
  CHECK(kneser_chromatic_formula(5, 2, 2) == 3);
  CHECK(kneser_chromatic_formula(9, 2, 3) == 3);
  CHECK(kneser_chromatic_formula(4, 3, 2) == 1);
}
