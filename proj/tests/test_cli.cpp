#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "cli.hpp"

using twdist::cli::run;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(TWDIST_TEST_DATA) + "/" + name; }

// The part of a text report before the algorithm counters.
std::string report_part(const std::string& text) { return text.substr(0, text.find("--\n")); }

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("distances on P4 agree across algorithms") {
    const auto oracle = invoke({"distances", data("p4.gr"), "--algo", "oracle"});
    REQUIRE(oracle.code == 0);
    CHECK(oracle.out.find("diameter 3\nradius 2\nwiener 10\n") == 0);
    for (const char* algo : {"tw", "vc"}) {
      const auto r = invoke({"distances", data("p4.gr"), "--algo", algo});
      CHECK(r.code == 0);
      CHECK(report_part(r.out) == report_part(oracle.out));
    }
    const auto given = invoke({"distances", data("p4.gr"), "--td", data("p4.td")});
    CHECK(given.code == 0);
    CHECK(report_part(given.out) == report_part(oracle.out));
  }

  TEST_CASE("weighted path") {
    const auto r = invoke({"distances", data("weighted.gr"), "--algo", "tw", "--format", "csv"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("vertex,eccentricity\n1,8\n2,5\n3,6\n4,8\n") != std::string::npos);
    CHECK(r.out.find("wiener=25") != std::string::npos);
    CHECK(invoke({"distances", data("weighted.gr"), "--algo", "vc"}).code == 1);
  }

  TEST_CASE("json output is stable") {
    const std::vector<std::string> args{"distances", data("weighted.gr"), "--format", "json", "--seed", "5"};
    const auto a = invoke(args), b = invoke(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("\"wiener\": 25") != std::string::npos);
  }

  TEST_CASE("exit codes") {
    CHECK(invoke({"distances", data("disconnected.gr")}).code == 3);
    CHECK(invoke({"distances", data("disconnected.gr")}).err.find("not connected") != std::string::npos);
    CHECK(invoke({"distances", data("malformed.gr")}).code == 2);
    CHECK(invoke({"distances", data("missing.gr")}).code == 2);
    CHECK(invoke({"distances", data("huge.gr"), "--algo", "oracle"}).code == 4);
    CHECK(invoke({"distances", data("p4.gr"), "--algo", "nope"}).code == 2);
    CHECK(invoke({}).code == 2);
    CHECK(invoke({"distances", data("p4.gr"), "--algo", "oracle", "--td", data("p4.td")}).code == 1);
    CHECK(invoke({"--help"}).code == 0);
  }

  TEST_CASE("validate") {
    const auto ok = invoke({"validate", data("p4.gr"), data("p4.td"), "--sst"});
    CHECK(ok.code == 0);
    CHECK(ok.out.find("valid decomposition, width 1") == 0);
    const auto bad = invoke({"validate", data("p4.gr"), data("p4_missing_edge.td")});
    CHECK(bad.code == 1);
    CHECK(bad.out.find("edge 2-3") != std::string::npos);
    CHECK(invoke({"validate", data("p4.gr"), data("five.td")}).code == 2);
  }

  TEST_CASE("bench") {
    const auto r = invoke({"bench", "--tw", "2", "--n", "256,512,1024", "--seed", "3"});
    REQUIRE(r.code == 0);
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "n,tw,k,build_canonical_total,max_query_visits,wall_ms,bound_construction,bound_query");
    int rows = 0;
    std::vector<std::string> counters;
    while (std::getline(lines, line)) {
      std::vector<std::uint64_t> f;
      std::istringstream cells(line);
      std::string cell;
      while (std::getline(cells, cell, ',')) f.push_back(std::stoull(cell));
      REQUIRE(f.size() == 8);
      CHECK(f[3] <= f[6]);
      CHECK(f[4] <= f[7]);
      counters.push_back(std::to_string(f[3]) + "/" + std::to_string(f[4]));
      ++rows;
    }
    CHECK(rows == 3);

    const auto again = invoke({"bench", "--tw", "2", "--n", "256,512,1024", "--seed", "3"});
    std::istringstream l2(again.out);
    std::getline(l2, line);
    for (const auto& c : counters) {
      std::getline(l2, line);
      std::vector<std::string> f;
      std::istringstream cells(line);
      std::string cell;
      while (std::getline(cells, cell, ',')) f.push_back(cell);
      CHECK(f[3] + "/" + f[4] == c);
    }

    const auto empty = invoke({"bench", "--tw", "2"});
    CHECK(empty.code == 0);
    CHECK(empty.out == "n,tw,k,build_canonical_total,max_query_visits,wall_ms,bound_construction,bound_query\n");
  }

  TEST_CASE("generate then validate") {
    const auto dir = std::filesystem::temp_directory_path() / "twdist_cli_test";
    std::filesystem::create_directories(dir);
    const auto prefix = (dir / "k3").string();
    CHECK(invoke({"generate", "ktree", "--n", "200", "--k", "3", "--seed", "4", "--out", prefix}).code == 0);
    CHECK(invoke({"validate", prefix + ".gr", prefix + ".td", "--sst"}).code == 0);
    const auto tw = invoke({"distances", prefix + ".gr", "--td", prefix + ".td"});
    const auto oracle = invoke({"distances", prefix + ".gr", "--algo", "oracle"});
    CHECK(report_part(tw.out) == report_part(oracle.out));

    const auto cover = (dir / "c").string();
    CHECK(invoke({"generate", "cover", "--n", "150", "--k", "6", "--seed", "2", "--out", cover}).code == 0);
    const auto vc = invoke({"distances", cover + ".gr", "--algo", "vc"});
    CHECK(report_part(vc.out) == report_part(invoke({"distances", cover + ".gr", "--algo", "oracle"}).out));
    std::filesystem::remove_all(dir);
  }
}
