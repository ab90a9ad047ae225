#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "erldp/cli.hpp"

using erldp::cli::dispatch;
using nlohmann::json;

namespace {

struct Run {
  int rc;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int rc = dispatch(args, out, err);
  return {rc, out.str(), err.str()};
}

}  // namespace

TEST_CASE("oracle law json") {
  const auto r = run({"oracle", "law", "--n", "3", "--p", "1/2", "--format", "json"});
  REQUIRE(r.rc == 0);
  const auto j = json::parse(r.out);
  CHECK(j["total"] == "1");
  CHECK(j["entries"].size() == 3);
  CHECK(j["entries"][0]["probability"] == "1/2");
}

TEST_CASE("oracle law csv") {
  const auto r = run({"--format", "csv", "oracle", "law", "--n", "3", "--p", "1/2"});
  REQUIRE(r.rc == 0);
  CHECK(r.out.rfind("counts,probability\n", 0) == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 4);
}

TEST_CASE("rate of the empty measure") {
  const auto r = run({"ldp", "rate", "--atoms", "", "--theta", "1"});
  REQUIRE(r.rc == 0);
  CHECK(json::parse(r.out)["rate"].get<double>() == 1.0 / 6.0);
}

TEST_CASE("asym conn row") {
  const auto r = run({"asym", "conn", "--K", "64", "--n", "86", "--gamma", "0.4", "--theta", "1", "--format", "csv"});
  REQUIRE(r.rc == 0);
  CHECK(r.out.find("total_log") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run({"oracle", "conn", "--K", "0", "--p", "1/2"}).rc == 2);
  CHECK(run({"oracle", "conn", "--K", "3", "--p", "3/2"}).rc == 2);
  CHECK(run({"oracle", "conn", "--K", "3"}).rc == 2);
  CHECK(run({"nonsense"}).rc == 2);
  CHECK(run({"asym", "conn", "--K", "64", "--n", "86", "--gamma", "0.4", "--b_n", "3"}).rc == 2);
  const auto e = run({"borel", "sums", "--omega", "2"});
  CHECK(e.rc == 2);
  CHECK(e.err.find("omega") != std::string::npos);
  CHECK(std::count(e.err.begin(), e.err.end(), '\n') == 1);
  CHECK(run({"sim", "--help"}).rc == 0);
}

TEST_CASE("sim output is reproducible and worker independent") {
  const std::vector<std::string> base{"sim", "--n", "50", "--p", "1/50", "--event", "below:10",
                                      "--trials", "2000", "--seed", "5"};
  auto a = base, b = base;
  a.insert(a.end(), {"--workers", "1"});
  b.insert(b.end(), {"--workers", "3"});
  const auto ra = run(a), rb = run(b);
  REQUIRE(ra.rc == 0);
  CHECK(ra.out == rb.out);
  const auto j = json::parse(ra.out);
  CHECK(j["p"].get<double>() == 0.02);
}

TEST_CASE("sweep grid, flags and resume") {
  const std::string cfg = "erldp_test_grid.ini", out = "erldp_test_grid.csv";
  std::remove(out.c_str());
  {
    std::ofstream f(cfg);
    f << "[ldp rate]\natoms = 1\ntheta = 0:1:1, 2\n\n[borel sums]\nomega = 0.5, 3\n";
  }
  const auto r = run({"sweep", "--config", cfg, "--out", out});
  CHECK(r.rc == 0);
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string full = ss.str();
  CHECK(std::count(full.begin(), full.end(), '\n') == 6);  // header + 3 + 2
  CHECK(full.find(",error,") != std::string::npos);         // omega = 3 flagged, run continued
  // drop the last rows and resume: identical bytes
  std::string head = full.substr(0, full.find('\n', full.find('\n', full.find('\n') + 1) + 1) + 1);
  {
    std::ofstream f(out);
    f << head;
  }
  CHECK(run({"sweep", "--config", cfg, "--out", out}).rc == 0);
  std::ifstream in2(out);
  std::stringstream ss2;
  ss2 << in2.rdbuf();
  CHECK(ss2.str() == full);
  std::remove(out.c_str());
  std::remove(cfg.c_str());
}
