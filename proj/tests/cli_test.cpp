#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "json.hpp"
#include "lciso/cli.hpp"

using namespace lciso;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  Run r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("eval examples") {
  CHECK(run({"eval", "--quantity", "profile", "--at", "0.5"}).out == "0.398942280401433\n");
  CHECK(run({"--measure", "laplace", "eval", "--quantity", "quantile", "--at", "0.25"}).out ==
        "-0.693147180559945\n");
  for (const char* name : {"gaussian", "logistic", "laplace"}) {
    CHECK(run({"--measure", name, "eval", "--quantity", "cdf", "--at", "0"}).out == "0.5\n");
  }
  CHECK(run({"eval", "--quantity", "quantile", "--at", "1"}).out == "inf\n");
  CHECK(run({"eval", "--quantity", "quantile", "--at", "2"}).code == kExitUsage);
}

TEST_CASE("bounds examples") {
  const Run g = run({"bounds", "--mu", "0.3", "--lambda", "0.2"});
  CHECK(g.code == kExitOk);
  const auto lines = split_lines(g.out);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "mu,lambda,domain,J_m,K,L,bound,optimal_perimeter");
  CHECK(lines[1].find("0.3,0.2,D2,") == 0);
  CHECK(lines[1].find("0.455460252340") != std::string::npos);

  const Run laplace = run({"--measure", "laplace", "bounds", "--mu", "0.4", "--lambda", "0.2"});
  const auto laplace_lines = split_lines(laplace.out);
  REQUIRE(laplace_lines.size() == 2);
  std::vector<std::string> cells;
  std::istringstream row(laplace_lines[1]);
  for (std::string cell; std::getline(row, cell, ',');) cells.push_back(cell);
  REQUIRE(cells.size() == 8);
  CHECK(cells[2] == "D2");
  CHECK(std::fabs(std::stod(cells[4])) <= 1e-15);
  CHECK(std::fabs(std::stod(cells[6]) - 0.4) <= 1e-15);

  const Run bad = run({"bounds", "--mu", "0.3", "--lambda", "0.9"});
  CHECK(bad.code == kExitUsage);
  CHECK(bad.err.find("error") != std::string::npos);
}

TEST_CASE("optimal sets") {
  const Run r = run({"optimal", "--mu", "0.3", "--lambda", "0.5"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("domain=D1") != std::string::npos);
  CHECK(r.out.find("perimeter=") != std::string::npos);
}

TEST_CASE("reduce examples") {
  const Run r = run({"reduce", "--set", "(-inf,-1)u(1,inf)"});
  CHECK(r.code == kExitOk);
  const auto lines = split_lines(r.out);
  REQUIRE_FALSE(lines.empty());
  CHECK(nlohmann::json::parse(lines.back())["rule"] == "Finalize");
  CHECK(nlohmann::json::parse(lines.back())["set"] == "(-inf,-1)u(1,inf)");

  const Run moved = run({"reduce", "--set", "(-inf,-2)u(-1.2,-0.9)"});
  CHECK(moved.code == kExitOk);
  CHECK(split_lines(moved.out).size() >= 2);
  CHECK(r.err.find("case=") == 0);

  const Run fixed = run({"reduce", "--quantile-coords", "--set", "(0.15,0.35)"});
  CHECK(fixed.code == kExitOk);
  const auto fixed_lines = split_lines(fixed.out);
  REQUIRE(fixed_lines.size() == 1);
  CHECK(nlohmann::json::parse(fixed_lines[0])["rule"] == "Finalize");

  CHECK(run({"reduce", "--set", "(0,0)"}).code == kExitUsage);
  CHECK(run({"reduce", "--set", "(-inf,0)"}).code == kExitUsage);
}

TEST_CASE("verify examples") {
  CHECK(run({"verify", "--suite", "shifting", "--trials", "2000"}).code == kExitOk);
  CHECK(run({"--measure", "logistic", "verify", "--suite", "theorem-main", "--grid", "20"}).code ==
        kExitOk);
  const Run bad = run({"--measure", fixtures::measure_path("perturbed.json"), "verify", "--suite",
                       "shifting"});
  CHECK(bad.code == kExitVerificationFailed);
  CHECK(bad.err.find("warning") != std::string::npos);
  const nlohmann::json report = nlohmann::json::parse(bad.out);
  CHECK(report["status"] == "fail");
  CHECK_FALSE(report["details"].empty());
  const Run na = run({"--measure", "laplace", "verify", "--suite", "continuity", "--x", "0.3"});
  CHECK(na.code == kExitOk);
  CHECK(nlohmann::json::parse(na.out)["status"] == "not-applicable");
}

TEST_CASE("scan examples") {
  const Run r = run({"scan", "--grid", "50"});
  CHECK(r.code == kExitOk);
  const auto lines = split_lines(r.out);
  CHECK(lines.size() == 2501);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::vector<std::string> cells;
    std::istringstream row(lines[i]);
    for (std::string cell; std::getline(row, cell, ',');) cells.push_back(cell);
    REQUIRE(cells.size() == 8);
    CHECK(std::fabs(std::stod(cells[6]) - std::stod(cells[7])) <= 1e-9);
  }
  CHECK(run({"scan", "--grid", "50"}).out == r.out);

  const Run omitted = run({"scan", "--mu-values", "0.3", "--lambda-values", "0.2,0.9"});
  CHECK(split_lines(omitted.out).size() == 2);
  CHECK(omitted.err.find("omitted 1") != std::string::npos);

  const Run laplace = run({"--measure", "laplace", "scan", "--grid", "10"});
  for (const std::string& line : split_lines(laplace.out)) {
    if (line.find(",D2,") == std::string::npos) continue;
    std::vector<std::string> cells;
    std::istringstream row(line);
    for (std::string cell; std::getline(row, cell, ',');) cells.push_back(cell);
    CHECK(std::fabs(std::stod(cells[4])) <= 1e-12);
  }
}

TEST_CASE("usage errors and measure gating") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({"--measure", "/nonexistent.json", "eval", "--quantity", "cdf", "--at", "0"}).code ==
        kExitUsage);
  const Run gated = run({"--measure", fixtures::measure_path("perturbed.json"), "eval",
                         "--quantity", "cdf", "--at", "0"});
  CHECK(gated.code == kExitUsage);
  CHECK(gated.err.find("not concave") != std::string::npos);
  CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("output file") {
  const std::string path = "cli_test_out.csv";
  CHECK(run({"--out", path, "bounds", "--mu", "0.3", "--lambda", "0.2"}).code == kExitOk);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "mu,lambda,domain,J_m,K,L,bound,optimal_perimeter");
  std::remove(path.c_str());
}

}  // TEST_SUITE
