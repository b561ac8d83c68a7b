#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "covjet/cli.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string data(const char* name) { return std::string(COVJET_TEST_DATA) + "/" + name; }

fs::path scratch(const char* name) { return fs::temp_directory_path() / (std::string("covjet_cli_") + name); }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json load(const fs::path& p) { return json::parse(slurp(p)); }

}  // namespace

TEST_CASE("compute: flat cubic gives 6s at k = 2") {
  std::ostringstream err;
  const fs::path out = scratch("flat.json");
  REQUIRE(covjet::run_compute(data("flat_cubic.json"), 2, out.string(), err) == covjet::exit_ok);
  const json d = load(out);
  CHECK(d["result"]["components"]["1;"] == json({"0", "6", "0", "0", "0"}));
  CHECK(d["result"]["order"] == 4);
  CHECK(d["oracle"]["agrees"] == true);
  CHECK(d["P"].size() == 3);
  CHECK(d["Q"].size() == 3);
}

TEST_CASE("compute: constant Christoffel symbol gives s + 2") {
  // A' + A with A = s, applied twice: (1 + s)' + (1 + s) = s + 2.
  std::ostringstream err;
  const fs::path out = scratch("gamma.json");
  REQUIRE(covjet::run_compute(data("constant_gamma.json"), 2, out.string(), err) == covjet::exit_ok);
  const json d = load(out);
  CHECK(d["result"]["components"]["1;"] == json({"2", "1", "0", "0", "0"}));
  // P levels for P1 = 1 are all 1, Q levels alternate in sign.
  CHECK(d["P"][2][0][0][0] == "1");
  CHECK(d["Q"][1][0][0][0] == "-1");
  CHECK(d["Q"][2][0][0][0] == "1");
}

TEST_CASE("compute: mixed tensor agrees with the iterated derivative") {
  std::ostringstream err;
  const fs::path out = scratch("mixed.json");
  for (int k = 0; k <= 6; ++k) {
    CAPTURE(k);
    REQUIRE(covjet::run_compute(data("polar_covector.json"), k, out.string(), err) == covjet::exit_ok);
    CHECK(load(out)["oracle"]["agrees"] == true);
  }
}

TEST_CASE("compute: exit codes") {
  std::ostringstream err;
  const std::string out = scratch("codes.json").string();
  CHECK(covjet::run_compute(data("no_field.json"), 1, out, err) == covjet::exit_load_error);
  CHECK(covjet::run_compute(data("missing.json"), 1, out, err) == covjet::exit_load_error);
  CHECK(covjet::run_compute(data("exp_decay.json"), 1, out, err) == covjet::exit_load_error);
  CHECK(covjet::run_compute(data("flat_cubic.json"), 7, out, err) == covjet::exit_order_exhausted);
  CHECK(covjet::run_compute(data("flat_cubic.json"), 6, out, err) == covjet::exit_ok);
  CHECK(err.str().find("order exhausted") != std::string::npos);
}

TEST_CASE("verify: report is deterministic and passes") {
  std::ostringstream err;
  covjet::VerifyOptions opt;
  opt.suite = "pq";
  opt.trials = 8;
  const fs::path a = scratch("verify_a.json"), b = scratch("verify_b.json");
  REQUIRE(covjet::run_verify(opt, a.string(), false, err) == covjet::exit_ok);
  opt.exec = covjet::Exec::serial;
  REQUIRE(covjet::run_verify(opt, b.string(), false, err) == covjet::exit_ok);
  CHECK(slurp(a) == slurp(b));
  const json d = load(a);
  CHECK(d["passed"] == true);
  CHECK(d["failures"].empty());
  CHECK(d["checks"]["orthogonality"].get<int>() > 0);
  CHECK_FALSE(d.contains("elapsed_seconds"));
  opt.suite = "nonsense";
  CHECK(covjet::run_verify(opt, a.string(), false, err) == covjet::exit_load_error);
}

TEST_CASE("solve: exponential decay and divergence flag") {
  std::ostringstream err;
  const fs::path out = scratch("solve.json");
  REQUIRE(covjet::run_solve(data("exp_decay.json"), std::nullopt, out.string(), err) == covjet::exit_ok);
  json d = load(out);
  CHECK(d["diverging"] == false);
  CHECK(d["truncation_N"] == 20);
  // Y' + Y = 1, Y(0) = 0: Y = 1 - exp(-s).
  const auto& ys = d["samples"][0];
  const auto& grid = d["grid"];
  REQUIRE(ys.size() == 11);
  for (std::size_t t = 0; t < ys.size(); ++t)
    CHECK(std::abs(ys[t].get<double>() - (1.0 - std::exp(-grid[t].get<double>()))) < 1e-12);
  CHECK(d["residual"]["max_abs_on_grid"].get<double>() < 1e-9);

  REQUIRE(covjet::run_solve(data("exp_decay.json"), 25, out.string(), err) == covjet::exit_ok);
  CHECK(load(out)["truncation_N"] == 25);

  CHECK(covjet::run_solve(data("divergent.json"), std::nullopt, out.string(), err) == covjet::exit_diverging);
  d = load(out);
  CHECK(d["diverging"] == true);
  CHECK(d["tail_ratio"].get<double>() > 1.0);

  CHECK(covjet::run_solve(data("flat_cubic.json"), std::nullopt, out.string(), err) == covjet::exit_load_error);
  CHECK(covjet::run_solve(data("missing.json"), std::nullopt, out.string(), err) == covjet::exit_load_error);
}
