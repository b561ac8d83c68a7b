#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "covjet/kernels.hpp"

namespace covjet {

struct VerifyOptions {
  std::string suite = "all";  // pq | covariant | fractional | all
  int trials = 50;
  std::uint64_t seed = 42;
  int dim_max = 3;
  int k_max = 4;
  // Generate every scene with a vanishing connection.
  bool flat = false;
  Exec exec = Exec::parallel;
};

struct VerifyFailure {
  std::string identity;
  std::string scene_digest;
  nlohmann::json indices;
  std::string residual;
};

struct VerifyReport {
  VerifyOptions options;
  // Number of residual checks run, per identity.
  std::map<std::string, long> checks;
  std::vector<VerifyFailure> failures;
  double elapsed = 0.0;

  bool ok() const { return failures.empty(); }
};

// Throws Error for an unknown suite or out-of-range options.
VerifyReport run_verify(const VerifyOptions& opt);

// Deterministic for fixed options; elapsed time is included only on request.
nlohmann::json report_json(const VerifyReport& r, bool include_elapsed = false);

}  // namespace covjet
