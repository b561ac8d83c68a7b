#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "covjet/verify.hpp"

namespace covjet {

// Exit codes of the command-line front end.
enum ExitCode : int {
  exit_ok = 0,
  exit_load_error = 1,
  exit_order_exhausted = 2,
  exit_oracle_mismatch = 3,
  exit_diverging = 4,
};

// Paths may be "-" for the standard streams. Diagnostics go to err.
int run_compute(const std::string& manifest_path, int k, const std::string& out_path, std::ostream& err);
int run_verify(const VerifyOptions& opt, const std::string& out_path, bool timing, std::ostream& err);
int run_solve(const std::string& system_path, std::optional<int> trunc, const std::string& out_path, std::ostream& err);

// Parses arguments and dispatches to the subcommands.
int cli_main(int argc, const char* const* argv);

}  // namespace covjet
