#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace careers::app {

enum ExitCode : int {
  kOk = 0,
  kValidation = 1,
  kSolverFailure = 2,
  kAcceptanceFail = 3,
};

/// One line of the three-period reproduction table (rho = 0.5, delta = 0.95,
/// prior (1, 1)).
struct ReproRow {
  std::string label;
  double computed;
  double reference;
  double tolerance;

  double abs_error() const;
  bool pass() const { return abs_error() <= tolerance; }
};

/// Eight cutoffs followed by four date-1 wages, from exact backward induction.
std::vector<ReproRow> reproduction_rows();

/// Entry point of the `careers` tool. Returns an ExitCode value.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace careers::app
