// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hetero::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kPrecondition = 2,
  kNonConvergence = 3,
};

/// Runs one subcommand. args excludes the program name. Results go to out
/// (or to files named by --out), diagnostics to err.
///
/// Subcommands: solve-heteroclinic, shoot, solve-dirichlet, converge-study,
/// bounds, validate-potential. `--config FILE` reads key=value lines and
/// applies them before the command-line flags, which take precedence.
/// Relative --out paths resolve against $HETERO_OUTPUT_DIR when it is set.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hetero::cli
