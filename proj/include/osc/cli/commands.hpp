#pragma once

namespace osc::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitDivergence = 3,
  kExitRegression = 4,
};

// Entry point of the osc binary.
int run(int argc, char** argv);

}  // namespace osc::cli
