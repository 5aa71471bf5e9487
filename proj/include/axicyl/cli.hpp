/// @file cli.hpp
/// @brief Subcommands: run (integrate + per-lemma report), check (flow-free
///        inequality and elliptic suites), convergence (manufactured-solution
///        and advection-diffusion order studies).

#pragma once

#include "axicyl/config.hpp"

namespace axicyl {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailure = 1;
inline constexpr int kExitBlowup = 2;
inline constexpr int kExitConfig = 3;

int cmd_run(const RunConfig& cfg);
int cmd_check(const RunConfig& cfg);
int cmd_convergence(const RunConfig& cfg);

/// Full argv entry point (configuration errors map to exit code 3).
int cli_main(int argc, char** argv);

}  // namespace axicyl
