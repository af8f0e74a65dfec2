#pragma once

#include <string>

#include "volterra/cli/config.hpp"

namespace volterra::cli {

// Exit-code contract shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNonConverged = 3;
inline constexpr int kExitViolation = 4;

/// Solves the configured problem with Picard iteration, cross-checks against
/// the time-stepping oracle, and writes a t / y0_picard / y0_stepping /
/// abs_gap table. Returns 0 on convergence, 3 otherwise.
int cmd_solve(const RunConfig& cfg);

/// Emits the stability certificate artifact: eta, bound factor, classical
/// applicability products, and the per-node bound.
int cmd_certify(const RunConfig& cfg);

/// Full empirical pipeline: perturb the solution, check defect admissibility,
/// re-solve, and compare against the certificate bound. Returns 0 when the
/// bound holds, 4 on violation, 3 if the solver did not converge.
int cmd_verify(const RunConfig& cfg);

/// Reruns the built-in demonstration problems end to end and checks their
/// expected outcomes: classical conditions fail while the certificate exists
/// and verifies. `which` is one of example-3-1, example-3-2, all.
int cmd_reproduce(const std::string& which, const RunConfig& cfg);

}  // namespace volterra::cli
