#pragma once

#include <optional>

#include "serialize.hpp"

namespace spinalign {

// Exit-code contract shared by the C API and the CLI:
//   0 = holds / all checks pass, 1 = usage or input error (raised as
//   exceptions from this layer), 2 = majorization violation.
constexpr int kExitHolds = 0;
constexpr int kExitError = 1;
constexpr int kExitViolation = 2;

struct CommandResult {
    ojson report;
    int exit_code = kExitHolds;
    std::optional<AlignmentProblem> problem;  // search winner / fixture
};

/// Builds the fixed three-qubit violation instance and compares every
/// derived quantity against the reference values; exit 0 iff all match.
CommandResult cmd_reproduce(bool with_timestamp);

/// Majorization verdict for a parsed problem; exit 2 on violation.
CommandResult cmd_check(const AlignmentProblem& p, double tol, bool with_timestamp);

/// Eigenvalues of the problem's operator and aligned target.
CommandResult cmd_spectrum(const AlignmentProblem& p, bool with_timestamp);

/// Sampling campaign over the two-body compatible statement and the proof
/// steps; exit 0 iff no check ever fails.
CommandResult cmd_verify_prop(long trials, std::uint64_t seed, Ensemble ensemble, double tol,
                              int threads, bool with_timestamp);

/// Random-restart violation search; exit 2 when a violation was found.
CommandResult cmd_search(const SearchConfig& config, bool with_timestamp);

}  // namespace spinalign
