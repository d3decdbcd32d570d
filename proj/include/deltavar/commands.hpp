#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace deltavar {

/// Exit codes shared by every subcommand.
inline constexpr int exit_ok = 0;
inline constexpr int exit_config_error = 2;
inline constexpr int exit_numerical_failure = 3;

struct CommandIO {
    std::ostream& out;
    std::ostream& err;
};

/// Seed from the DELTAVAR_SEED environment variable, when set and valid.
std::optional<std::uint64_t> seed_from_env();

/// Minimizes the configured problem and reports the fitted necessary
/// condition on the result.  Optionally writes the trajectory CSV.
int cmd_solve(const std::string& config_path, const std::optional<std::string>& csv_path,
              std::optional<std::uint64_t> seed_flag, CommandIO io);

/// Evaluates admissibility, the fitted residual, and the gradient/residual
/// agreement on a user-supplied trajectory.
int cmd_check(const std::string& config_path, const std::string& trajectory_csv, CommandIO io);

/// Checks the lattice integral-derivative identity for a seeded random
/// polynomial of the given degree.
int cmd_identity(double h, double a, double b, int degree, int i, int j,
                 std::optional<std::uint64_t> seed_flag, CommandIO io);

/// Runs the stationarity-equivalence check on the minimizer plus a number of
/// seeded perturbed trajectories.
int cmd_oracle(const std::string& config_path, int trials,
               std::optional<std::uint64_t> seed_flag, CommandIO io);

} // namespace deltavar
