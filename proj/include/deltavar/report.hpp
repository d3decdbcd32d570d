#pragma once

#include "deltavar/config.hpp"
#include "deltavar/variational.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace deltavar {

/// 17-significant-digit decimal text; round-trips a double exactly.
std::string fmt17(double v);

/**
 * Machine-readable run outcome: an echo of the configuration, the headline
 * numbers, the verdicts, and the trajectory table with the derivative
 * columns.  Printed with a stable key order so identical runs are
 * byte-identical.
 */
struct RunReport {
    std::string command;
    std::string config_echo;

    std::optional<double> functional;
    std::vector<double> constants;
    std::optional<double> residual_sup;
    std::optional<double> residual_l2;
    std::optional<double> gradient_sup;
    std::optional<double> scale;

    std::optional<bool> converged;
    std::optional<int> iterations;
    std::optional<bool> admissible;
    std::optional<bool> stationary;
    std::optional<bool> agree;

    /// (t, y, y^delta, ..., y^{delta^r}); shorter derivative columns leave
    /// trailing cells empty.
    std::vector<std::vector<double>> trajectory_columns;

    void print(std::ostream& os) const;
};

/// Builds the trajectory table columns for a report.
std::vector<std::vector<double>> trajectory_table(const VariationalProblem& p,
                                                  const Trajectory& y);

/// CSV with header "t,y", one row per scale point, 17 significant digits.
void write_trajectory_csv(std::ostream& os, const Trajectory& y);

/// Reads a "t,y" CSV; throws csv_error on malformed input.
std::vector<std::pair<double, double>> read_trajectory_csv(const std::string& path);

} // namespace deltavar
