#pragma once

#include "deltavar/timescale.hpp"
#include "deltavar/variational.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace deltavar {

struct ToleranceConfig {
    double residual = 1e-8;    ///< relative stationarity tolerance
    double gradient = 1e-10;   ///< solver gradient tolerance
    double admissible = 1e-10; ///< boundary-condition tolerance
};

/**
 * A problem definition read from a flat key/value file with [section]
 * headers (schema documented in the README).  Exactly one time-scale
 * variant is given; boundary arrays carry r values per side.
 */
struct ProblemConfig {
    enum class ScaleKind { explicit_points, integer_range, h_grid, random };

    ScaleKind kind = ScaleKind::explicit_points;
    std::vector<double> points;  // explicit
    double a = 0.0, b = 0.0;     // integer_range, h_grid
    double h = 0.0;              // h_grid
    int n = 0;                   // random
    std::uint64_t scale_seed = 0;
    double span = 0.0;           // random

    int order = 1;
    std::string expr;    // exactly one of expr/builtin
    std::string builtin;
    std::vector<double> left, right;
    ToleranceConfig tol;
    std::uint64_t seed = 0;
    int max_iterations = 20000;

    static ProblemConfig load(const std::string& path);
    static ProblemConfig parse(std::string_view text, const std::string& origin);

    TimeScale build_scale() const;
    Lagrangian build_lagrangian() const;
    VariationalProblem build_problem() const;

    /// Stable key/value echo for reports.
    std::string echo() const;
};

} // namespace deltavar
