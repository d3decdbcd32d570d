#pragma once

#include "deltavar/variational.hpp"

#include <optional>
#include <span>
#include <vector>

namespace deltavar {

struct SolveOptions {
    int max_iterations = 500;
    double gradient_tolerance = 1e-10;
    std::optional<std::vector<double>> initial_guess; ///< default: linear interpolation
    double ls_shrink = 0.5;                           ///< backtracking shrink factor
    double ls_sufficient_decrease = 1e-4;             ///< Armijo constant
    bool record_history = false;                      ///< keep per-iteration values
};

struct SolveResult {
    Trajectory trajectory;
    double value = 0.0;
    double gradient_sup = 0.0;
    int iterations = 0;
    bool converged = false;
    std::vector<double> value_history; ///< filled when record_history is set
};

/// Exact gradient of the discrete functional with respect to the free
/// interior values, by the chain rule through every difference stencil.
std::vector<double> functional_gradient(const VariationalProblem& p,
                                        std::span<const double> free);

/// Gradient with respect to the interior nodes of an arbitrary trajectory
/// (equals functional_gradient at the trajectory's own interior when y is
/// admissible).
std::vector<double> functional_gradient_at(const VariationalProblem& p, const Trajectory& y);

/// Gradient descent with backtracking line search over the free interior
/// values.  Trial steps are seeded with a Barzilai-Borwein length, which the
/// Armijo condition then safeguards, so accepted values never increase.
/// With no free values the forced trajectory is returned as converged.
SolveResult minimize_direct(const VariationalProblem& p, const SolveOptions& opts = {});

struct EquivalenceReport {
    double gradient_sup = 0.0;
    double el_residual_sup = 0.0;
    double scale = 1.0; ///< residual tolerance scale of the trajectory
    bool gradient_stationary = false;
    bool residual_stationary = false;
    bool agree = false;
};

/// Checks that "gradient vanishes" and "the fitted residual vanishes" give
/// the same verdict at tolerance tol (residual side scaled by the tolerance
/// scale).
EquivalenceReport verify_stationarity_equivalence(const VariationalProblem& p,
                                                  const Trajectory& y, double tol = 1e-8);

} // namespace deltavar
