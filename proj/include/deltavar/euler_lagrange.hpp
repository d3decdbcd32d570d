#pragma once

#include "deltavar/variational.hpp"

#include <span>
#include <vector>

namespace deltavar {

/// Costate functions of the control reformulation.  Level i of p_sigma is
/// p_i composed with sigma, on [a, rho^r(b)], built by the level-wise
/// recursion with one free constant per level (multiplier normalized to 1).
struct AdjointState {
    std::vector<GridFunction> p_sigma;
    std::vector<double> constants;
};

/// Outcome of checking the necessary condition on a trajectory.
struct ELReport {
    std::vector<double> constants; ///< fitted c_1..c_r
    GridFunction residual;         ///< on [a, rho^r(b)]
    double residual_sup = 0.0;
    double residual_l2 = 0.0;
    double scale = 1.0;       ///< 1 + sup |dL/dy_i| along the trajectory
    double rel_tol = 0.0;     ///< tolerance the verdict used (relative to scale)
    bool stationary = false;  ///< residual_sup <= rel_tol * scale
};

/// State-space form of the order-r problem: x = (y, y^delta, ...,
/// y^{delta^{r-1}}), control u = y^{delta^r}, x^delta = A x + B u with A the
/// superdiagonal shift and B the last unit vector.
struct ControlForm {
    std::size_t order = 1;
    std::vector<std::vector<double>> A;
    std::vector<double> B;
};

/// The costate recursion: level 0 integrates dL/dy0, each higher level
/// integrates its own partial plus the previous level, every level offset by
/// its constant.  Requires at least 2r+1 points.
AdjointState adjoint_recursion(const VariationalProblem& p, const Trajectory& y,
                               std::span<const double> constants);

/// Residual of the necessary condition: dL/dy_r along y plus the top costate
/// level.  Identically zero (for some constants) iff the Euler-Lagrange
/// equation holds.
GridFunction el_residual(const VariationalProblem& p, const Trajectory& y,
                         std::span<const double> constants);

/// Fits the constants by linear least squares (the residual is affine in
/// them) and reports the resulting residual and verdict.  The design matrix
/// has full column rank for any scale with at least 2r+1 points; this is
/// verified and degenerate_system is thrown if violated.
ELReport fit_constants(const VariationalProblem& p, const Trajectory& y, double rel_tol = 1e-8);

/// 1 + sup over nodes and slots of |dL/dy_i|; the residual tolerance scale.
double residual_scale(const VariationalProblem& p, const Trajectory& y);

/// First-order specialization written directly from its closed form:
/// dL/dy1 - integral_a^{sigma(t)} dL/dy0 - c1.  Requires order 1.
GridFunction el_residual_r1(const VariationalProblem& p, const Trajectory& y, double c1);

/// Second-order specialization written directly from its closed form:
/// dL/dy2 - S(dL/dy1) + S(S(dL/dy0) + c1) - c2 with S the sigma-prefix
/// integral.  Requires order 2.
GridFunction el_residual_r2(const VariationalProblem& p, const Trajectory& y, double c1,
                            double c2);

/// Delta-differentiated form on a uniform lattice: the r-th delta derivative
/// of dL/dy_r plus the alternating sigma-shifted derivatives of the lower
/// partials.  Equals the r-th delta derivative of el_residual.
GridFunction h_el_differentiated(const VariationalProblem& p, const Trajectory& y);

ControlForm to_control_form(const VariationalProblem& p);

/// Steps x(sigma(t)) = x(t) + mu(t)(A x(t) + B u(t)) from x(a) = x_a across
/// the domain of u; returns the r component trajectories on [a,
/// rho^{r-1}(b)].
std::vector<GridFunction> simulate_state(const ControlForm& cf, const TimeScale& ts,
                                         std::span<const double> x_a, const GridFunction& u);

/// Runs the constants-free homogeneous costate system backward, mirroring
/// the elimination argument that forces p to vanish when the scale has at
/// least 2r+1 points; returns sup |p_i| over all levels and points.
double homogeneous_adjoint_sup(const TimeScale& ts, int order);

} // namespace deltavar
