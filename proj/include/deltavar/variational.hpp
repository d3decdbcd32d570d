#pragma once

#include "deltavar/grid_function.hpp"
#include "deltavar/lagrangian.hpp"
#include "deltavar/timescale.hpp"

#include <span>
#include <vector>

namespace deltavar {

/**
 * The fixed-endpoint problem of order r on a finite time scale: minimize the
 * delta integral of L(t, y, y^delta, ..., y^{delta^r}) subject to the 2r
 * conditions y^{delta^i}(a) = left[i] and y^{delta^i}(rho^{r-1}(b)) =
 * right[i], i = 0..r-1.
 *
 * The scale must have at least 2r+1 points for the problem to be nontrivial;
 * exactly 2r points are allowed (degenerate() is then true) so the forced
 * single-trajectory case can be examined.
 */
class VariationalProblem {
public:
    VariationalProblem(TimeScale scale, Lagrangian lagrangian, std::vector<double> left,
                       std::vector<double> right);

    const TimeScale& scale() const noexcept { return scale_; }
    const Lagrangian& lagrangian() const noexcept { return lagrangian_; }
    int order() const noexcept { return lagrangian_.order(); }

    std::span<const double> left_boundary() const noexcept { return left_; }
    std::span<const double> right_boundary() const noexcept { return right_; }

    /// Number of unconstrained interior values, N - 2r.
    std::size_t free_count() const noexcept;

    /// True when the scale has exactly 2r points, so the admissible set is a
    /// single forced trajectory.
    bool degenerate() const noexcept;

private:
    TimeScale scale_;
    Lagrangian lagrangian_;
    std::vector<double> left_, right_;
};

/// A candidate y defined at every point of the problem's scale.
struct Trajectory {
    GridFunction y;
};

/// Wraps raw values as a trajectory on the problem's scale.
Trajectory make_trajectory(const VariationalProblem& p, std::vector<double> values);

/// The stack y^{delta^0}, ..., y^{delta^r} (levels on successively shorter
/// truncations).
std::vector<GridFunction> derivative_stack(const VariationalProblem& p, const Trajectory& y);

/// dL/dy_i along the trajectory, on [a, rho^r(b)].
GridFunction partial_along(const VariationalProblem& p, const Trajectory& y, int i);

/// Sum over t in [a, rho^r(b)] of mu(t) L(t, y(t), ..., y^{delta^r}(t)).
double functional_value(const VariationalProblem& p, const Trajectory& y);

struct BoundaryLayers {
    std::vector<double> left;  // y at indices 0..r-1
    std::vector<double> right; // y at indices N-r..N-1
};

/// The unique first r / last r raw values consistent with the boundary
/// conditions, by the triangular recurrence f(sigma(t)) = f(t) + mu(t)
/// f^delta(t).
BoundaryLayers boundary_layer_solve(const VariationalProblem& p);

/// Trajectory with the given interior values and boundary layers solved
/// exactly; bijective onto the admissible set.
Trajectory embed_free(const VariationalProblem& p, std::span<const double> free);

/// Interior values of a trajectory (inverse of embed_free on admissible y).
std::vector<double> interior_values(const VariationalProblem& p, const Trajectory& y);

/// All 2r boundary conditions hold to within tol (absolute).
bool is_admissible(const VariationalProblem& p, const Trajectory& y, double tol = 1e-10);

/// For a 2r-point problem the admissible set is a singleton, so the
/// functional is constant; evaluates it `samples` times and returns the
/// spread max - min (zero).  Throws wrong_point_count unless N = 2r.
double degenerate_constant_check(const VariationalProblem& p, int samples);

/// Sum over i = 0..r of the sup over the respective truncated domain of
/// |y^{delta^i} - ybar^{delta^i}|.
double norm_r_inf(const VariationalProblem& p, const Trajectory& y, const Trajectory& ybar);

} // namespace deltavar
