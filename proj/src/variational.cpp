#include "deltavar/variational.hpp"

#include "deltavar/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace deltavar {

VariationalProblem::VariationalProblem(TimeScale scale, Lagrangian lagrangian,
                                       std::vector<double> left, std::vector<double> right)
    : scale_(std::move(scale)), lagrangian_(std::move(lagrangian)), left_(std::move(left)),
      right_(std::move(right)) {
    const auto r = static_cast<std::size_t>(lagrangian_.order());
    if (left_.size() != r || right_.size() != r)
        fail(errc::length_mismatch, "boundary data must provide " + std::to_string(r) +
                                        " values per side, got " + std::to_string(left_.size()) +
                                        "/" + std::to_string(right_.size()));
    for (double v : left_)
        if (!std::isfinite(v)) fail(errc::nonfinite_value, "left boundary value is not finite");
    for (double v : right_)
        if (!std::isfinite(v)) fail(errc::nonfinite_value, "right boundary value is not finite");
    if (scale_.size() < 2 * r)
        fail(errc::domain_too_short, "an order-" + std::to_string(r) + " problem needs at least " +
                                         std::to_string(2 * r) + " points, scale has " +
                                         std::to_string(scale_.size()));
}

std::size_t VariationalProblem::free_count() const noexcept {
    return scale_.size() - 2 * static_cast<std::size_t>(order());
}

bool VariationalProblem::degenerate() const noexcept { return free_count() == 0; }

Trajectory make_trajectory(const VariationalProblem& p, std::vector<double> values) {
    return Trajectory{GridFunction(p.scale(), std::move(values))};
}

namespace {

void require_on_scale(const VariationalProblem& p, const Trajectory& y) {
    if (!y.y.domain().same_points(p.scale()))
        fail(errc::scale_mismatch, "trajectory does not live on the problem's time scale");
}

} // namespace

std::vector<GridFunction> derivative_stack(const VariationalProblem& p, const Trajectory& y) {
    require_on_scale(p, y);
    std::vector<GridFunction> stack;
    stack.reserve(static_cast<std::size_t>(p.order()) + 1);
    stack.push_back(y.y);
    for (int i = 0; i < p.order(); ++i) stack.push_back(delta_derivative(stack.back()));
    return stack;
}

GridFunction partial_along(const VariationalProblem& p, const Trajectory& y, int i) {
    const auto stack = derivative_stack(p, y);
    const auto r = static_cast<std::size_t>(p.order());
    const std::size_t n = p.scale().size() - r;
    std::vector<double> slots(r + 1), out(n);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t s = 0; s <= r; ++s) slots[s] = stack[s][k];
        out[k] = p.lagrangian().eval_partial(i, p.scale()[k], slots);
    }
    return GridFunction(p.scale().kappa_trunc(r), std::move(out));
}

double functional_value(const VariationalProblem& p, const Trajectory& y) {
    const auto stack = derivative_stack(p, y);
    const auto r = static_cast<std::size_t>(p.order());
    const std::size_t n = p.scale().size() - r;
    std::vector<double> slots(r + 1);
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t s = 0; s <= r; ++s) slots[s] = stack[s][k];
        sum += p.scale().mu_at(k) * p.lagrangian().eval(p.scale()[k], slots);
    }
    if (!std::isfinite(sum)) fail(errc::nonfinite_value, "functional value is not finite");
    return sum;
}

BoundaryLayers boundary_layer_solve(const VariationalProblem& p) {
    const auto r = static_cast<std::size_t>(p.order());
    const TimeScale& ts = p.scale();
    BoundaryLayers out;

    // Column k of the triangle holds y^{delta^i}(sigma^k(start)); each step
    // applies f(sigma(t)) = f(t) + mu(t) f^delta(t) and loses the top level.
    auto solve_layer = [&](std::span<const double> data, std::size_t start) {
        std::vector<double> col(data.begin(), data.end());
        std::vector<double> vals;
        vals.reserve(r);
        vals.push_back(col[0]);
        for (std::size_t k = 0; k + 1 < r; ++k) {
            const double mu = ts.mu_at(start + k);
            for (std::size_t i = 0; i + 1 < col.size(); ++i) col[i] += mu * col[i + 1];
            col.pop_back();
            vals.push_back(col[0]);
        }
        return vals;
    };

    out.left = solve_layer(p.left_boundary(), 0);
    out.right = solve_layer(p.right_boundary(), ts.size() - r);
    return out;
}

Trajectory embed_free(const VariationalProblem& p, std::span<const double> free) {
    if (free.size() != p.free_count())
        fail(errc::length_mismatch, "expected " + std::to_string(p.free_count()) +
                                        " interior values, got " + std::to_string(free.size()));
    const auto layers = boundary_layer_solve(p);
    std::vector<double> values;
    values.reserve(p.scale().size());
    values.insert(values.end(), layers.left.begin(), layers.left.end());
    values.insert(values.end(), free.begin(), free.end());
    values.insert(values.end(), layers.right.begin(), layers.right.end());
    return make_trajectory(p, std::move(values));
}

std::vector<double> interior_values(const VariationalProblem& p, const Trajectory& y) {
    require_on_scale(p, y);
    const auto r = static_cast<std::size_t>(p.order());
    std::vector<double> out;
    out.reserve(p.free_count());
    for (std::size_t k = r; k + r < p.scale().size(); ++k) out.push_back(y.y[k]);
    return out;
}

bool is_admissible(const VariationalProblem& p, const Trajectory& y, double tol) {
    const auto stack = derivative_stack(p, y);
    const auto r = static_cast<std::size_t>(p.order());
    const std::size_t right_at = p.scale().size() - r;
    for (std::size_t i = 0; i < r; ++i) {
        if (std::abs(stack[i][0] - p.left_boundary()[i]) > tol) return false;
        if (std::abs(stack[i][right_at] - p.right_boundary()[i]) > tol) return false;
    }
    return true;
}

double degenerate_constant_check(const VariationalProblem& p, int samples) {
    if (!p.degenerate())
        fail(errc::wrong_point_count, "degeneracy check requires exactly " +
                                          std::to_string(2 * p.order()) + " points, scale has " +
                                          std::to_string(p.scale().size()));
    if (samples < 1) fail(errc::out_of_range, "samples must be positive");
    double lo = 0.0, hi = 0.0;
    for (int s = 0; s < samples; ++s) {
        const double v = functional_value(p, embed_free(p, {}));
        if (s == 0) lo = hi = v;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return hi - lo;
}

double norm_r_inf(const VariationalProblem& p, const Trajectory& y, const Trajectory& ybar) {
    require_on_scale(p, y);
    require_on_scale(p, ybar);
    const auto sy = derivative_stack(p, y);
    const auto sb = derivative_stack(p, ybar);
    double total = 0.0;
    for (std::size_t i = 0; i < sy.size(); ++i) total += max_abs_diff(sy[i], sb[i]);
    return total;
}

} // namespace deltavar
