#include "deltavar/euler_lagrange.hpp"

#include "deltavar/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace deltavar {

namespace {

void require_enough_points(const VariationalProblem& p) {
    const auto r = static_cast<std::size_t>(p.order());
    if (p.scale().size() < 2 * r + 1)
        fail(errc::domain_too_short, "the necessary-condition engine needs at least " +
                                         std::to_string(2 * r + 1) + " points, scale has " +
                                         std::to_string(p.scale().size()));
}

// Least squares min ||M x + b|| by Householder QR; columns of M must be
// independent.  M is (n x m) column-major, n >= m.
std::vector<double> solve_least_squares(std::vector<std::vector<double>> M, std::vector<double> b) {
    const std::size_t m = M.size();
    const std::size_t n = b.size();
    double col_scale = 0.0;
    for (const auto& col : M)
        for (double v : col) col_scale = std::max(col_scale, std::abs(v));
    for (std::size_t k = 0; k < m; ++k) {
        // Householder vector for column k below row k
        double norm = 0.0;
        for (std::size_t i = k; i < n; ++i) norm = std::hypot(norm, M[k][i]);
        if (norm <= 1e-13 * std::max(col_scale, 1.0))
            fail(errc::degenerate_system, "constant-fit design matrix is rank deficient");
        if (M[k][k] > 0) norm = -norm;
        std::vector<double> v(n - k);
        v[0] = M[k][k] - norm;
        for (std::size_t i = k + 1; i < n; ++i) v[i - k] = M[k][i];
        double vnorm2 = 0.0;
        for (double x : v) vnorm2 += x * x;
        if (vnorm2 == 0.0) continue;
        auto reflect = [&](std::vector<double>& col) {
            double dot = 0.0;
            for (std::size_t i = k; i < n; ++i) dot += v[i - k] * col[i];
            const double f = 2.0 * dot / vnorm2;
            for (std::size_t i = k; i < n; ++i) col[i] -= f * v[i - k];
        };
        for (std::size_t j = k; j < m; ++j) reflect(M[j]);
        reflect(b);
    }
    // back substitution on the upper triangle
    std::vector<double> x(m);
    for (std::size_t kk = m; kk-- > 0;) {
        double s = -b[kk];
        for (std::size_t j = kk + 1; j < m; ++j) s -= M[j][kk] * x[j];
        x[kk] = s / M[kk][kk];
    }
    return x;
}

} // namespace

AdjointState adjoint_recursion(const VariationalProblem& p, const Trajectory& y,
                               std::span<const double> constants) {
    require_enough_points(p);
    const auto r = static_cast<std::size_t>(p.order());
    if (constants.size() != r)
        fail(errc::length_mismatch, "expected " + std::to_string(r) + " constants, got " +
                                        std::to_string(constants.size()));
    AdjointState state;
    state.constants.assign(constants.begin(), constants.end());
    state.p_sigma.reserve(r);
    GridFunction level = -(sigma_prefix_integral(partial_along(p, y, 0))) - constants[0];
    state.p_sigma.push_back(level);
    for (std::size_t i = 1; i < r; ++i) {
        level = -(sigma_prefix_integral(partial_along(p, y, static_cast<int>(i)) + level)) -
                constants[i];
        state.p_sigma.push_back(level);
    }
    return state;
}

GridFunction el_residual(const VariationalProblem& p, const Trajectory& y,
                         std::span<const double> constants) {
    const auto state = adjoint_recursion(p, y, constants);
    return partial_along(p, y, p.order()) + state.p_sigma.back();
}

double residual_scale(const VariationalProblem& p, const Trajectory& y) {
    double sup = 0.0;
    for (int i = 0; i <= p.order(); ++i) sup = std::max(sup, partial_along(p, y, i).max_abs());
    return 1.0 + sup;
}

ELReport fit_constants(const VariationalProblem& p, const Trajectory& y, double rel_tol) {
    require_enough_points(p);
    const auto r = static_cast<std::size_t>(p.order());
    const std::vector<double> zeros(r, 0.0);
    const GridFunction base = el_residual(p, y, zeros);

    // The residual is affine in the constants; column j is the response to
    // the j-th unit constant.
    std::vector<std::vector<double>> columns;
    columns.reserve(r);
    for (std::size_t j = 0; j < r; ++j) {
        std::vector<double> unit(r, 0.0);
        unit[j] = 1.0;
        GridFunction col = el_residual(p, y, unit) - base;
        columns.emplace_back(col.values().begin(), col.values().end());
    }
    std::vector<double> rhs(base.values().begin(), base.values().end());
    std::vector<double> constants = solve_least_squares(std::move(columns), std::move(rhs));
    GridFunction residual = el_residual(p, y, constants);
    const double sup = residual.max_abs();
    double l2 = 0.0;
    for (double v : residual.values()) l2 += v * v;
    const double scale = residual_scale(p, y);
    return ELReport{std::move(constants), std::move(residual), sup,      std::sqrt(l2),
                    scale,               rel_tol,             sup <= rel_tol * scale};
}

GridFunction el_residual_r1(const VariationalProblem& p, const Trajectory& y, double c1) {
    if (p.order() != 1) fail(errc::order_mismatch, "closed form requires order 1");
    require_enough_points(p);
    return partial_along(p, y, 1) - sigma_prefix_integral(partial_along(p, y, 0)) - c1;
}

GridFunction el_residual_r2(const VariationalProblem& p, const Trajectory& y, double c1,
                            double c2) {
    if (p.order() != 2) fail(errc::order_mismatch, "closed form requires order 2");
    require_enough_points(p);
    GridFunction inner = sigma_prefix_integral(partial_along(p, y, 0)) + c1;
    return partial_along(p, y, 2) - sigma_prefix_integral(partial_along(p, y, 1)) +
           sigma_prefix_integral(inner) - c2;
}

GridFunction h_el_differentiated(const VariationalProblem& p, const Trajectory& y) {
    require_enough_points(p);
    if (!p.scale().is_uniform())
        fail(errc::not_uniform, "the differentiated form needs a uniform lattice");
    const int r = p.order();
    GridFunction out = delta_derivative_n(partial_along(p, y, r), static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) {
        GridFunction term = shift_sigma(
            delta_derivative_n(partial_along(p, y, i), static_cast<std::size_t>(i)),
            static_cast<std::size_t>(r - i));
        if ((r - i) % 2 == 0) out += term;
        else out -= term;
    }
    return out;
}

ControlForm to_control_form(const VariationalProblem& p) {
    const auto r = static_cast<std::size_t>(p.order());
    ControlForm cf;
    cf.order = r;
    cf.A.assign(r, std::vector<double>(r, 0.0));
    for (std::size_t i = 0; i + 1 < r; ++i) cf.A[i][i + 1] = 1.0;
    cf.B.assign(r, 0.0);
    cf.B[r - 1] = 1.0;
    return cf;
}

std::vector<GridFunction> simulate_state(const ControlForm& cf, const TimeScale& ts,
                                         std::span<const double> x_a, const GridFunction& u) {
    const std::size_t r = cf.order;
    if (x_a.size() != r)
        fail(errc::length_mismatch, "initial state needs " + std::to_string(r) + " components");
    if (!u.domain().same_points(ts.kappa_trunc(r)))
        fail(errc::length_mismatch, "control must live on [a, rho^r(b)]");

    const std::size_t steps = u.size();
    std::vector<std::vector<double>> comp(r, std::vector<double>(steps + 1));
    std::vector<double> x(x_a.begin(), x_a.end());
    for (std::size_t i = 0; i < r; ++i) comp[i][0] = x[i];
    for (std::size_t k = 0; k < steps; ++k) {
        const double mu = ts.mu_at(k);
        std::vector<double> rate(r, 0.0);
        for (std::size_t i = 0; i < r; ++i) {
            for (std::size_t j = 0; j < r; ++j) rate[i] += cf.A[i][j] * x[j];
            rate[i] += cf.B[i] * u[k];
        }
        for (std::size_t i = 0; i < r; ++i) {
            x[i] += mu * rate[i];
            comp[i][k + 1] = x[i];
        }
    }
    std::vector<GridFunction> out;
    out.reserve(r);
    const TimeScale dom = ts.kappa_trunc(r - 1);
    for (std::size_t i = 0; i < r; ++i) out.emplace_back(dom, std::move(comp[i]));
    return out;
}

double homogeneous_adjoint_sup(const TimeScale& ts, int order) {
    const auto r = static_cast<std::size_t>(order);
    if (order < 1) fail(errc::order_mismatch, "order must be at least 1");
    const std::size_t n = ts.size();
    if (n < 2 * r + 1)
        fail(errc::domain_too_short, "the elimination argument needs at least 2r+1 points");

    // p lives on indices 0..n-r.  Start from the top level: p_{r-1} composed
    // with sigma vanishes on [a, rho^r(b)], so p_{r-1} vanishes on indices
    // 1..n-r.
    const std::size_t top = n - r;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    std::vector<std::vector<double>> p(r, std::vector<double>(top + 1, nan));
    std::vector<std::size_t> first_known(r, 0);
    first_known[r - 1] = 1;
    for (std::size_t idx = 1; idx <= top; ++idx) p[r - 1][idx] = 0.0;

    // Downward elimination: a known stretch of p_i determines p_{i-1} one
    // index later through p_i^delta = -p_{i-1} o sigma.
    for (std::size_t i = r - 1; i >= 1; --i) {
        const std::size_t from = first_known[i];
        for (std::size_t idx = from; idx < top; ++idx) {
            const double deriv = (p[i][idx + 1] - p[i][idx]) / ts.mu_at(idx);
            p[i - 1][idx + 1] = -deriv;
        }
        first_known[i - 1] = from + 1;
    }

    // Level 0 is constant (its delta derivative vanishes); anchor it on the
    // known stretch and extend to the whole domain.
    const double c0 = p[0][first_known[0]];
    for (std::size_t idx = 0; idx <= top; ++idx) p[0][idx] = c0;

    // Upward substitution: each level's derivative is now fully known, so
    // integrate backward from its anchored value at the right end.
    for (std::size_t i = 1; i < r; ++i) {
        for (std::size_t idx = top; idx-- > 0;) {
            const double deriv = -p[i - 1][idx + 1]; // p_i^delta(t) = -p_{i-1}(sigma(t))
            p[i][idx] = p[i][idx + 1] - ts.mu_at(idx) * deriv;
        }
    }

    double sup = 0.0;
    for (const auto& level : p)
        for (double v : level) sup = std::max(sup, std::abs(v));
    return sup;
}

} // namespace deltavar
