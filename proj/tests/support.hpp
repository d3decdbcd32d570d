#pragma once

// Shared generators for the randomized suites: non-uniform scales with
// moderate gap ratios, convex quadratic Lagrangians, admissible trajectories.

#include "deltavar/random.hpp"
#include "deltavar/variational.hpp"

#include <vector>

namespace testsupport {

inline deltavar::TimeScale random_scale(deltavar::Rng& rng, std::size_t n) {
    std::vector<double> pts(n);
    pts[0] = 0.0;
    for (std::size_t i = 1; i < n; ++i) pts[i] = pts[i - 1] + rng.uniform(0.6, 1.4);
    return deltavar::TimeScale::from_points(std::move(pts));
}

/// Sum of q_i * yi^2 + l_i * yi with q_i in [0.5, 2) and l_i in [-1, 1).
inline deltavar::Lagrangian random_convex_quadratic(deltavar::Rng& rng, int r) {
    using deltavar::Expr;
    using deltavar::Var;
    Expr body = Expr::constant(0.0);
    for (int i = 0; i <= r; ++i) {
        const Expr yi = Expr::variable(Var::y(i));
        body = Expr::add(body, Expr::mul(Expr::constant(rng.uniform(0.5, 2.0)),
                                         Expr::pow(yi, Expr::constant(2.0))));
        body = Expr::add(body, Expr::mul(Expr::constant(rng.uniform(-1.0, 1.0)), yi));
    }
    return deltavar::Lagrangian(body, r);
}

inline deltavar::VariationalProblem random_problem(deltavar::Rng& rng, int r, std::size_t n) {
    auto ts = random_scale(rng, n);
    auto lag = random_convex_quadratic(rng, r);
    std::vector<double> left(static_cast<std::size_t>(r)), right(static_cast<std::size_t>(r));
    for (auto& v : left) v = rng.uniform(-1.0, 1.0);
    for (auto& v : right) v = rng.uniform(-1.0, 1.0);
    return deltavar::VariationalProblem(std::move(ts), std::move(lag), std::move(left),
                                        std::move(right));
}

inline std::vector<double> random_free(deltavar::Rng& rng, std::size_t m) {
    std::vector<double> v(m);
    for (auto& x : v) x = rng.uniform(-1.0, 1.0);
    return v;
}

} // namespace testsupport
