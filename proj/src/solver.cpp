#include "deltavar/solver.hpp"

#include "deltavar/errors.hpp"
#include "deltavar/euler_lagrange.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace deltavar {

namespace {

double sup_norm(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

} // namespace

std::vector<double> functional_gradient_at(const VariationalProblem& p, const Trajectory& y) {
    const auto r = static_cast<std::size_t>(p.order());
    const TimeScale& ts = p.scale();
    const std::size_t n = ts.size();

    // Weighted partials mu(t) dL/dy_i on [a, rho^r(b)], then the adjoint of
    // the i-fold difference operator pushes each back to the raw nodes.
    std::vector<double> grad_raw(n, 0.0);
    for (std::size_t i = 0; i <= r; ++i) {
        GridFunction gi = partial_along(p, y, static_cast<int>(i));
        std::vector<double> w(n - i, 0.0);
        for (std::size_t k = 0; k < gi.size(); ++k) w[k] = ts.mu_at(k) * gi[k];
        // adjoint of one difference stage maps length n-j to n-j+1
        for (std::size_t j = i; j >= 1; --j) {
            const std::size_t len = n - j;
            std::vector<double> out(len + 1, 0.0);
            for (std::size_t m = 0; m <= len; ++m) {
                double v = 0.0;
                if (m > 0) v += w[m - 1] / ts.mu_at(m - 1);
                if (m < len) v -= w[m] / ts.mu_at(m);
                out[m] = v;
            }
            w = std::move(out);
        }
        for (std::size_t m = 0; m < n; ++m) grad_raw[m] += w[m];
    }

    std::vector<double> grad;
    grad.reserve(p.free_count());
    for (std::size_t m = r; m + r < n; ++m) grad.push_back(grad_raw[m]);
    return grad;
}

std::vector<double> functional_gradient(const VariationalProblem& p,
                                        std::span<const double> free) {
    return functional_gradient_at(p, embed_free(p, free));
}

namespace {

std::vector<double> default_initial_guess(const VariationalProblem& p) {
    const auto r = static_cast<std::size_t>(p.order());
    const TimeScale& ts = p.scale();
    const auto layers = boundary_layer_solve(p);
    const double t0 = ts[r - 1], t1 = ts[ts.size() - r];
    const double v0 = layers.left.back(), v1 = layers.right.front();
    const double slope = (v1 - v0) / (t1 - t0);
    std::vector<double> guess;
    guess.reserve(p.free_count());
    for (std::size_t m = r; m + r < ts.size(); ++m) guess.push_back(v0 + slope * (ts[m] - t0));
    return guess;
}

} // namespace

SolveResult minimize_direct(const VariationalProblem& p, const SolveOptions& opts) {
    if (opts.max_iterations < 1) fail(errc::out_of_range, "max_iterations must be positive");
    if (!(opts.gradient_tolerance > 0)) fail(errc::out_of_range, "gradient_tolerance must be positive");
    if (!(opts.ls_shrink > 0 && opts.ls_shrink < 1))
        fail(errc::out_of_range, "line-search shrink must lie in (0, 1)");

    const std::size_t dim = p.free_count();
    if (dim == 0) {
        Trajectory forced = embed_free(p, {});
        const double v = functional_value(p, forced);
        return SolveResult{std::move(forced), v, 0.0, 0, true, {}};
    }

    std::vector<double> x = opts.initial_guess ? *opts.initial_guess : default_initial_guess(p);
    if (x.size() != dim)
        fail(errc::length_mismatch, "initial guess needs " + std::to_string(dim) + " values");

    auto value_of = [&](std::span<const double> v) { return functional_value(p, embed_free(p, v)); };

    double f = value_of(x);
    std::vector<double> g = functional_gradient(p, x);
    double gsup = sup_norm(g);

    std::vector<double> history;
    if (opts.record_history) history.push_back(f);

    std::vector<double> x_prev, g_prev, trial(dim);
    double alpha = 1.0 / std::max(1.0, gsup);
    int iter = 0;
    for (; iter < opts.max_iterations && gsup > opts.gradient_tolerance; ++iter) {
        if (!x_prev.empty()) {
            // Barzilai-Borwein trial length from the last step
            double ss = 0.0, sy = 0.0;
            for (std::size_t i = 0; i < dim; ++i) {
                const double s = x[i] - x_prev[i];
                ss += s * s;
                sy += s * (g[i] - g_prev[i]);
            }
            alpha = sy > 0 ? std::clamp(ss / sy, 1e-14, 1e14) : 1.0;
        }
        const double g2 = dot(g, g);
        const double noise = 8 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(f));
        bool accepted = false;
        std::vector<double> g_next;

        if (alpha * g2 > noise) {
            // decreases are representable: backtrack on the Armijo condition
            double step = alpha;
            for (int bt = 0; bt < 80 && step * g2 > noise; ++bt) {
                for (std::size_t i = 0; i < dim; ++i) trial[i] = x[i] - step * g[i];
                const double f_trial = value_of(trial);
                if (!std::isfinite(f_trial))
                    fail(errc::nonfinite_value, "functional is not finite along the search direction");
                if (f_trial <= f - opts.ls_sufficient_decrease * step * g2) {
                    accepted = true;
                    f = f_trial;
                    if (opts.record_history) history.push_back(f);
                    break;
                }
                step *= opts.ls_shrink;
            }
        }
        if (!accepted) {
            // value differences have fallen below rounding; certify progress
            // on the exact gradient instead (its l2 norm decreases along the
            // descent direction for small enough steps)
            double step = alpha;
            for (int bt = 0; bt < 80; ++bt) {
                for (std::size_t i = 0; i < dim; ++i) trial[i] = x[i] - step * g[i];
                std::vector<double> gt = functional_gradient(p, trial);
                if (dot(gt, gt) < g2) {
                    accepted = true;
                    g_next = std::move(gt);
                    f = value_of(trial);
                    break;
                }
                step *= opts.ls_shrink;
            }
        }
        if (!accepted) break; // no certifiable progress in either sense

        x_prev = std::move(x);
        g_prev = std::move(g);
        x = trial;
        g = g_next.empty() ? functional_gradient(p, x) : std::move(g_next);
        gsup = sup_norm(g);
    }

    return SolveResult{embed_free(p, x), f, gsup, iter, gsup <= opts.gradient_tolerance,
                       std::move(history)};
}

EquivalenceReport verify_stationarity_equivalence(const VariationalProblem& p,
                                                  const Trajectory& y, double tol) {
    EquivalenceReport rep;
    rep.gradient_sup = sup_norm(functional_gradient_at(p, y));
    const ELReport el = fit_constants(p, y, tol);
    rep.el_residual_sup = el.residual_sup;
    rep.scale = el.scale;
    rep.gradient_stationary = rep.gradient_sup <= tol;
    rep.residual_stationary = el.stationary;
    rep.agree = rep.gradient_stationary == rep.residual_stationary;
    return rep;
}

} // namespace deltavar
