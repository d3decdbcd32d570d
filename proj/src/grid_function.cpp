#include "deltavar/grid_function.hpp"

#include "deltavar/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace deltavar {

GridFunction::GridFunction(TimeScale domain, std::vector<double> values)
    : domain_(std::move(domain)), values_(std::move(values)) {
    if (values_.size() != domain_.size())
        fail(errc::length_mismatch, "grid function needs one value per domain point (" +
                                        std::to_string(domain_.size()) + "), got " +
                                        std::to_string(values_.size()));
    for (double v : values_)
        if (!std::isfinite(v)) fail(errc::nonfinite_value, "grid function value is not finite");
}

GridFunction GridFunction::constant(TimeScale domain, double value) {
    std::vector<double> v(domain.size(), value);
    return GridFunction(std::move(domain), std::move(v));
}

GridFunction GridFunction::sample(TimeScale domain, const std::function<double(double)>& fn) {
    std::vector<double> v(domain.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = fn(domain[i]);
    return GridFunction(std::move(domain), std::move(v));
}

double GridFunction::at(Point t) const {
    if (!domain_.contains(t)) fail(errc::point_not_found, "point not on this grid function's domain");
    return values_[t.index];
}

double GridFunction::max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

namespace {
void require_same_domain(const GridFunction& a, const GridFunction& b) {
    if (!a.domain().same_points(b.domain()))
        fail(errc::scale_mismatch, "grid functions live on different domains; restrict to a "
                                   "common truncation first");
}
} // namespace

GridFunction& GridFunction::operator+=(const GridFunction& other) {
    require_same_domain(*this, other);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
    return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& other) {
    require_same_domain(*this, other);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
    return *this;
}

GridFunction& GridFunction::operator+=(double c) {
    for (double& v : values_) v += c;
    return *this;
}

GridFunction& GridFunction::operator*=(double c) {
    for (double& v : values_) v *= c;
    return *this;
}

GridFunction delta_derivative(const GridFunction& f) {
    if (f.size() < 2) fail(errc::domain_too_short, "delta derivative needs at least 2 points");
    const TimeScale& d = f.domain();
    std::vector<double> out(f.size() - 1);
    for (std::size_t i = 0; i + 1 < f.size(); ++i) out[i] = (f[i + 1] - f[i]) / d.mu_at(i);
    return GridFunction(d.kappa_trunc(1), std::move(out));
}

GridFunction delta_derivative_n(const GridFunction& f, std::size_t r) {
    if (f.size() < r + 1)
        fail(errc::domain_too_short, "order-" + std::to_string(r) + " delta derivative needs " +
                                         std::to_string(r + 1) + " points, domain has " +
                                         std::to_string(f.size()));
    GridFunction g = f;
    for (std::size_t k = 0; k < r; ++k) g = delta_derivative(g);
    return g;
}

namespace {

// Weight of index k in a Cauchy sum that may reach one past the domain
// maximum: the in-scale graininess where defined, else the parent gap or an
// explicitly supplied ambient gap.
double integration_gap(const GridFunction& f, std::size_t k, std::optional<double> ambient) {
    const TimeScale& d = f.domain();
    if (k + 1 < d.size()) return d.mu_at(k);
    if (auto g = d.gap_after_max()) return *g;
    if (ambient) return *ambient;
    fail(errc::out_of_range, "integration reaches past the domain maximum and no successor gap "
                             "is known");
}

} // namespace

double delta_integral(const GridFunction& f, Point c, Point d) {
    const TimeScale& dom = f.domain();
    const bool c_ok = dom.contains(c);
    const bool d_ok = dom.contains(d) || (dom.successor_of_max() && *dom.successor_of_max() == d);
    if (!c_ok || !d_ok) fail(errc::point_not_found, "integration endpoint not on the domain");
    if (c.index > d.index) fail(errc::out_of_range, "delta integral requires c <= d");
    double sum = 0.0;
    for (std::size_t k = c.index; k < d.index; ++k) sum += integration_gap(f, k, {}) * f[k];
    return sum;
}

GridFunction sigma_prefix_integral(const GridFunction& f, std::optional<double> gap_at_max) {
    const TimeScale& d = f.domain();
    std::size_t n = f.size();
    if (!d.gap_after_max() && !gap_at_max) {
        // no successor beyond the maximum: the prefix integral drops it
        if (n < 2) fail(errc::domain_too_short, "sigma prefix integral needs a successor point");
        n -= 1;
    }
    std::vector<double> out(n);
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        acc += integration_gap(f, k, gap_at_max) * f[k];
        out[k] = acc;
    }
    return GridFunction(n == f.size() ? d : d.kappa_trunc(1), std::move(out));
}

double nested_sigma_integral(const GridFunction& f, std::size_t depth, Point t) {
    if (depth == 0) fail(errc::out_of_range, "nest depth must be positive");
    const TimeScale& d = f.domain();
    if (!d.contains(t)) fail(errc::point_not_found, "nest evaluation point not on the domain");
    if (t.index + 1 >= d.size() && !d.gap_after_max())
        fail(errc::out_of_range, "nest at the domain maximum needs a successor gap");
    std::vector<double> v(f.values().begin(), f.values().begin() + static_cast<std::ptrdiff_t>(t.index) + 1);
    for (std::size_t level = 0; level < depth; ++level) {
        double acc = 0.0;
        for (std::size_t k = 0; k < v.size(); ++k) {
            acc += integration_gap(f, k, {}) * v[k];
            v[k] = acc;
        }
    }
    return v[t.index];
}

GridFunction shift_sigma(const GridFunction& f, std::size_t n) {
    if (n >= f.size()) fail(errc::domain_too_short, "sigma shift exceeds the domain");
    std::vector<double> out(f.values().begin() + static_cast<std::ptrdiff_t>(n), f.values().end());
    return GridFunction(f.domain().kappa_trunc(n), std::move(out));
}

double check_exgc_identity(double h, const TimeScale& window, const GridFunction& f,
                           std::size_t i, std::size_t j) {
    if (j == 0 || i >= j) fail(errc::out_of_range, "identity requires 0 <= i < j");
    if (!(h > 0)) fail(errc::out_of_range, "identity requires h > 0");
    if (!f.domain().same_points(window))
        fail(errc::scale_mismatch, "grid function must live on the window");
    if (!window.is_uniform() || std::abs(window.mu_at(0) - h) > 1e-9 * h)
        fail(errc::not_uniform, "window is not a uniform h-lattice");
    if (window.size() <= j)
        fail(errc::domain_too_short, "window too short for a " + std::to_string(j) +
                                         "-fold delta derivative");

    // left side: (j - i)-fold sigma-nest, then j delta derivatives.  The nest
    // keeps the full window by using the ambient lattice gap h at the maximum.
    GridFunction nest = f;
    for (std::size_t level = 0; level < j - i; ++level) nest = sigma_prefix_integral(nest, h);
    GridFunction lhs = delta_derivative_n(nest, j);

    GridFunction rhs = shift_sigma(delta_derivative_n(f, i), j - i);
    return max_abs_diff(lhs, rhs);
}

double max_abs_diff(const GridFunction& a, const GridFunction& b) {
    if (!a.domain().same_points(b.domain()))
        fail(errc::scale_mismatch, "grid functions live on different domains");
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
    return m;
}

} // namespace deltavar
