#pragma once

#include "deltavar/timescale.hpp"

#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace deltavar {

/**
 * A real value attached to each point of a time scale (or of one of its
 * kappa-truncations).  Values are indexed by scale position; combining two
 * grid functions requires identical domains -- callers restrict to a common
 * truncation explicitly.
 */
class GridFunction {
public:
    GridFunction(TimeScale domain, std::vector<double> values);

    static GridFunction constant(TimeScale domain, double value);
    static GridFunction sample(TimeScale domain, const std::function<double(double)>& fn);

    const TimeScale& domain() const noexcept { return domain_; }
    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    std::span<const double> values() const noexcept { return values_; }

    /// Value at a point of the domain; throws point_not_found otherwise.
    double at(Point t) const;

    double max_abs() const;

    GridFunction& operator+=(const GridFunction& other);
    GridFunction& operator-=(const GridFunction& other);
    GridFunction& operator+=(double c);
    GridFunction& operator*=(double c);

    friend GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
    friend GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
    friend GridFunction operator+(GridFunction a, double c) { return a += c; }
    friend GridFunction operator-(GridFunction a, double c) { return a += -c; }
    friend GridFunction operator*(double c, GridFunction a) { return a *= c; }
    friend GridFunction operator-(GridFunction a) { return a *= -1.0; }

private:
    TimeScale domain_;
    std::vector<double> values_;
};

/// Exact difference quotient (f(sigma(t)) - f(t)) / mu(t), defined on the
/// kappa-truncation of f's domain.  Throws domain_too_short below 2 points.
GridFunction delta_derivative(const GridFunction& f);

/// r-fold delta derivative; r = 0 returns f unchanged.
GridFunction delta_derivative_n(const GridFunction& f, std::size_t r);

/// Cauchy sum over [c, d) of mu(t) f(t).  Endpoints must lie on f's domain;
/// d may also be the parent-storage successor of the domain maximum, so the
/// fundamental-theorem identity reaches the dropped right endpoint.
double delta_integral(const GridFunction& f, Point c, Point d);

/// The function t -> integral from a to sigma(t) of f, on the same domain
/// as f.  The weight at the domain maximum is the parent-storage gap when f
/// lives on a truncation, or gap_at_max when provided (the ambient lattice
/// gap for uniform-window identities); otherwise the maximum is dropped.
GridFunction sigma_prefix_integral(const GridFunction& f,
                                   std::optional<double> gap_at_max = std::nullopt);

/// Depth-fold nest where each inner integral runs from a to sigma of the
/// outer variable, evaluated at t.  Computed by prefix sums, O(depth * N).
double nested_sigma_integral(const GridFunction& f, std::size_t depth, Point t);

/// f composed with sigma^n: value at index k is f[k + n].
GridFunction shift_sigma(const GridFunction& f, std::size_t n);

/// Max absolute discrepancy of the lattice identity relating the j-th delta
/// derivative of the (j-i)-fold nested sigma-integral of f to
/// f^{delta^i}(sigma^{j-i}(t)), over a uniform window with gap h.
double check_exgc_identity(double h, const TimeScale& window, const GridFunction& f,
                           std::size_t i, std::size_t j);

double max_abs_diff(const GridFunction& a, const GridFunction& b);

} // namespace deltavar
