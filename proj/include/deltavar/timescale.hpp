#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace deltavar {

/// A point of a time scale: its value together with its ordinal index.
/// Indices refer to the underlying point storage, so a Point stays valid
/// across kappa-truncations of the same scale.
struct Point {
    double value = 0.0;
    std::size_t index = 0;

    friend bool operator==(const Point&, const Point&) = default;
};

/**
 * A finite time scale: a strictly increasing sequence of real points.
 *
 * sigma/rho are the forward/backward jump operators (fixed at the maximum
 * and minimum respectively) and mu is the graininess sigma(t) - t.
 *
 * kappa_trunc(n) drops the n largest points but shares the underlying point
 * storage.  A truncated scale therefore still knows the gap that follows its
 * maximum in the parent scale (gap_after_max), which the sigma-weighted
 * prefix integrals of the delta calculus rely on.
 *
 * Immutable after construction; cheap to copy, safe to share across threads.
 */
class TimeScale {
public:
    /// Builds a scale from arbitrary values: sorts and removes exact
    /// duplicates.  Throws too_few_points (fewer than 2 distinct values
    /// remain) or nonfinite_value.
    static TimeScale from_points(std::vector<double> values);

    /// The window [a, b] over the lattice a + k*h.  (b - a)/h must be an
    /// integer to within 1e-9.
    static TimeScale h_window(double a, double b, double h);

    /// Integer window {a, a+1, ..., b}; a and b must be integral.
    static TimeScale integer_window(double a, double b);

    std::size_t size() const noexcept { return count_; }
    double operator[](std::size_t i) const { return (*pts_)[i]; }
    std::span<const double> points() const { return {pts_->data(), count_}; }

    double a() const { return (*pts_)[0]; }
    double b() const { return (*pts_)[count_ - 1]; }

    Point point(std::size_t i) const;
    Point a_point() const { return point(0); }
    Point b_point() const { return point(count_ - 1); }

    /// True when t is one of this scale's points (index in range and value
    /// matching the stored point exactly).
    bool contains(Point t) const noexcept;

    /// Finds the point with the given value, using absolute tolerance 1e-12.
    /// Throws point_not_found, or ambiguous_point when two points match.
    Point locate(double value) const;

    Point sigma(Point t) const;
    Point rho(Point t) const;
    double mu(Point t) const;

    /// Graininess by index: points[i+1] - points[i], and 0 at the maximum.
    double mu_at(std::size_t i) const;

    Point sigma_n(Point t, std::size_t n) const;
    Point rho_n(Point t, std::size_t n) const;

    /// The scale with its n largest points removed.  Throws out_of_range
    /// when n >= size().  Shares point storage with this scale.
    TimeScale kappa_trunc(std::size_t n) const;

    /// Gap from this scale's maximum to the next point of the parent
    /// storage, when this scale is a truncation that remembers one.
    std::optional<double> gap_after_max() const;

    /// The parent-storage point just past this scale's maximum, if any.
    std::optional<Point> successor_of_max() const;

    /// Deep equality of the visible points (used to combine grid functions
    /// built on separately constructed but identical scales).
    bool same_points(const TimeScale& other) const noexcept;

    /// All gaps equal to within rel_tol relative to the mean gap.
    bool is_uniform(double rel_tol = 1e-9) const;

private:
    TimeScale(std::shared_ptr<const std::vector<double>> pts, std::size_t count)
        : pts_(std::move(pts)), count_(count) {}

    std::shared_ptr<const std::vector<double>> pts_;
    std::size_t count_ = 0;
};

/// Factory alias for TimeScale::from_points.
TimeScale make_timescale(std::vector<double> values);

} // namespace deltavar
