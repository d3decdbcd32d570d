#include "deltavar/timescale.hpp"

#include "deltavar/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace deltavar {

namespace {
constexpr double kLookupTol = 1e-12;
}

TimeScale TimeScale::from_points(std::vector<double> values) {
    for (double v : values) {
        if (!std::isfinite(v)) fail(errc::nonfinite_value, "time scale point is not finite");
    }
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    if (values.size() < 2)
        fail(errc::too_few_points, "a time scale needs at least 2 distinct points, got " +
                                       std::to_string(values.size()));
    const std::size_t n = values.size();
    auto pts = std::make_shared<const std::vector<double>>(std::move(values));
    return TimeScale(std::move(pts), n);
}

TimeScale make_timescale(std::vector<double> values) { return TimeScale::from_points(std::move(values)); }

TimeScale TimeScale::h_window(double a, double b, double h) {
    if (!(h > 0) || !std::isfinite(h)) fail(errc::config_error, "h must be positive and finite");
    if (!(b > a)) fail(errc::config_error, "window requires b > a");
    const double q = (b - a) / h;
    const long long k = std::llround(q);
    if (k < 1 || std::abs(q - static_cast<double>(k)) > 1e-9)
        fail(errc::config_error, "(b - a)/h is not an integer to within 1e-9");
    std::vector<double> pts(static_cast<std::size_t>(k) + 1);
    for (std::size_t i = 0; i < pts.size(); ++i) pts[i] = a + static_cast<double>(i) * h;
    return from_points(std::move(pts));
}

TimeScale TimeScale::integer_window(double a, double b) {
    if (std::abs(a - std::round(a)) > 1e-9 || std::abs(b - std::round(b)) > 1e-9)
        fail(errc::config_error, "integer window requires integral endpoints");
    return h_window(std::round(a), std::round(b), 1.0);
}

Point TimeScale::point(std::size_t i) const {
    if (i >= count_) fail(errc::out_of_range, "point index " + std::to_string(i) + " out of range");
    return Point{(*pts_)[i], i};
}

bool TimeScale::contains(Point t) const noexcept {
    return t.index < count_ && (*pts_)[t.index] == t.value;
}

Point TimeScale::locate(double value) const {
    const auto& p = *pts_;
    auto end = p.begin() + static_cast<std::ptrdiff_t>(count_);
    auto it = std::lower_bound(p.begin(), end, value);
    // matches form a contiguous run around the insertion position
    std::size_t first = static_cast<std::size_t>(it - p.begin());
    std::size_t last = first;
    while (first > 0 && std::abs(p[first - 1] - value) <= kLookupTol) --first;
    while (last < count_ && std::abs(p[last] - value) <= kLookupTol) ++last;
    if (last == first)
        fail(errc::point_not_found, "no time scale point within 1e-12 of " + std::to_string(value));
    if (last - first > 1)
        fail(errc::ambiguous_point, "two time scale points within 1e-12 of " + std::to_string(value));
    return Point{p[first], first};
}

Point TimeScale::sigma(Point t) const {
    if (!contains(t)) fail(errc::point_not_found, "sigma: point not on this time scale");
    return t.index + 1 < count_ ? point(t.index + 1) : t;
}

Point TimeScale::rho(Point t) const {
    if (!contains(t)) fail(errc::point_not_found, "rho: point not on this time scale");
    return t.index > 0 ? point(t.index - 1) : t;
}

double TimeScale::mu(Point t) const {
    if (!contains(t)) fail(errc::point_not_found, "mu: point not on this time scale");
    return mu_at(t.index);
}

double TimeScale::mu_at(std::size_t i) const {
    if (i >= count_) fail(errc::out_of_range, "mu index out of range");
    return i + 1 < count_ ? (*pts_)[i + 1] - (*pts_)[i] : 0.0;
}

Point TimeScale::sigma_n(Point t, std::size_t n) const {
    if (!contains(t)) fail(errc::point_not_found, "sigma_n: point not on this time scale");
    return point(std::min(t.index + n, count_ - 1));
}

Point TimeScale::rho_n(Point t, std::size_t n) const {
    if (!contains(t)) fail(errc::point_not_found, "rho_n: point not on this time scale");
    return point(t.index >= n ? t.index - n : 0);
}

TimeScale TimeScale::kappa_trunc(std::size_t n) const {
    if (n >= count_)
        fail(errc::out_of_range, "kappa truncation by " + std::to_string(n) + " empties a scale of " +
                                     std::to_string(count_) + " points");
    return TimeScale(pts_, count_ - n);
}

std::optional<double> TimeScale::gap_after_max() const {
    if (count_ < pts_->size()) return (*pts_)[count_] - (*pts_)[count_ - 1];
    return std::nullopt;
}

std::optional<Point> TimeScale::successor_of_max() const {
    if (count_ < pts_->size()) return Point{(*pts_)[count_], count_};
    return std::nullopt;
}

bool TimeScale::same_points(const TimeScale& other) const noexcept {
    if (pts_ == other.pts_ && count_ == other.count_) return true;
    if (count_ != other.count_) return false;
    for (std::size_t i = 0; i < count_; ++i)
        if ((*pts_)[i] != (*other.pts_)[i]) return false;
    return true;
}

bool TimeScale::is_uniform(double rel_tol) const {
    const double mean = (b() - a()) / static_cast<double>(count_ - 1);
    for (std::size_t i = 0; i + 1 < count_; ++i)
        if (std::abs(mu_at(i) - mean) > rel_tol * std::abs(mean)) return false;
    return true;
}

} // namespace deltavar
