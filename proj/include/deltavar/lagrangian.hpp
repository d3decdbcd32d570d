#pragma once

#include "deltavar/expression.hpp"

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace deltavar {

/**
 * A Lagrangian of order r >= 1: an expression L(t, y0, ..., yr) together
 * with its cached symbolic partial derivatives with respect to each slot.
 * Evaluation expects the r+1 slot values (y, y^delta, ..., y^{delta^r}).
 */
class Lagrangian {
public:
    Lagrangian(Expr body, int order);

    int order() const noexcept { return order_; }
    const Expr& body() const noexcept { return body_; }

    /// dL/dy_i for 0 <= i <= order.
    const Expr& partial(int i) const;

    double eval(double t, std::span<const double> y) const;
    double eval_partial(int i, double t, std::span<const double> y) const;

private:
    int order_;
    Expr body_;
    std::vector<Expr> partials_;
};

/// Parses src and builds a Lagrangian of the given order.  Throws parse
/// errors, or order_mismatch when a slot yk with k > order appears.
Lagrangian make_lagrangian(std::string_view src, int order);

/// Expression source for a named builtin ("quadratic-velocity",
/// "quadratic-acceleration", "harmonic"), or nullopt.
std::optional<std::string_view> builtin_lagrangian(std::string_view name);

} // namespace deltavar
