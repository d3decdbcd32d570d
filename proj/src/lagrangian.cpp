#include "deltavar/lagrangian.hpp"

#include "deltavar/errors.hpp"

#include <string>

namespace deltavar {

Lagrangian::Lagrangian(Expr body, int order) : order_(order), body_(std::move(body)) {
    if (order_ < 1) fail(errc::order_mismatch, "Lagrangian order must be at least 1");
    if (body_.max_y_slot() > order_)
        fail(errc::order_mismatch, "expression uses y" + std::to_string(body_.max_y_slot()) +
                                       " but the declared order is " + std::to_string(order_));
    partials_.reserve(static_cast<std::size_t>(order_) + 1);
    for (int i = 0; i <= order_; ++i) partials_.push_back(body_.derivative(Var::y(i)));
}

const Expr& Lagrangian::partial(int i) const {
    if (i < 0 || i > order_) fail(errc::out_of_range, "partial index out of range");
    return partials_[static_cast<std::size_t>(i)];
}

double Lagrangian::eval(double t, std::span<const double> y) const {
    return body_.eval(EvalEnv{t, y});
}

double Lagrangian::eval_partial(int i, double t, std::span<const double> y) const {
    return partial(i).eval(EvalEnv{t, y});
}

Lagrangian make_lagrangian(std::string_view src, int order) {
    return Lagrangian(parse_expression(src), order);
}

std::optional<std::string_view> builtin_lagrangian(std::string_view name) {
    if (name == "quadratic-velocity") return "y1^2";
    if (name == "quadratic-acceleration") return "y2^2";
    if (name == "harmonic") return "y1^2 - y0^2";
    return std::nullopt;
}

} // namespace deltavar
