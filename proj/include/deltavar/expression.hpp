#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace deltavar {

/// A variable of the expression language: the time symbol t, or one of the
/// slots y0, y1, ... where yk stands for the k-th delta derivative of y.
struct Var {
    static constexpr int time_slot = -1;
    int slot = time_slot;

    static Var time() { return Var{time_slot}; }
    static Var y(int k) { return Var{k}; }
    bool is_time() const { return slot < 0; }

    friend bool operator==(const Var&, const Var&) = default;
};

/// Bindings for evaluation: the value of t plus the values of y0..yr.
struct EvalEnv {
    double t = 0.0;
    std::span<const double> y;
};

enum class Func { sin, cos, exp, log, sqrt };

class ExprNode;

/**
 * Immutable arithmetic expression over t, y0..yr with +, -, *, /, ^, unary
 * minus and sin/cos/exp/log/sqrt.  Exponents of ^ must fold to constants,
 * which keeps symbolic differentiation total.  The smart constructors apply
 * local constant folding and identity elimination only -- no canonical
 * simplification.
 */
class Expr {
public:
    static Expr constant(double v);
    static Expr variable(Var v);
    static Expr add(Expr lhs, Expr rhs);
    static Expr sub(Expr lhs, Expr rhs);
    static Expr mul(Expr lhs, Expr rhs);
    static Expr div(Expr lhs, Expr rhs);
    static Expr pow(Expr base, Expr exponent);
    static Expr neg(Expr operand);
    static Expr call(Func f, Expr arg);

    std::optional<double> constant_value() const;
    bool is_constant() const { return constant_value().has_value(); }

    /// Largest k with yk appearing, or -1 when no y slot appears.
    int max_y_slot() const;

    /// Throws unbound_variable or eval_domain_error (division by zero, log of
    /// a non-positive value, ...) naming the offending subexpression.
    double eval(const EvalEnv& env) const;

    /// Exact symbolic derivative with respect to v, constant-folded.
    Expr derivative(Var v) const;

    /// Canonical printable form; reparses to an equivalent expression.
    std::string str() const;

private:
    explicit Expr(std::shared_ptr<const ExprNode> node) : node_(std::move(node)) {}
    std::shared_ptr<const ExprNode> node_;

    friend Expr parse_expression(std::string_view src);
};

/// Parses the expression grammar (precedence ^, unary -, * /, + -; all
/// left-associative except ^).  Throws syntax_error with a 1-based column,
/// or unknown_identifier.
Expr parse_expression(std::string_view src);

} // namespace deltavar
