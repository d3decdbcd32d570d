#include "deltavar/expression.hpp"

#include "deltavar/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <utility>
#include <vector>

namespace deltavar {

enum class NodeKind { constant, variable, add, sub, mul, div, pow, neg, call };

class ExprNode {
public:
    NodeKind kind;
    double value = 0.0;           // constant
    Var var;                      // variable
    Func func = Func::sin;        // call
    std::shared_ptr<const ExprNode> lhs, rhs; // rhs empty for neg/call

    ExprNode(NodeKind k) : kind(k) {}
};

namespace {

using NodePtr = std::shared_ptr<const ExprNode>;

NodePtr make_const(double v) {
    auto n = std::make_shared<ExprNode>(NodeKind::constant);
    n->value = v;
    return n;
}

std::optional<double> const_of(const NodePtr& n) {
    if (n->kind == NodeKind::constant) return n->value;
    return std::nullopt;
}

bool is_const(const NodePtr& n, double v) {
    auto c = const_of(n);
    return c && *c == v;
}

NodePtr make_binary(NodeKind k, NodePtr a, NodePtr b) {
    auto n = std::make_shared<ExprNode>(k);
    n->lhs = std::move(a);
    n->rhs = std::move(b);
    return n;
}

NodePtr make_neg(NodePtr a);

NodePtr make_add(NodePtr a, NodePtr b) {
    auto ca = const_of(a), cb = const_of(b);
    if (ca && cb) return make_const(*ca + *cb);
    if (is_const(a, 0.0)) return b;
    if (is_const(b, 0.0)) return a;
    return make_binary(NodeKind::add, std::move(a), std::move(b));
}

NodePtr make_sub(NodePtr a, NodePtr b) {
    auto ca = const_of(a), cb = const_of(b);
    if (ca && cb) return make_const(*ca - *cb);
    if (is_const(b, 0.0)) return a;
    if (is_const(a, 0.0)) return make_neg(std::move(b));
    return make_binary(NodeKind::sub, std::move(a), std::move(b));
}

NodePtr make_mul(NodePtr a, NodePtr b) {
    auto ca = const_of(a), cb = const_of(b);
    if (ca && cb) return make_const(*ca * *cb);
    if (is_const(a, 0.0) || is_const(b, 0.0)) return make_const(0.0);
    if (is_const(a, 1.0)) return b;
    if (is_const(b, 1.0)) return a;
    return make_binary(NodeKind::mul, std::move(a), std::move(b));
}

NodePtr make_div(NodePtr a, NodePtr b) {
    auto ca = const_of(a), cb = const_of(b);
    if (cb && *cb == 0.0) fail(errc::eval_domain_error, "division by the constant 0");
    if (ca && cb) return make_const(*ca / *cb);
    if (is_const(a, 0.0)) return make_const(0.0);
    if (is_const(b, 1.0)) return a;
    return make_binary(NodeKind::div, std::move(a), std::move(b));
}

NodePtr make_pow(NodePtr a, NodePtr b) {
    auto cb = const_of(b);
    if (!cb)
        fail(errc::nonconstant_exponent, "exponent of ^ must be a constant");
    if (*cb == 0.0) return make_const(1.0);
    if (*cb == 1.0) return a;
    if (auto ca = const_of(a)) {
        const double v = std::pow(*ca, *cb);
        if (std::isfinite(v)) return make_const(v);
    }
    return make_binary(NodeKind::pow, std::move(a), std::move(b));
}

NodePtr make_neg(NodePtr a) {
    if (auto c = const_of(a)) return make_const(-*c);
    auto n = std::make_shared<ExprNode>(NodeKind::neg);
    n->lhs = std::move(a);
    return n;
}

NodePtr make_var(Var v) {
    auto n = std::make_shared<ExprNode>(NodeKind::variable);
    n->var = v;
    return n;
}

NodePtr make_call(Func f, NodePtr a) {
    auto n = std::make_shared<ExprNode>(NodeKind::call);
    n->func = f;
    n->lhs = std::move(a);
    return n;
}

const char* func_name(Func f) {
    switch (f) {
    case Func::sin: return "sin";
    case Func::cos: return "cos";
    case Func::exp: return "exp";
    case Func::log: return "log";
    case Func::sqrt: return "sqrt";
    }
    return "?";
}

std::string print_node(const NodePtr& n);

std::string print_const(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

int precedence(const NodePtr& n) {
    switch (n->kind) {
    case NodeKind::add:
    case NodeKind::sub: return 1;
    case NodeKind::mul:
    case NodeKind::div: return 2;
    case NodeKind::neg: return 3;
    case NodeKind::pow: return 4;
    default: return 5;
    }
}

std::string print_child(const NodePtr& child, int parent_prec, bool tighten) {
    std::string s = print_node(child);
    const bool negative_const =
        child->kind == NodeKind::constant && child->value < 0;
    if (precedence(child) < parent_prec + (tighten ? 1 : 0) || negative_const)
        return "(" + s + ")";
    return s;
}

std::string print_node(const NodePtr& n) {
    switch (n->kind) {
    case NodeKind::constant: return print_const(n->value);
    case NodeKind::variable:
        return n->var.is_time() ? "t" : "y" + std::to_string(n->var.slot);
    case NodeKind::add: return print_child(n->lhs, 1, false) + " + " + print_child(n->rhs, 1, true);
    case NodeKind::sub: return print_child(n->lhs, 1, false) + " - " + print_child(n->rhs, 1, true);
    case NodeKind::mul: return print_child(n->lhs, 2, false) + "*" + print_child(n->rhs, 2, true);
    case NodeKind::div: return print_child(n->lhs, 2, false) + "/" + print_child(n->rhs, 2, true);
    case NodeKind::neg: return "-" + print_child(n->lhs, 3, false);
    case NodeKind::pow: return print_child(n->lhs, 4, true) + "^" + print_child(n->rhs, 4, false);
    case NodeKind::call: return std::string(func_name(n->func)) + "(" + print_node(n->lhs) + ")";
    }
    return "?";
}

int max_slot(const NodePtr& n) {
    switch (n->kind) {
    case NodeKind::constant: return -1;
    case NodeKind::variable: return n->var.is_time() ? -1 : n->var.slot;
    case NodeKind::neg:
    case NodeKind::call: return max_slot(n->lhs);
    default: return std::max(max_slot(n->lhs), max_slot(n->rhs));
    }
}

[[noreturn]] void eval_fail(const NodePtr& n, const std::string& what) {
    fail(errc::eval_domain_error, what + " in '" + print_node(n) + "'");
}

double eval_node(const NodePtr& n, const EvalEnv& env) {
    switch (n->kind) {
    case NodeKind::constant: return n->value;
    case NodeKind::variable:
        if (n->var.is_time()) return env.t;
        if (n->var.slot >= static_cast<int>(env.y.size()))
            fail(errc::unbound_variable, "no binding for y" + std::to_string(n->var.slot));
        return env.y[static_cast<std::size_t>(n->var.slot)];
    case NodeKind::add: return eval_node(n->lhs, env) + eval_node(n->rhs, env);
    case NodeKind::sub: return eval_node(n->lhs, env) - eval_node(n->rhs, env);
    case NodeKind::mul: return eval_node(n->lhs, env) * eval_node(n->rhs, env);
    case NodeKind::div: {
        const double num = eval_node(n->lhs, env);
        const double den = eval_node(n->rhs, env);
        if (den == 0.0) eval_fail(n, "division by zero");
        return num / den;
    }
    case NodeKind::neg: return -eval_node(n->lhs, env);
    case NodeKind::pow: {
        const double base = eval_node(n->lhs, env);
        const double expo = n->rhs->value;
        if (base == 0.0 && expo < 0.0) eval_fail(n, "zero raised to a negative power");
        if (base < 0.0 && expo != std::floor(expo)) eval_fail(n, "negative base with non-integer exponent");
        return std::pow(base, expo);
    }
    case NodeKind::call: {
        const double x = eval_node(n->lhs, env);
        switch (n->func) {
        case Func::sin: return std::sin(x);
        case Func::cos: return std::cos(x);
        case Func::exp: return std::exp(x);
        case Func::log:
            if (x <= 0.0) eval_fail(n, "log of a non-positive value");
            return std::log(x);
        case Func::sqrt:
            if (x < 0.0) eval_fail(n, "sqrt of a negative value");
            return std::sqrt(x);
        }
    }
    }
    fail(errc::eval_domain_error, "malformed expression node");
}

NodePtr diff_node(const NodePtr& n, Var v) {
    switch (n->kind) {
    case NodeKind::constant: return make_const(0.0);
    case NodeKind::variable: return make_const(n->var == v ? 1.0 : 0.0);
    case NodeKind::add: return make_add(diff_node(n->lhs, v), diff_node(n->rhs, v));
    case NodeKind::sub: return make_sub(diff_node(n->lhs, v), diff_node(n->rhs, v));
    case NodeKind::mul:
        return make_add(make_mul(diff_node(n->lhs, v), n->rhs),
                        make_mul(n->lhs, diff_node(n->rhs, v)));
    case NodeKind::div:
        // (u/w)' = u'/w - u w'/w^2
        return make_sub(make_div(diff_node(n->lhs, v), n->rhs),
                        make_div(make_mul(n->lhs, diff_node(n->rhs, v)),
                                 make_pow(n->rhs, make_const(2.0))));
    case NodeKind::neg: return make_neg(diff_node(n->lhs, v));
    case NodeKind::pow: {
        // exponent is constant: (u^c)' = c u^(c-1) u'
        const double c = n->rhs->value;
        return make_mul(make_const(c),
                        make_mul(make_pow(n->lhs, make_const(c - 1.0)), diff_node(n->lhs, v)));
    }
    case NodeKind::call: {
        NodePtr inner = diff_node(n->lhs, v);
        NodePtr outer;
        switch (n->func) {
        case Func::sin: outer = make_call(Func::cos, n->lhs); break;
        case Func::cos: outer = make_neg(make_call(Func::sin, n->lhs)); break;
        case Func::exp: outer = make_call(Func::exp, n->lhs); break;
        case Func::log: outer = make_div(make_const(1.0), n->lhs); break;
        case Func::sqrt:
            outer = make_div(make_const(0.5), make_call(Func::sqrt, n->lhs));
            break;
        }
        return make_mul(outer, inner);
    }
    }
    fail(errc::eval_domain_error, "malformed expression node");
}

// ---------------------------------------------------------------------------
// parser

struct Parser {
    std::string_view src;
    std::size_t pos = 0;

    [[noreturn]] void error(const std::string& what, std::size_t at) {
        fail(errc::syntax_error, what + " at column " + std::to_string(at + 1));
    }

    void skip_ws() {
        while (pos < src.size() && (src[pos] == ' ' || src[pos] == '\t')) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < src.size() && src[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    NodePtr parse() {
        skip_ws();
        if (pos == src.size()) error("empty expression", pos);
        NodePtr e = parse_sum();
        skip_ws();
        if (pos != src.size()) error("unexpected input", pos);
        return e;
    }

    NodePtr parse_sum() {
        NodePtr e = parse_term();
        for (;;) {
            if (eat('+')) e = make_add(e, parse_term());
            else if (eat('-')) e = make_sub(e, parse_term());
            else return e;
        }
    }

    NodePtr parse_term() {
        NodePtr e = parse_unary();
        for (;;) {
            if (eat('*')) e = make_mul(e, parse_unary());
            else if (eat('/')) e = make_div(e, parse_unary());
            else return e;
        }
    }

    NodePtr parse_unary() {
        if (eat('-')) return make_neg(parse_unary());
        return parse_power();
    }

    NodePtr parse_power() {
        NodePtr base = parse_primary();
        skip_ws();
        if (eat('^')) {
            std::size_t at = pos;
            NodePtr expo = parse_unary(); // right-associative, may carry a sign
            if (!const_of(expo))
                fail(errc::nonconstant_exponent,
                     "exponent of ^ must be a constant (column " + std::to_string(at + 1) + ")");
            return make_pow(std::move(base), std::move(expo));
        }
        return base;
    }

    NodePtr parse_primary() {
        skip_ws();
        if (pos == src.size()) error("unexpected end of expression", pos);
        const char c = src[pos];
        if (c == '(') {
            ++pos;
            NodePtr e = parse_sum();
            if (!eat(')')) error("missing ')'", pos);
            return e;
        }
        if ((c >= '0' && c <= '9') || c == '.') return parse_number();
        if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_') return parse_ident();
        error("unexpected character", pos);
    }

    NodePtr parse_number() {
        const char* first = src.data() + pos;
        const char* last = src.data() + src.size();
        double v = 0.0;
        auto res = std::from_chars(first, last, v);
        if (res.ec != std::errc{}) error("malformed number", pos);
        pos = static_cast<std::size_t>(res.ptr - src.data());
        return make_const(v);
    }

    NodePtr parse_ident() {
        const std::size_t start = pos;
        while (pos < src.size() &&
               ((src[pos] >= 'a' && src[pos] <= 'z') || (src[pos] >= 'A' && src[pos] <= 'Z') ||
                (src[pos] >= '0' && src[pos] <= '9') || src[pos] == '_'))
            ++pos;
        std::string_view name = src.substr(start, pos - start);
        if (name == "t") return make_var(Var::time());
        if (name.size() >= 2 && name[0] == 'y' &&
            std::all_of(name.begin() + 1, name.end(), [](char ch) { return ch >= '0' && ch <= '9'; })) {
            int slot = 0;
            std::from_chars(name.data() + 1, name.data() + name.size(), slot);
            return make_var(Var::y(slot));
        }
        for (Func f : {Func::sin, Func::cos, Func::exp, Func::log, Func::sqrt}) {
            if (name == func_name(f)) {
                if (!eat('(')) error("expected '(' after function name", pos);
                NodePtr arg = parse_sum();
                if (!eat(')')) error("missing ')'", pos);
                return make_call(f, arg);
            }
        }
        fail(errc::unknown_identifier,
             "unknown identifier '" + std::string(name) + "' at column " + std::to_string(start + 1));
    }
};

} // namespace

Expr Expr::constant(double v) { return Expr(make_const(v)); }
Expr Expr::variable(Var v) { return Expr(make_var(v)); }
Expr Expr::add(Expr a, Expr b) { return Expr(make_add(a.node_, b.node_)); }
Expr Expr::sub(Expr a, Expr b) { return Expr(make_sub(a.node_, b.node_)); }
Expr Expr::mul(Expr a, Expr b) { return Expr(make_mul(a.node_, b.node_)); }
Expr Expr::div(Expr a, Expr b) { return Expr(make_div(a.node_, b.node_)); }
Expr Expr::pow(Expr a, Expr b) { return Expr(make_pow(a.node_, b.node_)); }
Expr Expr::neg(Expr a) { return Expr(make_neg(a.node_)); }
Expr Expr::call(Func f, Expr a) { return Expr(make_call(f, a.node_)); }

std::optional<double> Expr::constant_value() const { return const_of(node_); }
int Expr::max_y_slot() const { return max_slot(node_); }
double Expr::eval(const EvalEnv& env) const { return eval_node(node_, env); }
Expr Expr::derivative(Var v) const { return Expr(diff_node(node_, v)); }
std::string Expr::str() const { return print_node(node_); }

Expr parse_expression(std::string_view src) {
    Parser p{src};
    return Expr(p.parse());
}

} // namespace deltavar
