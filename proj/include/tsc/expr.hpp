#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tsc/rational.hpp"

namespace tsc {

/// Function value: always carries a double, plus the exact rational when
/// every step of the computation stayed rational.
struct Value {
    double approx = 0.0;
    std::optional<Rat> exact;

    static Value of(const Rat& r) { return {r.to_double(), r}; }
    static Value of(double d) { return {d, std::nullopt}; }
    bool is_exact() const noexcept { return exact.has_value(); }
};

Value operator+(const Value& a, const Value& b);
Value operator-(const Value& a, const Value& b);
Value operator*(const Value& a, const Value& b);
/// Throws Error(DivisionByZero).
Value operator/(const Value& a, const Value& b);
Value abs(const Value& v);

enum class ExprOp { Const, Pi, Var, Add, Sub, Mul, Div, Neg, Sin, Cos, Exp, Abs, Min, Max };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    ExprOp op = ExprOp::Const;
    Rat constant{};
    std::vector<ExprPtr> args;

    static ExprPtr make_const(Rat r);
    static ExprPtr make_pi();
    static ExprPtr make_var();
    static ExprPtr make(ExprOp op, std::vector<ExprPtr> args);
};

/// Evaluates with exact rationals where possible; transcendental functions
/// drop to double. Throws Error(DivisionByZero) or Error(DomainError).
Value eval_expr(const Expr& e, const Rat& t);

/// Infix form that parses back to the same tree.
std::string to_string(const Expr& e);

}  // namespace tsc
