#include "tsc/expr.hpp"

#include <cmath>
#include <numbers>

#include "tsc/error.hpp"

namespace tsc {

namespace {

template <class ExactOp, class ApproxOp>
Value combine(const Value& a, const Value& b, ExactOp exact, ApproxOp approx) {
    if (a.exact && b.exact) {
        try {
            return Value::of(exact(*a.exact, *b.exact));
        } catch (const Error& e) {
            if (e.code() != Errc::Overflow) throw;
        }
    }
    return Value::of(approx(a.approx, b.approx));
}

Value checked(double d, const char* what) {
    if (!std::isfinite(d)) throw Error(Errc::DomainError, std::string(what) + " produced a non-finite value");
    return Value::of(d);
}

int precedence(const Expr& e) {
    switch (e.op) {
        case ExprOp::Add:
        case ExprOp::Sub: return 1;
        case ExprOp::Mul:
        case ExprOp::Div: return 2;
        case ExprOp::Neg: return 3;
        case ExprOp::Const:
            if (!e.constant.is_integer()) return 2;
            return e.constant.sign() < 0 ? 3 : 4;
        default: return 4;
    }
}

void print(const Expr& e, std::string& out);

void print_operand(const Expr& e, int min_prec, std::string& out) {
    if (precedence(e) < min_prec) {
        out += '(';
        print(e, out);
        out += ')';
    } else {
        print(e, out);
    }
}

void print(const Expr& e, std::string& out) {
    auto call = [&](const char* name) {
        out += name;
        out += '(';
        for (std::size_t i = 0; i < e.args.size(); ++i) {
            if (i) out += ", ";
            print(*e.args[i], out);
        }
        out += ')';
    };
    auto binary = [&](const char* sym) {
        const int p = precedence(e);
        print_operand(*e.args[0], p, out);
        out += sym;
        // Left-associative: an equal-precedence right operand needs parentheses.
        print_operand(*e.args[1], p + 1, out);
    };
    switch (e.op) {
        case ExprOp::Const: out += e.constant.str(); break;
        case ExprOp::Pi: out += "pi"; break;
        case ExprOp::Var: out += 't'; break;
        case ExprOp::Add: binary(" + "); break;
        case ExprOp::Sub: binary(" - "); break;
        case ExprOp::Mul: binary("*"); break;
        case ExprOp::Div: binary("/"); break;
        case ExprOp::Neg:
            out += '-';
            print_operand(*e.args[0], 3, out);
            break;
        case ExprOp::Sin: call("sin"); break;
        case ExprOp::Cos: call("cos"); break;
        case ExprOp::Exp: call("exp"); break;
        case ExprOp::Abs: call("abs"); break;
        case ExprOp::Min: call("min"); break;
        case ExprOp::Max: call("max"); break;
    }
}

}  // namespace

Value operator+(const Value& a, const Value& b) {
    return combine(a, b, [](const Rat& x, const Rat& y) { return x + y; }, [](double x, double y) { return x + y; });
}

Value operator-(const Value& a, const Value& b) {
    return combine(a, b, [](const Rat& x, const Rat& y) { return x - y; }, [](double x, double y) { return x - y; });
}

Value operator*(const Value& a, const Value& b) {
    return combine(a, b, [](const Rat& x, const Rat& y) { return x * y; }, [](double x, double y) { return x * y; });
}

Value operator/(const Value& a, const Value& b) {
    if ((b.exact && b.exact->sign() == 0) || (!b.exact && b.approx == 0.0))
        throw Error(Errc::DivisionByZero, "division by zero");
    return combine(a, b, [](const Rat& x, const Rat& y) { return x / y; }, [](double x, double y) { return x / y; });
}

Value abs(const Value& v) {
    if (v.exact) return Value::of(abs(*v.exact));
    return Value::of(std::fabs(v.approx));
}

ExprPtr Expr::make_const(Rat r) {
    auto e = std::make_shared<Expr>();
    e->op = ExprOp::Const;
    e->constant = r;
    return e;
}

ExprPtr Expr::make_pi() {
    auto e = std::make_shared<Expr>();
    e->op = ExprOp::Pi;
    return e;
}

ExprPtr Expr::make_var() {
    auto e = std::make_shared<Expr>();
    e->op = ExprOp::Var;
    return e;
}

ExprPtr Expr::make(ExprOp op, std::vector<ExprPtr> args) {
    auto e = std::make_shared<Expr>();
    e->op = op;
    e->args = std::move(args);
    return e;
}

Value eval_expr(const Expr& e, const Rat& t) {
    auto arg = [&](std::size_t i) { return eval_expr(*e.args.at(i), t); };
    switch (e.op) {
        case ExprOp::Const: return Value::of(e.constant);
        case ExprOp::Pi: return Value::of(std::numbers::pi);
        case ExprOp::Var: return Value::of(t);
        case ExprOp::Add: return arg(0) + arg(1);
        case ExprOp::Sub: return arg(0) - arg(1);
        case ExprOp::Mul: return arg(0) * arg(1);
        case ExprOp::Div: return arg(0) / arg(1);
        case ExprOp::Neg: return Value::of(Rat(0)) - arg(0);
        case ExprOp::Sin: return checked(std::sin(arg(0).approx), "sin");
        case ExprOp::Cos: return checked(std::cos(arg(0).approx), "cos");
        case ExprOp::Exp: return checked(std::exp(arg(0).approx), "exp");
        case ExprOp::Abs: return abs(arg(0));
        case ExprOp::Min:
        case ExprOp::Max: {
            const Value a = arg(0);
            const Value b = arg(1);
            const bool a_less = (a.exact && b.exact) ? *a.exact < *b.exact : a.approx < b.approx;
            return (e.op == ExprOp::Min) == a_less ? a : b;
        }
    }
    throw Error(Errc::DomainError, "unknown expression node");
}

std::string to_string(const Expr& e) {
    std::string out;
    print(e, out);
    return out;
}

}  // namespace tsc
