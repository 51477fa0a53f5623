#pragma once

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "webcurv/equiv.hpp"

namespace wt {

using namespace webcurv;

inline const std::vector<std::string>& expr_corpus() {
    static const std::vector<std::string> c{
        "x + y",          "x*exp(-y)",          "1 - x",          "x*y",
        "y",              "1",                  "sin(x)*cos(y)",  "ln(x + y)",
        "sqrt(x*y)",      "x^3 - 2*x*y + y^2",  "exp(x)/(1 + y^2)", "alpha*x/y",
        "(x + alpha)^(5/2)", "-x^2 + e^y",      "pi*x - cos(alpha*y)", "x^y",
        "(x + y)/alpha^2", "1/(x - 3)",         "ln(exp(x*y))",   "-(x - y)^3/(2*alpha)",
    };
    return c;
}

// Base rectangle on which every corpus expression is smooth.
inline Rect base_box() { return Rect(0.5, 2, 0.5, 2); }

struct Rng {
    std::mt19937_64 g;
    explicit Rng(std::uint64_t seed = 7) : g(seed) {}
    double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(g); }
    int below(int n) { return std::uniform_int_distribution<int>(0, n - 1)(g); }
    Point point(const Rect& r, double amin = 0.5, double amax = 2.0) {
        return {uniform(r.x_min, r.x_max), uniform(r.y_min, r.y_max), uniform(amin, amax)};
    }
};

// Random smooth expression on x, y, alpha > 0: divisions and logs are guarded.
inline Expr random_expr(Rng& rng, int depth) {
    if (depth == 0 || rng.below(4) == 0) {
        switch (rng.below(5)) {
            case 0: return Expr::variable(Var::x);
            case 1: return Expr::variable(Var::y);
            case 2: return Expr::variable(Var::alpha);
            case 3: return Expr::integer(rng.below(7) - 3);
            default: return Expr::constant(Rational(rng.below(9) + 1, 4));
        }
    }
    const Expr a = random_expr(rng, depth - 1);
    switch (rng.below(9)) {
        case 0: return Expr::binary(BinaryOp::add, a, random_expr(rng, depth - 1));
        case 1: return Expr::binary(BinaryOp::sub, a, random_expr(rng, depth - 1));
        case 2: return Expr::binary(BinaryOp::mul, a, random_expr(rng, depth - 1));
        case 3: {
            const Expr s = Expr::unary(UnaryOp::sin, random_expr(rng, depth - 1));
            return Expr::binary(BinaryOp::div, a, Expr::binary(BinaryOp::add, Expr::integer(2), s));
        }
        case 4: return Expr::unary(UnaryOp::neg, a);
        case 5: return Expr::unary(UnaryOp::sin, a);
        case 6: return Expr::unary(UnaryOp::cos, a);
        case 7: {
            const Expr sq = Expr::binary(BinaryOp::pow, a, Expr::integer(2));
            return Expr::unary(rng.below(2) ? UnaryOp::ln : UnaryOp::sqrt,
                               Expr::binary(BinaryOp::add, Expr::integer(1), sq));
        }
        default: return Expr::binary(BinaryOp::pow, a, Expr::integer(rng.below(3) + 2));
    }
}

inline double rel_err(double a, double b) { return std::abs(a - b) / (1.0 + std::abs(a)); }

inline std::vector<OdeProblem> ode_corpus() {
    return {
        OdeProblem::parse("1", Rect(0, 1, 0, 1)),
        OdeProblem::parse("1 - x", Rect(1.1, 4, -3, 3)),
        OdeProblem::parse("x + y", Rect(0.5, 2, 0.5, 2)),
        OdeProblem::parse("x*exp(-y)", Rect(0.5, 3, 0.5, 3)),
        OdeProblem::parse("x*y", Rect(1, 3, 1, 3)),
        OdeProblem::parse("y", Rect(0, 3, 0.5, 4)),
    };
}

}  // namespace wt
