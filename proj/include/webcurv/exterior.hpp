#ifndef WEBCURV_EXTERIOR_HPP
#define WEBCURV_EXTERIOR_HPP

#include <array>
#include <string>

#include "webcurv/expr.hpp"

namespace webcurv {

/// a dx + b dy + c dalpha on the chart (x, y, alpha).
struct OneForm {
    Expr a;
    Expr b;
    Expr c;

    static OneForm dx() { return {Expr::integer(1), Expr{}, Expr{}}; }
    static OneForm dy() { return {Expr{}, Expr::integer(1), Expr{}}; }
    static OneForm dalpha() { return {Expr{}, Expr{}, Expr::integer(1)}; }

    bool is_base() const { return c.is_zero(); }
};

/// p dx^dy + q dx^dalpha + r dy^dalpha. The basis order is fixed.
struct TwoForm {
    Expr p;
    Expr q;
    Expr r;
};

OneForm operator+(const OneForm& u, const OneForm& v);
OneForm operator-(const OneForm& u, const OneForm& v);
OneForm operator*(const Expr& f, const OneForm& w);
TwoForm operator+(const TwoForm& u, const TwoForm& v);
TwoForm operator-(const TwoForm& u, const TwoForm& v);
TwoForm operator*(const Expr& f, const TwoForm& w);

/// Coefficientwise simplify.
OneForm simplify(const OneForm& w);
TwoForm simplify(const TwoForm& w);

/// Exterior derivative of a function.
OneForm d0(const Expr& f);

/// Exterior derivative of a 1-form:
/// p = b_x - a_y, q = c_x - a_alpha, r = c_y - b_alpha.
TwoForm d1(const OneForm& w);

OneForm d(const Expr& f);
TwoForm d(const OneForm& w);

TwoForm wedge(const OneForm& u, const OneForm& v);

/// Pairing of a base 1-form with a plane vector field (vx, vy).
Expr pair(const OneForm& w, const Expr& vx, const Expr& vy);

std::array<double, 3> form_eval(const OneForm& w, const Point& p);
std::array<double, 3> form_eval(const TwoForm& w, const Point& p);

/// "a dx + b dy + c dalpha", coefficients parenthesised when they are sums.
std::string format(const OneForm& w);
/// "p dx^dy + q dx^dalpha + r dy^dalpha".
std::string format(const TwoForm& w);

}  // namespace webcurv

#endif
