#include <algorithm>
#include <cmath>

#include "webcurv/cartan.hpp"

namespace webcurv {

namespace {

const Expr& alpha_var() {
    static const Expr a = Expr::variable(Var::alpha);
    return a;
}

Expr inv_alpha() { return Expr::integer(1) / alpha_var(); }

}  // namespace

TautologicalCoframe tautological_coframe(const OdeProblem& p) {
    const AdaptedCoframe eta = adapted_coframe(p);
    return {inv_alpha() * eta.eta1, inv_alpha() * eta.eta2, OneForm::dalpha()};
}

ConnectionForm connection_form_raw(const OdeProblem& p) {
    const Expr Fy = differentiate(p.F, Var::y);
    return {OneForm{Expr{}, Fy / p.F, -inv_alpha()}};
}

ConnectionForm connection_form(const OdeProblem& p) { return {simplify(connection_form_raw(p).phi)}; }

double StructureResidual::sup_norm() const {
    double m = 0.0;
    for (double v : first) m = std::max(m, std::abs(v));
    for (double v : second) m = std::max(m, std::abs(v));
    return m;
}

StructureEquations structure_equations(const OdeProblem& p, const OneForm& phi) {
    const TautologicalCoframe th = tautological_coframe(p);
    return {d1(th.theta1) - wedge(phi, th.theta1), d1(th.theta2) - wedge(phi, th.theta2)};
}

StructureEquations structure_equations(const OdeProblem& p) {
    return structure_equations(p, connection_form_raw(p).phi);
}

StructureResidual StructureEquations::at(const Point& q) const { return {form_eval(first, q), form_eval(second, q)}; }

StructureResidual structure_residual(const OdeProblem& p, const Point& q) { return structure_equations(p).at(q); }

Expr curvature_numerator(const Expr& F) {
    const Expr Fx = differentiate(F, Var::x);
    const Expr Fy = differentiate(F, Var::y);
    const Expr Fxy = differentiate(Fx, Var::y);
    return F * Fxy - Fx * Fy;
}

CurvatureReport curvature(const OdeProblem& p) {
    CurvatureReport r;
    r.F = p.F;
    r.numerator = curvature_numerator(p.F);
    r.K_base = simplify(r.numerator / pow(p.F, Expr::integer(3)));
    r.K = pow(alpha_var(), Expr::integer(r.gauge_exponent)) * r.K_base;
    return r;
}

TwoForm curvature_identity(const OdeProblem& p) {
    const TautologicalCoframe th = tautological_coframe(p);
    const OneForm phi = connection_form_raw(p).phi;
    const Expr K = pow(alpha_var(), Expr::integer(2)) *
                   (curvature_numerator(p.F) / pow(p.F, Expr::integer(3)));
    return d1(phi) - K * wedge(th.theta1, th.theta2);
}

double curvature_identity_residual(const OdeProblem& p, const Point& q) {
    const auto c = form_eval(curvature_identity(p), q);
    return std::max({std::abs(c[0]), std::abs(c[1]), std::abs(c[2])});
}

}  // namespace webcurv
