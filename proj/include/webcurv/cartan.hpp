#ifndef WEBCURV_CARTAN_HPP
#define WEBCURV_CARTAN_HPP

#include <array>

#include "webcurv/web.hpp"

namespace webcurv {

// The bundle of adapted coframes of y' = F is charted by (x, y, alpha); the
// structure group is the scalar matrices diag(alpha, alpha).

/// theta1 = F/alpha dx, theta2 = 1/alpha dy, theta3 = dalpha.
struct TautologicalCoframe {
    OneForm theta1;
    OneForm theta2;
    OneForm theta3;
};

/// The unique 1-form phi with d theta^i = phi ^ theta^i (i = 1, 2):
/// phi = -1/alpha dalpha + F_y/F dy.
struct ConnectionForm {
    OneForm phi;
};

struct CurvatureReport {
    Expr F;
    Expr numerator;   // F*F_xy - F_x*F_y
    Expr K_base;      // K on the section alpha = 1
    Expr K;           // alpha^2 * K_base
    int gauge_exponent = 2;
};

TautologicalCoframe tautological_coframe(const OdeProblem& p);

/// Coefficients are simplified for display; `connection_form_raw` keeps the
/// unsimplified expressions used in the residual checks.
ConnectionForm connection_form(const OdeProblem& p);
ConnectionForm connection_form_raw(const OdeProblem& p);

/// Numeric coefficients of (d theta1 - phi ^ theta1, d theta2 - phi ^ theta2).
struct StructureResidual {
    std::array<double, 3> first{};
    std::array<double, 3> second{};
    double sup_norm() const;
};

/// Symbolic residual 2-forms for an arbitrary candidate connection, so that
/// perturbed candidates can be checked against the true one.
struct StructureEquations {
    TwoForm first;
    TwoForm second;
    StructureResidual at(const Point& q) const;
};

StructureEquations structure_equations(const OdeProblem& p, const OneForm& phi);
StructureEquations structure_equations(const OdeProblem& p);

StructureResidual structure_residual(const OdeProblem& p, const Point& q);

/// F*F_xy - F_x*F_y, the factor deciding flatness.
Expr curvature_numerator(const Expr& F);

CurvatureReport curvature(const OdeProblem& p);

/// d phi - K theta1 ^ theta2 as a symbolic 2-form.
TwoForm curvature_identity(const OdeProblem& p);

/// Sup-norm of the coefficients of d phi - K theta1 ^ theta2 at q.
double curvature_identity_residual(const OdeProblem& p, const Point& q);

}  // namespace webcurv

#endif
