#ifndef WEBCURV_WEB_HPP
#define WEBCURV_WEB_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "webcurv/exterior.hpp"

namespace webcurv {

/// y' = F(x, y) on an open rectangle.
struct OdeProblem {
    Expr F;
    Rect domain;

    /// Rejects right-hand sides that mention alpha.
    OdeProblem(Expr rhs, Rect dom);
    static OdeProblem parse(std::string_view rhs, Rect dom) { return {webcurv::parse(rhs), dom}; }
};

/// F vanishes at a sampled point, so the associated web degenerates there.
class NonVanishingViolation : public std::runtime_error {
public:
    explicit NonVanishingViolation(Point witness);
    const Point& witness() const { return witness_; }

private:
    Point witness_;
};

/// A plane vector field (dx, dy) with symbolic components.
struct DirectionField {
    Expr dx;
    Expr dy;
};

/// The 3-web of y' = F: L1 = {x = const}, L2 = {y = const}, L3 = integral
/// curves. Direction fields are the canonical representatives
/// u1 = (1, 0), u2 = (0, F), u3 = u1 + u2 = (1, F).
struct Web {
    OdeProblem problem;
    DirectionField u1;
    DirectionField u2;
    DirectionField u3;
};

struct Leaf {
    int which = 3;
    std::vector<std::pair<double, double>> points;
    bool clipped = false;  // integration stopped at the domain boundary
};

/// The integration left the domain; `partial` holds the points computed so far.
class DomainExit : public std::runtime_error {
public:
    DomainExit(Leaf partial, std::pair<double, double> last_valid);
    const Leaf& partial() const { return partial_; }
    std::pair<double, double> last_valid() const { return last_; }

private:
    Leaf partial_;
    std::pair<double, double> last_;
};

struct AdaptedCoframe {
    OneForm eta1;  // F dx, annihilates u2
    OneForm eta2;  // dy, annihilates u1
    OneForm eta3;  // eta1 - eta2, annihilates u3
};

/// Samples F on a 33x33 grid of the closed domain; a zero (or a failed
/// evaluation) at an interior sample is an error. Boundary samples are
/// skipped since the domain is open.
Web build_web(const OdeProblem& p);

AdaptedCoframe adapted_coframe(const OdeProblem& p);

bool transversality_check(const Web& w, const Point& p);

/// One classical RK4 step of y' = F(x, y).
double rk4_step(const Expr& F, double x, double y, double h);

/// Fixed-step RK4 march from `seed` to `x_target` (either direction), with a
/// final partial step. Throws DomainExit when a step lands outside the
/// closed domain.
Leaf integrate_leaf(const OdeProblem& p, const Point& seed, double x_target, double step);

/// Same march without any domain clipping.
Leaf integrate_unbounded(const Expr& F, double x0, double y0, double x_target, double step);

/// `count` leaves of foliation `which`, seeded evenly across the domain.
/// Leaves 1 and 2 are coordinate segments sampled at 33 points; family 3
/// is integrated both ways from a seed on the vertical midline and keeps
/// partial results (marked clipped) when it leaves the domain.
std::vector<Leaf> leaf_family(const OdeProblem& p, int which, int count, double step = 1e-3);

/// "which,x,y" rows with 17 significant digits, leaves separated by a blank line.
std::string export_leaves(const std::vector<Leaf>& leaves);

struct GaugeSolution {
    bool consistent = false;
    bool determined = true;        // false when the zero test was inconclusive
    Expr gamma;                    // equals the common scale when consistent
    std::optional<Point> witness;  // where alpha != beta
};

/// Decides whether diag(alpha, beta) maps the adapted coframe to another
/// adapted coframe, i.e. whether alpha*eta1 - beta*eta2 is a multiple of
/// eta1 - eta2. That holds exactly when alpha == beta, with gamma = alpha.
GaugeSolution gauge_constraint_solve(const Expr& alpha, const Expr& beta, const Rect& dom);

}  // namespace webcurv

#endif
