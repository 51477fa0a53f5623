#ifndef WEBCURV_EQUIV_HPP
#define WEBCURV_EQUIV_HPP

#include <array>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "webcurv/cartan.hpp"

namespace webcurv {

enum class Flatness { flat, non_flat, undetermined };

struct FlatnessVerdict {
    Flatness tag = Flatness::undetermined;
    std::optional<Point> witness;  // non_flat only
    double value = 0.0;            // K_base at the witness
};

/// Zero test of F*F_xy - F_x*F_y over the problem domain. K scales by
/// alpha^2 > 0, so the verdict does not depend on the section used.
FlatnessVerdict classify_flat(const OdeProblem& p, const ZeroTestOptions& opts = {});

enum class Equivalence { equivalent_flat, not_equivalent, inconclusive };

struct EquivalenceVerdict {
    Equivalence tag = Equivalence::inconclusive;
    int flat_side = 0;  // 1 or 2 when not_equivalent
    FlatnessVerdict first;
    FlatnessVerdict second;
};

/// Flat/flat is equivalent, flat/non-flat is not. Two non-flat webs cannot be
/// compared through K alone (it is not an absolute invariant), so that case
/// and any undetermined side are reported as inconclusive.
EquivalenceVerdict equivalence_check(const OdeProblem& p1, const OdeProblem& p2, const ZeroTestOptions& opts = {});

/// Candidate coordinate change (x, y) -> (a(x, y), b(x, y)) from `source`
/// into `target`.
struct DiffeoMap {
    Expr a;
    Expr b;
    Rect source;
    Rect target;
};

class ImageEscapesTarget : public std::runtime_error {
public:
    ImageEscapesTarget(Point source, Point image);
    const Point& point() const { return source_; }
    const Point& image() const { return image_; }

private:
    Point source_;
    Point image_;
};

struct DiffeoCheckReport {
    bool jacobian_ok = false;
    // Max deviation per foliation; NaN when not measured, +inf when the
    // reference leaf could not be integrated.
    std::array<double, 3> dev{std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN(),
                              std::numeric_limits<double>::quiet_NaN()};
    double tol = 1e-4;
    bool pass = false;
};

/// Jacobian of the map; also used for reporting.
Expr jacobian_determinant(const DiffeoMap& m);

/// Checks that the map sends each foliation of web(p1), sampled over
/// m.source, into the matching foliation of web(p2):
///  - the Jacobian determinant exceeds 1e-10 in magnitude on a 17x17 grid;
///  - images of L1 leaves keep their first coordinate (max spread);
///  - images of L2 leaves keep their second coordinate;
///  - images of L3 leaves stay on the p2 integral curve through the image of
///    their first point (max vertical deviation against an RK4 reference).
/// Throws ImageEscapesTarget when a sampled image leaves m.target.
DiffeoCheckReport verify_diffeo(const DiffeoMap& m, const OdeProblem& p1, const OdeProblem& p2,
                                int leaves_per_family, double tol = 1e-4, double step = 1e-3);

struct OrientationResult {
    std::string label;
    DiffeoMap map;
    std::string from;  // F of the source ODE
    std::string to;    // F of the target ODE
    std::optional<DiffeoCheckReport> report;
    std::string error;  // set when verification threw
};

struct TransportReport {
    std::vector<OrientationResult> orientations;
    double inverse_roundtrip_max = 0.0;  // |m^-1(m(p)) - p| over a grid
    double jacobian_at_2_1 = 0.0;        // det D(x - 1, ln y) at (2, 1)
};

/// Transports the webs of y' = 1 - x and y' = x exp(-y) through
/// (x - 1, ln y) and its inverse (x + 1, exp y) in every orientation, plus
/// the control target y' = -x exp(-y). Nothing is asserted; the report says
/// which orientation the arithmetic supports.
TransportReport log_map_transport_check(int leaves_per_family = 5, double tol = 1e-4, double step = 1e-3);

std::string to_string(Flatness f);
std::string to_string(Equivalence e);

}  // namespace webcurv

#endif
