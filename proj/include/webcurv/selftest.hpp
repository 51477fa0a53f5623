#ifndef WEBCURV_SELFTEST_HPP
#define WEBCURV_SELFTEST_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "webcurv/equiv.hpp"

namespace webcurv {

struct SuiteResult {
    std::string name;
    double measured = 0.0;   // max residual, or the measured ratio for rk4-order
    double threshold = 0.0;
    bool passed = false;
    std::vector<std::string> details;
};

struct SelftestOptions {
    std::uint64_t seed = 42;
    double step = 1e-3;       // base step of the RK4 order measurement
    int random_points = 100;  // per corpus member
};

/// y' = F for F in {1, 1 - x, x + y, x*exp(-y), x*y, y}, each on a domain
/// where F does not vanish.
std::vector<OdeProblem> builtin_corpus();

/// err(h) / err(h/2) for the RK4 march of y' = F from (x0, y0) to x1, where
/// err is the max deviation from a run at h/16 over the shared grid points.
/// `significant` is false when err(h/2) is within ten times the worst-case
/// rounding accumulation n*eps*max|y| over n steps, in which case the ratio
/// carries no information.
struct OrderMeasurement {
    double step = 0.0;
    double err_h = 0.0;
    double err_half = 0.0;
    double ratio = 0.0;
    bool significant = false;
};
OrderMeasurement measure_rk4_order(const Expr& F, double x0, double y0, double x1, double step);

/// Runs every invariant suite over `corpus`:
/// derivative-fd, d-squared, annihilation, structure, curvature-identity,
/// gauge-law, uniqueness, rk4-order, classification.
std::vector<SuiteResult> run_selftest(const std::vector<OdeProblem>& corpus, const SelftestOptions& opts = {});

}  // namespace webcurv

#endif
