#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "webcurv/selftest.hpp"

namespace webcurv {

std::vector<OdeProblem> builtin_corpus() {
    return {
        OdeProblem::parse("1", Rect(0, 1, 0, 1)),
        OdeProblem::parse("1 - x", Rect(1.1, 4, -3, 3)),
        OdeProblem::parse("x + y", Rect(0.5, 2, 0.5, 2)),
        OdeProblem::parse("x*exp(-y)", Rect(0.5, 3, 0.5, 3)),
        OdeProblem::parse("x*y", Rect(1, 3, 1, 3)),
        OdeProblem::parse("y", Rect(0, 3, 0.5, 4)),
    };
}

OrderMeasurement measure_rk4_order(const Expr& F, double x0, double y0, double x1, double step) {
    const Leaf ref = integrate_unbounded(F, x0, y0, x1, step / 16);
    const auto error_of = [&](double h, std::size_t stride) {
        const Leaf run = integrate_unbounded(F, x0, y0, x1, h);
        double err = 0.0;
        for (std::size_t i = 0; i < run.points.size() && i * stride < ref.points.size(); ++i)
            err = std::max(err, std::abs(run.points[i].second - ref.points[i * stride].second));
        return err;
    };
    OrderMeasurement m;
    m.step = step;
    m.err_h = error_of(step, 16);
    m.err_half = error_of(step / 2, 8);
    m.ratio = m.err_half > 0.0 ? m.err_h / m.err_half : std::numeric_limits<double>::infinity();

    double ymax = 0.0;
    for (const auto& [x, y] : ref.points) ymax = std::max(ymax, std::abs(y));
    const double n = std::abs(x1 - x0) / (step / 2);
    const double floor = 10.0 * n * std::numeric_limits<double>::epsilon() * std::max(1.0, ymax);
    m.significant = m.err_half > floor;
    return m;
}

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(3);
    os << v;
    return os.str();
}

struct Sampler {
    std::mt19937_64 rng;
    explicit Sampler(std::uint64_t seed) : rng(seed) {}

    Point in(const Rect& d, double amin, double amax) {
        std::uniform_real_distribution<double> u(0.02, 0.98);
        std::uniform_real_distribution<double> ua(amin, amax);
        const double x = d.x_min + u(rng) * d.width();
        const double y = d.y_min + u(rng) * d.height();
        return {x, y, ua(rng)};
    }
};

std::vector<Expr> probe_expressions(const OdeProblem& p) {
    const Expr alpha = Expr::variable(Var::alpha);
    return {p.F, p.F / alpha, differentiate(p.F, Var::y) / p.F, curvature_numerator(p.F)};
}

SuiteResult derivative_suite(const std::vector<OdeProblem>& corpus, const SelftestOptions& o) {
    SuiteResult s{"derivative-fd", 0.0, 1e-6, true, {}};
    Sampler rng(o.seed);
    for (const auto& p : corpus) {
        double worst = 0.0;
        for (const Expr& e : probe_expressions(p))
            for (Var v : {Var::x, Var::y, Var::alpha}) {
                const Expr de = differentiate(e, v);
                for (int k = 0; k < o.random_points; ++k) {
                    const Point q = rng.in(p.domain, 0.5, 2.0);
                    const double exact = eval(de, q);
                    const double fd = central_difference(e, v, q);
                    worst = std::max(worst, std::abs(exact - fd) / (1.0 + std::abs(exact)));
                }
            }
        s.measured = std::max(s.measured, worst);
        s.details.push_back(format(p.F) + ": max rel " + fmt(worst));
    }
    s.passed = s.measured <= s.threshold;
    return s;
}

SuiteResult d_squared_suite(const std::vector<OdeProblem>& corpus) {
    SuiteResult s{"d-squared", 0.0, 0.0, true, {}};
    for (const auto& p : corpus)
        for (const Expr& e : probe_expressions(p)) {
            const TwoForm dd = d1(d0(e));
            for (const Expr* c : {&dd.p, &dd.q, &dd.r})
                if (is_identically_zero(*c, p.domain).verdict != ZeroTest::yes) {
                    s.measured += 1.0;
                    s.details.push_back("d(d(" + format(e) + ")) is not zero");
                }
        }
    s.passed = s.measured == 0.0;
    if (s.passed) s.details.push_back("d(d f) = 0 for all probe expressions");
    return s;
}

SuiteResult annihilation_suite(const std::vector<OdeProblem>& corpus) {
    SuiteResult s{"annihilation", 0.0, 0.0, true, {}};
    for (const auto& p : corpus) {
        const Web w{p, {Expr::integer(1), Expr{}}, {Expr{}, p.F}, {Expr::integer(1), p.F}};
        const AdaptedCoframe eta = adapted_coframe(p);
        const Expr pairings[] = {pair(eta.eta1, w.u2.dx, w.u2.dy), pair(eta.eta2, w.u1.dx, w.u1.dy),
                                 pair(eta.eta3, w.u3.dx, w.u3.dy)};
        for (const Expr& e : pairings)
            if (is_identically_zero(e, p.domain).verdict != ZeroTest::yes) {
                s.measured += 1.0;
                s.details.push_back(format(p.F) + ": pairing " + format(e) + " is not zero");
            }
    }
    s.passed = s.measured == 0.0;
    return s;
}

SuiteResult structure_suite(const std::vector<OdeProblem>& corpus, const SelftestOptions& o) {
    SuiteResult s{"structure", 0.0, 1e-9, true, {}};
    Sampler rng(o.seed + 1);
    for (const auto& p : corpus) {
        const StructureEquations eq = structure_equations(p);
        double worst = 0.0;
        for (int k = 0; k < o.random_points; ++k) worst = std::max(worst, eq.at(rng.in(p.domain, 0.1, 10.0)).sup_norm());
        s.measured = std::max(s.measured, worst);
        s.details.push_back(format(p.F) + ": max residual " + fmt(worst));
    }
    s.passed = s.measured <= s.threshold;
    return s;
}

SuiteResult curvature_identity_suite(const std::vector<OdeProblem>& corpus, const SelftestOptions& o) {
    SuiteResult s{"curvature-identity", 0.0, 1e-9, true, {}};
    Sampler rng(o.seed + 1);
    for (const auto& p : corpus) {
        const TwoForm id = curvature_identity(p);
        double worst = 0.0;
        for (int k = 0; k < o.random_points; ++k) {
            const auto c = form_eval(id, rng.in(p.domain, 0.1, 10.0));
            worst = std::max({worst, std::abs(c[0]), std::abs(c[1]), std::abs(c[2])});
        }
        s.measured = std::max(s.measured, worst);
        s.details.push_back(format(p.F) + ": max residual " + fmt(worst));
    }
    s.passed = s.measured <= s.threshold;
    return s;
}

SuiteResult gauge_suite(const std::vector<OdeProblem>& corpus) {
    SuiteResult s{"gauge-law", 0.0, 1e-12, true, {}};
    for (const auto& p : corpus) {
        const CurvatureReport c = curvature(p);
        for (int i = 0; i < 17; ++i)
            for (int j = 0; j < 17; ++j) {
                Point q = p.domain.grid(i, j, 17);
                const double base = eval(c.K, q);
                for (double a : {0.1, 0.5, 2.0, 10.0}) {
                    q.alpha = a;
                    const double k = eval(c.K, q);
                    s.measured = std::max(s.measured, std::abs(k - a * a * base) / (1.0 + std::abs(k)));
                }
            }
    }
    s.passed = s.measured <= s.threshold;
    s.details.push_back("K(x, y, alpha) = alpha^2 K(x, y, 1) on 17x17 grids");
    return s;
}

SuiteResult uniqueness_suite(const std::vector<OdeProblem>& corpus, const SelftestOptions& o) {
    SuiteResult s{"uniqueness", std::numeric_limits<double>::infinity(), 1e-3, true, {}};
    const Expr tenth = Expr::constant(Rational(1, 10));
    const OneForm deltas[] = {tenth * OneForm::dx(), tenth * OneForm::dy(), tenth * OneForm::dalpha()};
    Sampler rng(o.seed + 2);
    for (const auto& p : corpus) {
        const OneForm phi = connection_form_raw(p).phi;
        for (const OneForm& delta : deltas) {
            const StructureEquations eq = structure_equations(p, phi + delta);
            double worst = 0.0;
            for (int k = 0; k < 20; ++k) worst = std::max(worst, eq.at(rng.in(p.domain, 0.1, 10.0)).sup_norm());
            s.measured = std::min(s.measured, worst);
        }
    }
    s.passed = s.measured > s.threshold;
    s.details.push_back("smallest perturbed residual " + fmt(s.measured) + " (must exceed 1e-3)");
    return s;
}

SuiteResult order_suite(const std::vector<OdeProblem>& corpus, const SelftestOptions& o) {
    SuiteResult s{"rk4-order", 0.0, 0.0, true, {}};
    // Grow h until two members (or the whole corpus) have measurable truncation error.
    const std::size_t wanted = std::min<std::size_t>(2, corpus.size());
    std::vector<std::string> lines;
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (double h = o.step; h <= 0.1 + 1e-12; h *= 2) {
        std::vector<std::string> here;
        double l = std::numeric_limits<double>::infinity();
        double u = 0.0;
        for (const auto& p : corpus) {
            const Rect& d = p.domain;
            const OrderMeasurement m =
                measure_rk4_order(p.F, d.x_min, 0.5 * (d.y_min + d.y_max), d.x_max, h);
            if (!m.significant) continue;
            l = std::min(l, m.ratio);
            u = std::max(u, m.ratio);
            here.push_back(format(p.F) + ": h=" + fmt(h) + " err " + fmt(m.err_h) + " -> " + fmt(m.err_half) +
                           ", ratio " + fmt(m.ratio));
        }
        if (here.empty()) continue;
        lines = std::move(here);
        lo = l;
        hi = u;
        if (lines.size() >= wanted) break;
    }
    if (lines.empty()) {
        s.details.push_back("no corpus member has truncation error above rounding; nothing to measure");
        return s;
    }
    s.details = std::move(lines);
    s.measured = lo;
    s.threshold = 12.0;
    s.passed = lo >= 12.0 && hi <= 20.0;
    s.details.push_back("ratio range [" + fmt(lo) + ", " + fmt(hi) + "], required within [12, 20]");
    return s;
}

SuiteResult classification_suite(const std::vector<OdeProblem>& corpus, const SelftestOptions& o) {
    SuiteResult s{"classification", 0.0, 0.0, true, {}};
    ZeroTestOptions zo;
    zo.seed = o.seed;
    std::vector<FlatnessVerdict> verdicts;
    for (const auto& p : corpus) {
        const FlatnessVerdict v = classify_flat(p, zo);
        verdicts.push_back(v);
        std::string line = format(p.F) + ": " + to_string(v.tag);
        if (v.witness) line += " at (" + fmt(v.witness->x) + ", " + fmt(v.witness->y) + ") K_base=" + fmt(v.value);
        s.details.push_back(line);
        if (v.tag == Flatness::undetermined) s.measured += 1.0;
    }
    // Pairwise verdicts must be symmetric and agree with the flatness tags.
    for (std::size_t i = 0; i < corpus.size(); ++i)
        for (std::size_t j = 0; j < corpus.size(); ++j) {
            const EquivalenceVerdict ab = equivalence_check(corpus[i], corpus[j], zo);
            const EquivalenceVerdict ba = equivalence_check(corpus[j], corpus[i], zo);
            const bool both_flat = verdicts[i].tag == Flatness::flat && verdicts[j].tag == Flatness::flat;
            const bool consistent = ab.tag == ba.tag && (ab.tag == Equivalence::equivalent_flat) == both_flat &&
                                    (ab.tag != Equivalence::not_equivalent || ab.flat_side + ba.flat_side == 3);
            if (!consistent) {
                s.measured += 1.0;
                s.details.push_back("inconsistent verdicts for " + format(corpus[i].F) + " / " + format(corpus[j].F));
            }
        }
    s.passed = s.measured == 0.0;
    return s;
}

}  // namespace

std::vector<SuiteResult> run_selftest(const std::vector<OdeProblem>& corpus, const SelftestOptions& opts) {
    return {
        derivative_suite(corpus, opts),  d_squared_suite(corpus),
        annihilation_suite(corpus),      structure_suite(corpus, opts),
        curvature_identity_suite(corpus, opts), gauge_suite(corpus),
        uniqueness_suite(corpus, opts),  order_suite(corpus, opts),
        classification_suite(corpus, opts),
    };
}

}  // namespace webcurv
