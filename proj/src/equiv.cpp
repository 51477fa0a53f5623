#include <algorithm>
#include <cmath>

#include "webcurv/equiv.hpp"

namespace webcurv {

std::string to_string(Flatness f) {
    switch (f) {
        case Flatness::flat: return "Flat";
        case Flatness::non_flat: return "NonFlat";
        case Flatness::undetermined: return "Undetermined";
    }
    return "?";
}

std::string to_string(Equivalence e) {
    switch (e) {
        case Equivalence::equivalent_flat: return "EquivalentFlat";
        case Equivalence::not_equivalent: return "NotEquivalent";
        case Equivalence::inconclusive: return "Inconclusive";
    }
    return "?";
}

FlatnessVerdict classify_flat(const OdeProblem& p, const ZeroTestOptions& opts) {
    FlatnessVerdict v;
    const ZeroTestResult z = is_identically_zero(curvature_numerator(p.F), p.domain, opts);
    switch (z.verdict) {
        case ZeroTest::yes: v.tag = Flatness::flat; break;
        case ZeroTest::unknown: v.tag = Flatness::undetermined; break;
        case ZeroTest::no: {
            v.tag = Flatness::non_flat;
            v.witness = z.witness;
            const Point base{z.witness->x, z.witness->y, 1.0};
            v.value = eval(curvature(p).K_base, base);
            break;
        }
    }
    return v;
}

EquivalenceVerdict equivalence_check(const OdeProblem& p1, const OdeProblem& p2, const ZeroTestOptions& opts) {
    EquivalenceVerdict v;
    v.first = classify_flat(p1, opts);
    v.second = classify_flat(p2, opts);
    const bool f1 = v.first.tag == Flatness::flat;
    const bool f2 = v.second.tag == Flatness::flat;
    const bool n1 = v.first.tag == Flatness::non_flat;
    const bool n2 = v.second.tag == Flatness::non_flat;
    if (f1 && f2) {
        v.tag = Equivalence::equivalent_flat;
    } else if (f1 && n2) {
        v.tag = Equivalence::not_equivalent;
        v.flat_side = 1;
    } else if (n1 && f2) {
        v.tag = Equivalence::not_equivalent;
        v.flat_side = 2;
    } else {
        v.tag = Equivalence::inconclusive;
    }
    return v;
}

ImageEscapesTarget::ImageEscapesTarget(Point source, Point image)
    : std::runtime_error("image " + to_string(image) + " of " + to_string(source) + " escapes the target"),
      source_(source),
      image_(image) {}

Expr jacobian_determinant(const DiffeoMap& m) {
    return differentiate(m.a, Var::x) * differentiate(m.b, Var::y) -
           differentiate(m.a, Var::y) * differentiate(m.b, Var::x);
}

namespace {

std::pair<double, double> apply(const DiffeoMap& m, double x, double y) {
    const Point p{x, y, 1.0};
    const double a = eval(m.a, p);
    const double b = eval(m.b, p);
    const auto slack = [](double v) { return 1e-12 * (1.0 + std::abs(v)); };
    const Rect& t = m.target;
    if (a < t.x_min - slack(t.x_min) || a > t.x_max + slack(t.x_max) || b < t.y_min - slack(t.y_min) ||
        b > t.y_max + slack(t.y_max))
        throw ImageEscapesTarget(p, Point{a, b, 1.0});
    return {a, b};
}

double coordinate_spread(const DiffeoMap& m, const std::vector<Leaf>& leaves, int coord) {
    double dev = 0.0;
    for (const Leaf& leaf : leaves) {
        if (leaf.points.empty()) continue;
        const auto first = apply(m, leaf.points[0].first, leaf.points[0].second);
        const double ref = coord == 0 ? first.first : first.second;
        for (const auto& [x, y] : leaf.points) {
            const auto img = apply(m, x, y);
            dev = std::max(dev, std::abs((coord == 0 ? img.first : img.second) - ref));
        }
    }
    return dev;
}

double transported_leaf_deviation(const DiffeoMap& m, const Expr& target_rhs, const std::vector<Leaf>& leaves,
                                  double step) {
    double dev = 0.0;
    for (const Leaf& leaf : leaves) {
        if (leaf.points.size() < 2) continue;
        std::vector<std::pair<double, double>> images;
        images.reserve(leaf.points.size());
        for (const auto& [x, y] : leaf.points) images.push_back(apply(m, x, y));
        double rx = images[0].first;
        double ry = images[0].second;
        try {
            for (std::size_t i = 1; i < images.size(); ++i) {
                const Leaf seg = integrate_unbounded(target_rhs, rx, ry, images[i].first, step);
                rx = seg.points.back().first;
                ry = seg.points.back().second;
                dev = std::max(dev, std::abs(images[i].second - ry));
            }
        } catch (const DomainError&) {
            return std::numeric_limits<double>::infinity();
        }
        if (!std::isfinite(dev)) return std::numeric_limits<double>::infinity();
    }
    return dev;
}

}  // namespace

DiffeoCheckReport verify_diffeo(const DiffeoMap& m, const OdeProblem& p1, const OdeProblem& p2,
                                int leaves_per_family, double tol, double step) {
    if (leaves_per_family < 2) throw std::invalid_argument("verify_diffeo needs at least two leaves per family");
    DiffeoCheckReport r;
    r.tol = tol;

    const Expr jac = jacobian_determinant(m);
    constexpr int grid = 17;
    r.jacobian_ok = true;
    for (int i = 0; i < grid && r.jacobian_ok; ++i)
        for (int j = 0; j < grid && r.jacobian_ok; ++j)
            if (!(std::abs(eval(jac, m.source.grid(i, j, grid))) > 1e-10)) r.jacobian_ok = false;
    if (!r.jacobian_ok) return r;

    const OdeProblem src(p1.F, m.source);
    r.dev[0] = coordinate_spread(m, leaf_family(src, 1, leaves_per_family, step), 0);
    r.dev[1] = coordinate_spread(m, leaf_family(src, 2, leaves_per_family, step), 1);
    r.dev[2] = transported_leaf_deviation(m, p2.F, leaf_family(src, 3, leaves_per_family, step), step);
    r.pass = std::all_of(r.dev.begin(), r.dev.end(), [tol](double d) { return d <= tol; });
    return r;
}

TransportReport log_map_transport_check(int leaves_per_family, double tol, double step) {
    const Expr fwd_a = parse("x - 1");
    const Expr fwd_b = parse("ln(y)");
    const Expr inv_a = parse("x + 1");
    const Expr inv_b = parse("exp(y)");

    TransportReport rep;

    struct Case {
        const char* label;
        const char* from;
        const char* to;
        Expr a, b;
        Rect source, target;
    };
    // Sources avoid x = 1 (where 1 - x vanishes) and keep y > 0 under ln.
    const Case cases[] = {
        {"(x - 1, ln y): x*exp(-y) -> 1 - x", "x*exp(-y)", "1 - x", fwd_a, fwd_b, Rect(2.5, 4, 0.5, 3),
         Rect(1.5, 3, -0.7, 1.1)},
        {"(x + 1, exp y): 1 - x -> x*exp(-y)", "1 - x", "x*exp(-y)", inv_a, inv_b, Rect(1.5, 3, -0.5, 1),
         Rect(2.5, 4, 0.6, 2.75)},
        {"(x - 1, ln y): 1 - x -> x*exp(-y)", "1 - x", "x*exp(-y)", fwd_a, fwd_b, Rect(1.5, 3, 0.5, 3),
         Rect(0.5, 2, -0.7, 1.1)},
        {"(x - 1, ln y): 1 - x -> -x*exp(-y) (control)", "1 - x", "-x*exp(-y)", fwd_a, fwd_b, Rect(1.5, 3, 0.5, 3),
         Rect(0.5, 2, -0.7, 1.1)},
    };
    for (const Case& c : cases) {
        OrientationResult o{c.label, DiffeoMap{c.a, c.b, c.source, c.target}, c.from, c.to, std::nullopt, {}};
        try {
            const OdeProblem p1(parse(c.from), c.source);
            const OdeProblem p2(parse(c.to), c.target);
            o.report = verify_diffeo(o.map, p1, p2, leaves_per_family, tol, step);
        } catch (const std::exception& ex) {
            o.error = ex.what();
        }
        rep.orientations.push_back(std::move(o));
    }

    const Rect grid_dom(1.5, 3, 0.5, 3);
    for (int i = 0; i < 17; ++i)
        for (int j = 0; j < 17; ++j) {
            const Point p = grid_dom.grid(i, j, 17);
            const Point img{eval(fwd_a, p), eval(fwd_b, p), 1.0};
            const double bx = eval(inv_a, img);
            const double by = eval(inv_b, img);
            rep.inverse_roundtrip_max = std::max({rep.inverse_roundtrip_max, std::abs(bx - p.x), std::abs(by - p.y)});
        }
    rep.jacobian_at_2_1 = eval(jacobian_determinant(DiffeoMap{fwd_a, fwd_b, grid_dom, grid_dom}), Point{2, 1, 1});
    return rep;
}

}  // namespace webcurv
