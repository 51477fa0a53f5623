#include <algorithm>
#include <cmath>
#include <cstdio>

#include "webcurv/web.hpp"

namespace webcurv {

OdeProblem::OdeProblem(Expr rhs, Rect dom) : F(std::move(rhs)), domain(dom) {
    if (F.mentions(Var::alpha)) throw std::invalid_argument("ODE right-hand side must not depend on alpha");
}

NonVanishingViolation::NonVanishingViolation(Point witness)
    : std::runtime_error("F vanishes at " + to_string(witness)), witness_(witness) {}

DomainExit::DomainExit(Leaf partial, std::pair<double, double> last_valid)
    : std::runtime_error("integration left the domain after (" + std::to_string(last_valid.first) + ", " +
                         std::to_string(last_valid.second) + ")"),
      partial_(std::move(partial)),
      last_(last_valid) {}

Web build_web(const OdeProblem& p) {
    constexpr int n = 33;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const Point q = p.domain.grid(i, j, n);
            const bool boundary = p.domain.on_boundary(q.x, q.y);
            double value = 0.0;
            try {
                value = eval(p.F, q);
            } catch (const DomainError&) {
                if (boundary) continue;
                throw;
            }
            if (std::abs(value) <= 1e-12 && !boundary) throw NonVanishingViolation(q);
        }
    }
    const Expr one = Expr::integer(1);
    return Web{p, {one, Expr{}}, {Expr{}, p.F}, {one, p.F}};
}

AdaptedCoframe adapted_coframe(const OdeProblem& p) {
    const OneForm eta1 = p.F * OneForm::dx();
    const OneForm eta2 = OneForm::dy();
    return {eta1, eta2, eta1 - eta2};
}

bool transversality_check(const Web& w, const Point& p) {
    const DirectionField* fields[] = {&w.u1, &w.u2, &w.u3};
    double v[3][2];
    double scale = 0.0;
    for (int i = 0; i < 3; ++i) {
        v[i][0] = eval(fields[i]->dx, p);
        v[i][1] = eval(fields[i]->dy, p);
        scale = std::max({scale, std::abs(v[i][0]), std::abs(v[i][1])});
    }
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            const double det = v[i][0] * v[j][1] - v[i][1] * v[j][0];
            if (!(std::abs(det) > 1e-12 * (1.0 + scale))) return false;
        }
    return true;
}

double rk4_step(const Expr& F, double x, double y, double h) {
    const auto f = [&F](double px, double py) { return eval(F, Point{px, py, 1.0}); };
    const double k1 = f(x, y);
    const double k2 = f(x + 0.5 * h, y + 0.5 * h * k1);
    const double k3 = f(x + 0.5 * h, y + 0.5 * h * k2);
    const double k4 = f(x + h, y + h * k3);
    return y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

namespace {

Leaf march(const Expr& F, double x0, double y0, double x_target, double step, const Rect* clip) {
    if (!(step > 0.0)) throw std::invalid_argument("step must be positive");
    Leaf leaf;
    leaf.which = 3;
    leaf.points.emplace_back(x0, y0);
    const double span = x_target - x0;
    const double dir = span < 0.0 ? -1.0 : 1.0;
    const double full = std::floor(std::abs(span) / step);
    const auto steps = static_cast<long long>(full);
    const double rest = std::abs(span) - full * step;

    double x = x0;
    double y = y0;
    const long long total = steps + (rest > 1e-12 * step ? 1 : 0);
    for (long long k = 1; k <= total; ++k) {
        const double next_x = k <= steps ? x0 + dir * static_cast<double>(k) * step : x_target;
        const double next_y = rk4_step(F, x, y, next_x - x);
        if (clip && !clip->contains_closed(next_x, next_y)) {
            leaf.clipped = true;
            throw DomainExit(leaf, {x, y});
        }
        x = next_x;
        y = next_y;
        leaf.points.emplace_back(x, y);
    }
    return leaf;
}

}  // namespace

Leaf integrate_leaf(const OdeProblem& p, const Point& seed, double x_target, double step) {
    if (!p.domain.contains_closed(seed.x, seed.y))
        throw std::invalid_argument("leaf seed " + to_string(seed) + " lies outside the domain");
    return march(p.F, seed.x, seed.y, x_target, step, &p.domain);
}

Leaf integrate_unbounded(const Expr& F, double x0, double y0, double x_target, double step) {
    return march(F, x0, y0, x_target, step, nullptr);
}

std::vector<Leaf> leaf_family(const OdeProblem& p, int which, int count, double step) {
    if (count < 1) throw std::invalid_argument("leaf count must be at least 1");
    if (which < 1 || which > 3) throw std::invalid_argument("foliation index must be 1, 2 or 3");
    const Rect& d = p.domain;
    constexpr int samples = 33;
    std::vector<Leaf> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        const double t = (k + 0.5) / count;
        Leaf leaf;
        leaf.which = which;
        if (which == 1) {
            const double x = d.x_min + t * d.width();
            for (int i = 0; i < samples; ++i) leaf.points.emplace_back(x, d.grid(0, i, samples).y);
        } else if (which == 2) {
            const double y = d.y_min + t * d.height();
            for (int i = 0; i < samples; ++i) leaf.points.emplace_back(d.grid(i, 0, samples).x, y);
        } else {
            const Point seed{0.5 * (d.x_min + d.x_max), d.y_min + t * d.height(), 1.0};
            const auto run = [&](double target) {
                try {
                    return integrate_leaf(p, seed, target, step);
                } catch (const DomainExit& ex) {
                    return ex.partial();
                }
            };
            Leaf back = run(d.x_min);
            Leaf fwd = run(d.x_max);
            leaf.clipped = back.clipped || fwd.clipped;
            leaf.points.assign(back.points.rbegin(), back.points.rend());
            leaf.points.insert(leaf.points.end(), fwd.points.begin() + 1, fwd.points.end());
        }
        out.push_back(std::move(leaf));
    }
    return out;
}

std::string export_leaves(const std::vector<Leaf>& leaves) {
    std::string out;
    char buf[96];
    for (std::size_t i = 0; i < leaves.size(); ++i) {
        if (i) out += '\n';
        for (const auto& [x, y] : leaves[i].points) {
            std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g\n", leaves[i].which, x, y);
            out += buf;
        }
    }
    return out;
}

GaugeSolution gauge_constraint_solve(const Expr& alpha, const Expr& beta, const Rect& dom) {
    GaugeSolution out;
    const ZeroTestResult z = is_identically_zero(alpha - beta, dom);
    out.consistent = z.verdict == ZeroTest::yes;
    out.determined = z.verdict != ZeroTest::unknown;
    out.witness = z.witness;
    if (out.consistent) out.gamma = simplify(alpha);
    return out;
}

}  // namespace webcurv
