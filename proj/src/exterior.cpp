#include "webcurv/exterior.hpp"

namespace webcurv {

OneForm operator+(const OneForm& u, const OneForm& v) { return {u.a + v.a, u.b + v.b, u.c + v.c}; }
OneForm operator-(const OneForm& u, const OneForm& v) { return {u.a - v.a, u.b - v.b, u.c - v.c}; }
OneForm operator*(const Expr& f, const OneForm& w) { return {f * w.a, f * w.b, f * w.c}; }
TwoForm operator+(const TwoForm& u, const TwoForm& v) { return {u.p + v.p, u.q + v.q, u.r + v.r}; }
TwoForm operator-(const TwoForm& u, const TwoForm& v) { return {u.p - v.p, u.q - v.q, u.r - v.r}; }
TwoForm operator*(const Expr& f, const TwoForm& w) { return {f * w.p, f * w.q, f * w.r}; }

OneForm simplify(const OneForm& w) { return {simplify(w.a), simplify(w.b), simplify(w.c)}; }
TwoForm simplify(const TwoForm& w) { return {simplify(w.p), simplify(w.q), simplify(w.r)}; }

OneForm d0(const Expr& f) {
    return {differentiate(f, Var::x), differentiate(f, Var::y), differentiate(f, Var::alpha)};
}

TwoForm d1(const OneForm& w) {
    return {differentiate(w.b, Var::x) - differentiate(w.a, Var::y),
            differentiate(w.c, Var::x) - differentiate(w.a, Var::alpha),
            differentiate(w.c, Var::y) - differentiate(w.b, Var::alpha)};
}

OneForm d(const Expr& f) { return d0(f); }
TwoForm d(const OneForm& w) { return d1(w); }

TwoForm wedge(const OneForm& u, const OneForm& v) {
    return {u.a * v.b - u.b * v.a, u.a * v.c - u.c * v.a, u.b * v.c - u.c * v.b};
}

Expr pair(const OneForm& w, const Expr& vx, const Expr& vy) { return w.a * vx + w.b * vy; }

std::array<double, 3> form_eval(const OneForm& w, const Point& p) {
    return {eval(w.a, p), eval(w.b, p), eval(w.c, p)};
}

std::array<double, 3> form_eval(const TwoForm& w, const Point& p) {
    return {eval(w.p, p), eval(w.q, p), eval(w.r, p)};
}

namespace {

std::string coefficient(const Expr& e) {
    const auto* b = std::get_if<BinaryNode>(&e.node().v);
    const bool sum = b && (b->op == BinaryOp::add || b->op == BinaryOp::sub);
    return sum ? "(" + format(e) + ")" : format(e);
}

}  // namespace

std::string format(const OneForm& w) {
    return coefficient(w.a) + " dx + " + coefficient(w.b) + " dy + " + coefficient(w.c) + " dalpha";
}

std::string format(const TwoForm& w) {
    return coefficient(w.p) + " dx^dy + " + coefficient(w.q) + " dx^dalpha + " + coefficient(w.r) + " dy^dalpha";
}

}  // namespace webcurv
