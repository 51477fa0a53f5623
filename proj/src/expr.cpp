#include <cmath>
#include <numbers>
#include <sstream>

#include "webcurv/expr.hpp"

namespace webcurv {

std::string_view name_of(Var v) {
    switch (v) {
        case Var::x: return "x";
        case Var::y: return "y";
        case Var::alpha: return "alpha";
    }
    return "?";
}

std::string_view name_of(NamedConst c) { return c == NamedConst::e ? "e" : "pi"; }

std::string_view name_of(UnaryOp op) {
    switch (op) {
        case UnaryOp::neg: return "-";
        case UnaryOp::exp: return "exp";
        case UnaryOp::ln: return "ln";
        case UnaryOp::sin: return "sin";
        case UnaryOp::cos: return "cos";
        case UnaryOp::sqrt: return "sqrt";
    }
    return "?";
}

std::string to_string(const Point& p) {
    std::ostringstream os;
    os.precision(17);
    os << "(" << p.x << ", " << p.y << ", " << p.alpha << ")";
    return os.str();
}

std::string to_string(const Rect& r) {
    std::ostringstream os;
    os.precision(17);
    os << "(" << r.x_min << ", " << r.x_max << ")x(" << r.y_min << ", " << r.y_max << ")";
    return os.str();
}

// ---------------------------------------------------------------------------
// Construction

Expr::Expr() : Expr(std::make_shared<const Node>(Node{ConstantNode{Rational(0)}})) {}

Expr Expr::constant(Rational value) { return Expr(std::make_shared<const Node>(Node{ConstantNode{value}})); }

Expr Expr::named(NamedConst which) { return Expr(std::make_shared<const Node>(Node{NamedNode{which}})); }

Expr Expr::variable(Var which) { return Expr(std::make_shared<const Node>(Node{VariableNode{which}})); }

Expr Expr::unary(UnaryOp op, Expr child) {
    return Expr(std::make_shared<const Node>(Node{UnaryNode{op, std::move(child)}}));
}

Expr Expr::binary(BinaryOp op, Expr lhs, Expr rhs) {
    return Expr(std::make_shared<const Node>(Node{BinaryNode{op, std::move(lhs), std::move(rhs)}}));
}

std::optional<Rational> Expr::as_rational() const {
    if (const auto* c = std::get_if<ConstantNode>(&node_->v)) return c->value;
    return std::nullopt;
}

bool Expr::is_zero() const {
    auto r = as_rational();
    return r && r->is_zero();
}

bool Expr::is_one() const {
    auto r = as_rational();
    return r && r->is_one();
}

bool Expr::mentions(Var v) const {
    return std::visit(
        [v](const auto& n) -> bool {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, VariableNode>) return n.which == v;
            else if constexpr (std::is_same_v<T, UnaryNode>) return n.child.mentions(v);
            else if constexpr (std::is_same_v<T, BinaryNode>) return n.lhs.mentions(v) || n.rhs.mentions(v);
            else return false;
        },
        node_->v);
}

bool same(const Expr& a, const Expr& b) {
    if (&a.node() == &b.node()) return true;
    const auto& va = a.node().v;
    const auto& vb = b.node().v;
    if (va.index() != vb.index()) return false;
    if (const auto* c = std::get_if<ConstantNode>(&va)) return c->value == std::get<ConstantNode>(vb).value;
    if (const auto* n = std::get_if<NamedNode>(&va)) return n->which == std::get<NamedNode>(vb).which;
    if (const auto* v = std::get_if<VariableNode>(&va)) return v->which == std::get<VariableNode>(vb).which;
    if (const auto* u = std::get_if<UnaryNode>(&va)) {
        const auto& o = std::get<UnaryNode>(vb);
        return u->op == o.op && same(u->child, o.child);
    }
    const auto& l = std::get<BinaryNode>(va);
    const auto& r = std::get<BinaryNode>(vb);
    return l.op == r.op && same(l.lhs, r.lhs) && same(l.rhs, r.rhs);
}

namespace {

template <typename Op>
std::optional<Expr> fold(const Expr& a, const Expr& b, Op op) {
    auto ra = a.as_rational();
    auto rb = b.as_rational();
    if (!ra || !rb) return std::nullopt;
    try {
        return Expr::constant(op(*ra, *rb));
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

const UnaryNode* as_neg(const Expr& e) {
    const auto* u = std::get_if<UnaryNode>(&e.node().v);
    return (u && u->op == UnaryOp::neg) ? u : nullptr;
}

}  // namespace

Expr operator+(const Expr& a, const Expr& b) {
    if (auto f = fold(a, b, [](auto p, auto q) { return p + q; })) return *f;
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (const auto* n = as_neg(b)) return a - n->child;
    if (auto rb = b.as_rational(); rb && rb->is_negative()) return a - Expr::constant(-*rb);
    return Expr::binary(BinaryOp::add, a, b);
}

Expr operator-(const Expr& a, const Expr& b) {
    if (auto f = fold(a, b, [](auto p, auto q) { return p - q; })) return *f;
    if (b.is_zero()) return a;
    if (a.is_zero()) return -b;
    if (same(a, b)) return Expr{};
    if (const auto* n = as_neg(b)) return a + n->child;
    return Expr::binary(BinaryOp::sub, a, b);
}

Expr operator*(const Expr& a, const Expr& b) {
    if (auto f = fold(a, b, [](auto p, auto q) { return p * q; })) return *f;
    if (a.is_zero() || b.is_zero()) return Expr{};
    if (a.is_one()) return b;
    if (b.is_one()) return a;
    if (auto ra = a.as_rational(); ra && *ra == Rational(-1)) return -b;
    if (auto rb = b.as_rational(); rb && *rb == Rational(-1)) return -a;
    return Expr::binary(BinaryOp::mul, a, b);
}

Expr operator/(const Expr& a, const Expr& b) {
    if (b.is_one()) return a;
    if (b.is_zero()) return Expr::binary(BinaryOp::div, a, b);
    if (auto f = fold(a, b, [](auto p, auto q) { return p / q; })) return *f;
    if (a.is_zero()) return Expr{};
    return Expr::binary(BinaryOp::div, a, b);
}

Expr operator-(const Expr& a) {
    if (auto r = a.as_rational()) {
        try {
            return Expr::constant(-*r);
        } catch (const std::exception&) {
        }
    }
    if (const auto* n = as_neg(a)) return n->child;
    return Expr::unary(UnaryOp::neg, a);
}

Expr pow(const Expr& base, const Expr& exponent) {
    if (exponent.is_zero()) return Expr::integer(1);
    if (exponent.is_one()) return base;
    auto rb = base.as_rational();
    auto re = exponent.as_rational();
    if (rb && re && re->is_integer() && re->num() >= -64 && re->num() <= 64 && !(rb->is_zero() && re->is_negative())) {
        try {
            return Expr::constant(pow(*rb, static_cast<int>(re->num())));
        } catch (const std::exception&) {
        }
    }
    return Expr::binary(BinaryOp::pow, base, exponent);
}

Expr exp(const Expr& a) { return a.is_zero() ? Expr::integer(1) : Expr::unary(UnaryOp::exp, a); }
Expr ln(const Expr& a) { return a.is_one() ? Expr{} : Expr::unary(UnaryOp::ln, a); }
Expr sin(const Expr& a) { return a.is_zero() ? Expr{} : Expr::unary(UnaryOp::sin, a); }
Expr cos(const Expr& a) { return a.is_zero() ? Expr::integer(1) : Expr::unary(UnaryOp::cos, a); }
Expr sqrt(const Expr& a) {
    if (a.is_zero() || a.is_one()) return a;
    return Expr::unary(UnaryOp::sqrt, a);
}

// ---------------------------------------------------------------------------
// Errors

namespace {

std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += ", ";
        out += items[i];
    }
    return out;
}

}  // namespace

ParseError::ParseError(std::size_t offset, std::vector<std::string> expected, std::string found)
    : std::runtime_error("syntax error at offset " + std::to_string(offset) + ": expected one of {" +
                         join(expected) + "}, found " + found),
      offset_(offset),
      expected_(std::move(expected)) {}

UnknownIdentifier::UnknownIdentifier(std::size_t offset, std::string name)
    : std::runtime_error("unknown identifier '" + name + "' at offset " + std::to_string(offset)),
      offset_(offset),
      name_(std::move(name)) {}

DomainError::DomainError(std::string subexpr, Point at, std::string reason)
    : std::runtime_error("domain error in '" + subexpr + "' at " + to_string(at) + ": " + reason),
      subexpr_(std::move(subexpr)),
      at_(at) {}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

double eval_rec(const Expr& e, const Point& p) {
    const auto fail = [&](const char* why) -> double { throw DomainError(format(e), p, why); };
    const auto checked = [&](double v) -> double { return std::isfinite(v) ? v : fail("non-finite result"); };

    const auto& v = e.node().v;
    if (const auto* c = std::get_if<ConstantNode>(&v)) return c->value.to_double();
    if (const auto* n = std::get_if<NamedNode>(&v))
        return n->which == NamedConst::e ? std::numbers::e : std::numbers::pi;
    if (const auto* var = std::get_if<VariableNode>(&v)) {
        switch (var->which) {
            case Var::x: return p.x;
            case Var::y: return p.y;
            case Var::alpha: return p.alpha;
        }
    }
    if (const auto* u = std::get_if<UnaryNode>(&v)) {
        const double a = eval_rec(u->child, p);
        switch (u->op) {
            case UnaryOp::neg: return -a;
            case UnaryOp::exp: return checked(std::exp(a));
            case UnaryOp::ln:
                if (a <= 0.0) return fail("logarithm of a non-positive number");
                return std::log(a);
            case UnaryOp::sin: return std::sin(a);
            case UnaryOp::cos: return std::cos(a);
            case UnaryOp::sqrt:
                if (a < 0.0) return fail("square root of a negative number");
                return std::sqrt(a);
        }
    }
    const auto& b = std::get<BinaryNode>(v);
    const double l = eval_rec(b.lhs, p);
    const double r = eval_rec(b.rhs, p);
    switch (b.op) {
        case BinaryOp::add: return checked(l + r);
        case BinaryOp::sub: return checked(l - r);
        case BinaryOp::mul: return checked(l * r);
        case BinaryOp::div:
            if (r == 0.0) return fail("division by zero");
            return checked(l / r);
        case BinaryOp::pow:
            if (l < 0.0 && std::trunc(r) != r) return fail("non-integer power of a negative number");
            if (l == 0.0 && r < 0.0) return fail("negative power of zero");
            return checked(std::pow(l, r));
    }
    return fail("malformed node");
}

}  // namespace

double eval(const Expr& e, const Point& p) { return eval_rec(e, p); }

// ---------------------------------------------------------------------------
// Differentiation

Expr differentiate(const Expr& e, Var v) {
    const auto& node = e.node().v;
    if (std::holds_alternative<ConstantNode>(node) || std::holds_alternative<NamedNode>(node)) return Expr{};
    if (const auto* var = std::get_if<VariableNode>(&node)) return Expr::integer(var->which == v ? 1 : 0);
    if (!e.mentions(v)) return Expr{};

    if (const auto* u = std::get_if<UnaryNode>(&node)) {
        const Expr& a = u->child;
        const Expr da = differentiate(a, v);
        switch (u->op) {
            case UnaryOp::neg: return -da;
            case UnaryOp::exp: return e * da;
            case UnaryOp::ln: return da / a;
            case UnaryOp::sin: return cos(a) * da;
            case UnaryOp::cos: return -(sin(a) * da);
            case UnaryOp::sqrt: return da / (Expr::integer(2) * e);
        }
    }

    const auto& b = std::get<BinaryNode>(node);
    const Expr& f = b.lhs;
    const Expr& g = b.rhs;
    switch (b.op) {
        case BinaryOp::add: return differentiate(f, v) + differentiate(g, v);
        case BinaryOp::sub: return differentiate(f, v) - differentiate(g, v);
        case BinaryOp::mul: return differentiate(f, v) * g + f * differentiate(g, v);
        case BinaryOp::div:
            return (differentiate(f, v) * g - f * differentiate(g, v)) / pow(g, Expr::integer(2));
        case BinaryOp::pow: {
            const bool var_exponent = g.mentions(Var::x) || g.mentions(Var::y) || g.mentions(Var::alpha);
            if (!var_exponent) {
                // Power rule; keeps integer powers of negative bases in their domain.
                return g * pow(f, g - Expr::integer(1)) * differentiate(f, v);
            }
            const auto* base_named = std::get_if<NamedNode>(&f.node().v);
            if (base_named && base_named->which == NamedConst::e) return e * differentiate(g, v);
            return e * (differentiate(g, v) * ln(f) + g * differentiate(f, v) / f);
        }
    }
    return Expr{};
}

double central_difference(const Expr& e, Var v, const Point& p, double h) {
    Point lo = p;
    Point hi = p;
    switch (v) {
        case Var::x: lo.x -= h; hi.x += h; break;
        case Var::y: lo.y -= h; hi.y += h; break;
        case Var::alpha: lo.alpha -= h; hi.alpha += h; break;
    }
    return (eval(e, hi) - eval(e, lo)) / (2.0 * h);
}

}  // namespace webcurv
