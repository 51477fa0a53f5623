#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "webcurv/expr.hpp"

namespace webcurv {

namespace {

// Atoms are the indivisible building blocks of the rational normal form:
// variables, named constants, and simplified non-rational calls. They are
// identified by their formatted text.
class AtomTable {
public:
    int intern(const Expr& e) {
        std::string key = format(e);
        auto it = index_.find(key);
        if (it != index_.end()) return it->second;
        const int id = static_cast<int>(exprs_.size());
        exprs_.push_back(e);
        keys_.push_back(key);
        index_.emplace(std::move(key), id);
        return id;
    }
    const Expr& expr(int id) const { return exprs_[static_cast<std::size_t>(id)]; }

    // Display order: x, y, alpha, then everything else alphabetically.
    bool display_before(int a, int b) const {
        const auto rank = [this](int id) {
            const std::string& k = keys_[static_cast<std::size_t>(id)];
            if (k == "x") return 0;
            if (k == "y") return 1;
            if (k == "alpha") return 2;
            return 3;
        };
        const int ra = rank(a);
        const int rb = rank(b);
        if (ra != rb) return ra < rb;
        return keys_[static_cast<std::size_t>(a)] < keys_[static_cast<std::size_t>(b)];
    }

private:
    std::vector<Expr> exprs_;
    std::vector<std::string> keys_;
    std::map<std::string, int> index_;
};

// Sparse exponent vector sorted by atom id; exponents are positive.
using Monomial = std::vector<std::pair<int, int>>;
using Poly = std::map<Monomial, Rational>;

Monomial mono_mul(const Monomial& a, const Monomial& b) {
    Monomial out;
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            out.push_back(b[j++]);
        } else {
            out.emplace_back(a[i].first, a[i].second + b[j].second);
            ++i;
            ++j;
        }
    }
    return out;
}

std::optional<Monomial> mono_div(const Monomial& a, const Monomial& b) {
    Monomial out;
    std::size_t i = 0;
    for (const auto& [id, ex] : b) {
        while (i < a.size() && a[i].first < id) out.push_back(a[i++]);
        if (i == a.size() || a[i].first != id || a[i].second < ex) return std::nullopt;
        if (a[i].second > ex) out.emplace_back(id, a[i].second - ex);
        ++i;
    }
    while (i < a.size()) out.push_back(a[i++]);
    return out;
}

int degree(const Monomial& m) {
    return std::accumulate(m.begin(), m.end(), 0, [](int s, const auto& p) { return s + p.second; });
}

// Lexicographic term order on dense exponent vectors indexed by atom id.
bool lex_less(const Monomial& a, const Monomial& b) {
    std::size_t i = 0;
    for (; i < a.size() && i < b.size(); ++i) {
        if (a[i].first != b[i].first) return a[i].first > b[i].first;
        if (a[i].second != b[i].second) return a[i].second < b[i].second;
    }
    return i == a.size() && i < b.size();
}

Poly::const_iterator leading(const Poly& p) {
    auto best = p.begin();
    for (auto it = p.begin(); it != p.end(); ++it)
        if (lex_less(best->first, it->first)) best = it;
    return best;
}

void add_term(Poly& p, const Monomial& m, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = p.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) p.erase(it);
    }
}

Poly poly_const(const Rational& c) {
    Poly p;
    add_term(p, {}, c);
    return p;
}

Poly poly_atom(int id) { return Poly{{Monomial{{id, 1}}, Rational(1)}}; }

Poly poly_add(const Poly& a, const Poly& b) {
    Poly out = a;
    for (const auto& [m, c] : b) add_term(out, m, c);
    return out;
}

Poly poly_scale(const Poly& a, const Rational& s) {
    Poly out;
    if (s.is_zero()) return out;
    for (const auto& [m, c] : a) out.emplace(m, c * s);
    return out;
}

Poly poly_mul(const Poly& a, const Poly& b) {
    Poly out;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) add_term(out, mono_mul(ma, mb), ca * cb);
    return out;
}

Poly poly_pow(const Poly& a, int n) {
    Poly out = poly_const(Rational(1));
    for (int i = 0; i < n; ++i) out = poly_mul(out, a);
    return out;
}

std::optional<Rational> poly_constant(const Poly& p) {
    if (p.empty()) return Rational(0);
    if (p.size() == 1 && p.begin()->first.empty()) return p.begin()->second;
    return std::nullopt;
}

std::optional<Poly> divide_exact(Poly r, const Poly& f) {
    const auto lt = leading(f);
    const Monomial lead_m = lt->first;
    const Rational lead_c = lt->second;
    Poly q;
    for (int guard = 0; !r.empty(); ++guard) {
        if (guard > 100000) return std::nullopt;
        const auto lr = leading(r);
        auto m = mono_div(lr->first, lead_m);
        if (!m) return std::nullopt;
        const Rational c = lr->second / lead_c;
        add_term(q, *m, c);
        for (const auto& [fm, fc] : f) add_term(r, mono_mul(*m, fm), -(c * fc));
    }
    return q;
}

struct Factor {
    Poly poly;  // primitive, non-constant, positive leading coefficient
    int power;
};

struct RatFn {
    Poly num;
    std::vector<Factor> den;
};

// Splits p = scale * primitive.
std::pair<Rational, Poly> make_primitive(const Poly& p) {
    std::int64_t l = 1;
    for (const auto& [m, c] : p) l = std::lcm(l, c.den());
    std::int64_t g = 0;
    for (const auto& [m, c] : p) g = std::gcd(g, (c * Rational(l)).num());
    Rational scale = Rational(g, l);
    if (leading(p)->second.is_negative()) scale = -scale;
    return {scale, poly_scale(p, scale.reciprocal())};
}

bool same_poly(const Poly& a, const Poly& b) { return a == b; }

// Multiplies `r` by 1/p^k, keeping the denominator factored.
void divide_by(RatFn& r, const Poly& p, int k) {
    if (auto c = poly_constant(p)) {
        r.num = poly_scale(r.num, pow(*c, -k));
        return;
    }
    const bool bare_atom = p.size() == 1 && p.begin()->first.size() == 1 &&
                           p.begin()->first[0].second == 1 && p.begin()->second.is_one();
    if (p.size() == 1 && !bare_atom) {
        // Monomial: split into one factor per atom so cancellation can see them.
        const auto& [m, c] = *p.begin();
        r.num = poly_scale(r.num, pow(c, -k));
        for (const auto& [id, ex] : m) divide_by(r, Poly{{Monomial{{id, 1}}, Rational(1)}}, ex * k);
        return;
    }
    auto [scale, prim] = make_primitive(p);
    r.num = poly_scale(r.num, pow(scale, -k));
    for (auto& f : r.den) {
        if (same_poly(f.poly, prim)) {
            f.power += k;
            return;
        }
    }
    r.den.push_back({std::move(prim), k});
}

void cancel(RatFn& r) {
    if (r.num.empty()) {
        r.den.clear();
        return;
    }
    for (auto& f : r.den) {
        while (f.power > 0) {
            auto q = divide_exact(r.num, f.poly);
            if (!q) break;
            r.num = std::move(*q);
            --f.power;
        }
    }
    std::erase_if(r.den, [](const Factor& f) { return f.power == 0; });
}

Poly expand_den(const std::vector<Factor>& den) {
    Poly out = poly_const(Rational(1));
    for (const auto& f : den) out = poly_mul(out, poly_pow(f.poly, f.power));
    return out;
}

RatFn rf_add(const RatFn& a, const RatFn& b) {
    // Common denominator: union of factors at maximal power.
    std::vector<Factor> lcm = a.den;
    for (const auto& fb : b.den) {
        auto it = std::find_if(lcm.begin(), lcm.end(), [&](const Factor& f) { return same_poly(f.poly, fb.poly); });
        if (it == lcm.end()) lcm.push_back(fb);
        else it->power = std::max(it->power, fb.power);
    }
    const auto cofactor = [&lcm](const std::vector<Factor>& den) {
        Poly out = poly_const(Rational(1));
        for (const auto& f : lcm) {
            int have = 0;
            for (const auto& d : den)
                if (same_poly(d.poly, f.poly)) have = d.power;
            out = poly_mul(out, poly_pow(f.poly, f.power - have));
        }
        return out;
    };
    RatFn out{poly_add(poly_mul(a.num, cofactor(a.den)), poly_mul(b.num, cofactor(b.den))), lcm};
    cancel(out);
    return out;
}

RatFn rf_neg(RatFn a) {
    a.num = poly_scale(a.num, Rational(-1));
    return a;
}

RatFn rf_mul(const RatFn& a, const RatFn& b) {
    RatFn out{poly_mul(a.num, b.num), a.den};
    for (const auto& f : b.den) divide_by(out, f.poly, f.power);
    cancel(out);
    return out;
}

// nullopt when `b` is identically zero.
std::optional<RatFn> rf_div(const RatFn& a, const RatFn& b) {
    if (b.num.empty()) return std::nullopt;
    RatFn out{poly_mul(a.num, expand_den(b.den)), a.den};
    divide_by(out, b.num, 1);
    cancel(out);
    return out;
}

std::optional<RatFn> rf_pow(const RatFn& a, int n) {
    if (n >= 0) {
        RatFn out{poly_pow(a.num, n), a.den};
        for (auto& f : out.den) f.power *= n;
        std::erase_if(out.den, [](const Factor& f) { return f.power == 0; });
        return out;
    }
    auto inv = rf_div(RatFn{poly_const(Rational(1)), {}}, a);
    if (!inv) return std::nullopt;
    return rf_pow(*inv, -n);
}

RatFn rf_const(const Rational& c) { return RatFn{poly_const(c), {}}; }

// ---------------------------------------------------------------------------

class Simplifier {
public:
    Expr run(const Expr& e) { return to_expr(to_ratfn(e)); }

private:
    AtomTable atoms_;

    RatFn atom(const Expr& e) { return RatFn{poly_atom(atoms_.intern(e)), {}}; }

    static const UnaryNode* as_call(const Expr& e, UnaryOp op) {
        const auto* u = std::get_if<UnaryNode>(&e.node().v);
        return (u && u->op == op) ? u : nullptr;
    }

    RatFn to_ratfn(const Expr& e) {
        const auto& v = e.node().v;
        if (const auto* c = std::get_if<ConstantNode>(&v)) return rf_const(c->value);
        if (std::holds_alternative<NamedNode>(v) || std::holds_alternative<VariableNode>(v)) return atom(e);
        if (const auto* u = std::get_if<UnaryNode>(&v)) return unary(*u);

        const auto& b = std::get<BinaryNode>(v);
        if (b.op == BinaryOp::pow) return power(b);
        RatFn l = to_ratfn(b.lhs);
        if (b.op == BinaryOp::div) {
            RatFn q = l;
            if (divide_factored(q, b.rhs, 1)) {
                cancel(q);
                return q;
            }
            return atom(Expr::binary(BinaryOp::div, to_expr(l), Simplifier().run(b.rhs)));
        }
        RatFn r = to_ratfn(b.rhs);
        if (b.op == BinaryOp::add) return rf_add(l, r);
        if (b.op == BinaryOp::sub) return rf_add(l, rf_neg(std::move(r)));
        return rf_mul(l, r);
    }

    // Divides `out` by divisor^k, walking products and integer powers of the
    // divisor so that its factors enter the denominator unexpanded. Returns
    // false when some factor is identically zero.
    bool divide_factored(RatFn& out, const Expr& divisor, int k) {
        const auto& v = divisor.node().v;
        if (const auto* b = std::get_if<BinaryNode>(&v)) {
            if (b->op == BinaryOp::mul) return divide_factored(out, b->lhs, k) && divide_factored(out, b->rhs, k);
            if (b->op == BinaryOp::div) {
                if (!divide_factored(out, b->lhs, k)) return false;
                auto up = rf_pow(to_ratfn(b->rhs), k);
                if (!up) return false;
                out = rf_mul(out, *up);
                return true;
            }
            if (b->op == BinaryOp::pow) {
                const Expr ex = Simplifier().run(b->rhs);
                if (auto n = ex.as_rational(); n && n->is_integer() && n->num() > 0 && n->num() <= 64)
                    return divide_factored(out, b->lhs, k * static_cast<int>(n->num()));
            }
        }
        if (const auto* u = std::get_if<UnaryNode>(&v); u && u->op == UnaryOp::neg) {
            if (k % 2 != 0) out.num = poly_scale(out.num, Rational(-1));
            return divide_factored(out, u->child, k);
        }
        const RatFn r = to_ratfn(divisor);
        if (r.num.empty()) return false;
        out.num = poly_mul(out.num, poly_pow(expand_den(r.den), k));
        divide_by(out, r.num, k);
        return true;
    }

    RatFn unary(const UnaryNode& u) {
        if (u.op == UnaryOp::neg) return rf_neg(to_ratfn(u.child));
        const Expr arg = Simplifier().run(u.child);
        const auto c = arg.as_rational();
        switch (u.op) {
            case UnaryOp::exp:
                if (const auto* inner = as_call(arg, UnaryOp::ln)) return to_ratfn(inner->child);
                if (c && c->is_zero()) return rf_const(Rational(1));
                break;
            case UnaryOp::ln: {
                if (const auto* inner = as_call(arg, UnaryOp::exp)) return to_ratfn(inner->child);
                if (c && c->is_one()) return rf_const(Rational(0));
                const auto* named = std::get_if<NamedNode>(&arg.node().v);
                if (named && named->which == NamedConst::e) return rf_const(Rational(1));
                break;
            }
            case UnaryOp::sin:
                if (c && c->is_zero()) return rf_const(Rational(0));
                break;
            case UnaryOp::cos:
                if (c && c->is_zero()) return rf_const(Rational(1));
                break;
            case UnaryOp::sqrt:
                if (c && !c->is_negative()) {
                    const auto isqrt = [](std::int64_t n) -> std::optional<std::int64_t> {
                        auto r = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(n))));
                        for (auto k = std::max<std::int64_t>(r - 1, 0); k <= r + 1; ++k)
                            if (k * k == n) return k;
                        return std::nullopt;
                    };
                    auto n = isqrt(c->num());
                    auto d = isqrt(c->den());
                    if (n && d) return rf_const(Rational(*n, *d));
                }
                break;
            case UnaryOp::neg: break;
        }
        return atom(Expr::unary(u.op, arg));
    }

    RatFn power(const BinaryNode& b) {
        const Expr ex = Simplifier().run(b.rhs);
        if (auto n = ex.as_rational(); n && n->is_integer() && n->num() < 0 && n->num() >= -64) {
            RatFn out = rf_const(Rational(1));
            if (divide_factored(out, b.lhs, static_cast<int>(-n->num()))) {
                cancel(out);
                return out;
            }
            return atom(Expr::binary(BinaryOp::pow, Simplifier().run(b.lhs), ex));
        }
        if (auto n = ex.as_rational(); n && n->is_integer() && n->num() >= 0 && n->num() <= 64) {
            RatFn base = to_ratfn(b.lhs);
            if (auto r = rf_pow(base, static_cast<int>(n->num()))) return *r;
            return atom(Expr::binary(BinaryOp::pow, to_expr(base), ex));
        }
        const Expr base = Simplifier().run(b.lhs);
        if (base.is_one()) return rf_const(Rational(1));
        return atom(Expr::binary(BinaryOp::pow, base, ex));
    }

    // -----------------------------------------------------------------------
    // Back to an expression tree.

    // Left-nested product c*a1^e1*a2^e2*..., so no parentheses are needed.
    Expr term_expr(const Monomial& m, const Rational& c) const {
        if (m.empty()) return Expr::constant(c);
        Monomial sorted = m;
        std::sort(sorted.begin(), sorted.end(),
                  [this](const auto& a, const auto& b) { return atoms_.display_before(a.first, b.first); });
        std::optional<Expr> out;
        if (!c.is_one() && c != Rational(-1)) out = Expr::constant(c);
        for (const auto& [id, ex] : sorted) {
            Expr f = atoms_.expr(id);
            if (ex != 1) f = Expr::binary(BinaryOp::pow, f, Expr::integer(ex));
            if (!out && c == Rational(-1)) f = Expr::unary(UnaryOp::neg, f);
            out = out ? Expr::binary(BinaryOp::mul, *out, f) : f;
        }
        return *out;
    }

    // Graded order for display: higher degree first, then earlier atoms with
    // larger exponents first.
    bool display_less(const Monomial& a, const Monomial& b) const {
        const int da = degree(a);
        const int db = degree(b);
        if (da != db) return da > db;
        const auto dense = [this](const Monomial& m) {
            Monomial s = m;
            std::sort(s.begin(), s.end(),
                      [this](const auto& p, const auto& q) { return atoms_.display_before(p.first, q.first); });
            return s;
        };
        const Monomial sa = dense(a);
        const Monomial sb = dense(b);
        for (std::size_t i = 0; i < sa.size() && i < sb.size(); ++i) {
            if (sa[i].first != sb[i].first) return atoms_.display_before(sa[i].first, sb[i].first);
            if (sa[i].second != sb[i].second) return sa[i].second > sb[i].second;
        }
        return sa.size() < sb.size();
    }

    Expr poly_expr(const Poly& p) const {
        if (p.empty()) return Expr{};
        std::vector<std::pair<Monomial, Rational>> terms(p.begin(), p.end());
        std::sort(terms.begin(), terms.end(), [this](const auto& a, const auto& b) { return display_less(a.first, b.first); });
        if (terms.front().second.is_negative()) {
            auto pos = std::find_if(terms.begin(), terms.end(), [](const auto& t) { return !t.second.is_negative(); });
            if (pos != terms.end()) std::rotate(terms.begin(), pos, pos + 1);
        }
        Expr out = term_expr(terms[0].first, terms[0].second);
        for (std::size_t i = 1; i < terms.size(); ++i) {
            const auto& [m, c] = terms[i];
            if (c.is_negative()) out = Expr::binary(BinaryOp::sub, out, term_expr(m, -c));
            else out = Expr::binary(BinaryOp::add, out, term_expr(m, c));
        }
        return out;
    }

    Expr to_expr(const RatFn& r) const {
        Expr num = poly_expr(r.num);
        if (r.den.empty()) return num;
        std::optional<Expr> den;
        for (const auto& f : r.den) {
            Expr base = poly_expr(f.poly);
            if (f.power != 1) base = Expr::binary(BinaryOp::pow, base, Expr::integer(f.power));
            den = den ? Expr::binary(BinaryOp::mul, *den, base) : base;
        }
        return Expr::binary(BinaryOp::div, num, *den);
    }
};

}  // namespace

Expr simplify(const Expr& e) {
    try {
        return Simplifier().run(e);
    } catch (const std::overflow_error&) {
        return e;
    } catch (const std::domain_error&) {
        return e;
    }
}

}  // namespace webcurv
