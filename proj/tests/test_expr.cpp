#include <doctest.h>

#include <limits>

#include "support.hpp"

using namespace webcurv;
using wt::Rng;

namespace {

const Expr X = Expr::variable(Var::x);
const Expr Y = Expr::variable(Var::y);

bool is_binary(const Expr& e, BinaryOp op) {
    const auto* b = std::get_if<BinaryNode>(&e.node().v);
    return b && b->op == op;
}

bool is_var(const Expr& e, Var v) {
    const auto* n = std::get_if<VariableNode>(&e.node().v);
    return n && n->which == v;
}

double at(const std::string& src, double x, double y, double a = 1.0) { return eval(parse(src), {x, y, a}); }

}  // namespace

TEST_CASE("rational arithmetic stays reduced") {
    CHECK(Rational(6, -4).str() == "-3/2");
    CHECK(Rational(0, 5).str() == "0");
    CHECK((Rational(1, 3) + Rational(1, 6)).str() == "1/2");
    CHECK((Rational(2, 3) * Rational(3, 2)).is_one());
    CHECK((Rational(1, 2) / Rational(-1, 4)).str() == "-2");
    CHECK(pow(Rational(2, 3), -2).str() == "9/4");
    CHECK(Rational::from_decimal("0.125") == Rational(1, 8));
    CHECK(Rational::from_decimal("12") == Rational(12));
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
    CHECK_THROWS_AS(Rational(std::numeric_limits<std::int64_t>::max()) + Rational(1), std::overflow_error);
}

TEST_CASE("parse builds the literal tree") {
    const Expr s = parse("x + y");
    REQUIRE(is_binary(s, BinaryOp::add));
    const auto& add = std::get<BinaryNode>(s.node().v);
    CHECK(is_var(add.lhs, Var::x));
    CHECK(is_var(add.rhs, Var::y));

    const Expr m = parse("x*exp(-y)");
    REQUIRE(is_binary(m, BinaryOp::mul));
    const auto& mul = std::get<BinaryNode>(m.node().v);
    const auto* ex = std::get_if<UnaryNode>(&mul.rhs.node().v);
    REQUIRE(ex);
    CHECK(ex->op == UnaryOp::exp);
    const auto* neg = std::get_if<UnaryNode>(&ex->child.node().v);
    REQUIRE(neg);
    CHECK(neg->op == UnaryOp::neg);
    CHECK(is_var(neg->child, Var::y));

    const Expr d = parse("1 - x");
    REQUIRE(is_binary(d, BinaryOp::sub));
    CHECK(std::get<BinaryNode>(d.node().v).lhs.as_rational() == Rational(1));
}

TEST_CASE("precedence and associativity") {
    CHECK(at("2^3^2", 0, 0) == doctest::Approx(512));
    CHECK(at("-2^2", 0, 0) == doctest::Approx(-4));
    CHECK(at("2^-1", 0, 0) == doctest::Approx(0.5));
    CHECK(at("8/4/2", 0, 0) == doctest::Approx(1));
    CHECK(at("1 - 2 - 3", 0, 0) == doctest::Approx(-4));
    CHECK(at("2*x^2", 3, 0) == doctest::Approx(18));
    CHECK(at("--x", 3, 0) == doctest::Approx(3));
    CHECK(at("e", 0, 0) == doctest::Approx(std::exp(1.0)));
    CHECK(at("pi*alpha", 0, 0, 2) == doctest::Approx(2 * M_PI));
    CHECK(at("0.25*4", 0, 0) == 1);
}

TEST_CASE("parse errors carry position and expectations") {
    try {
        parse("x + ");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 4);
        CHECK_FALSE(e.expected().empty());
    }
    CHECK_THROWS_AS(parse("(x + y"), ParseError);
    CHECK_THROWS_AS(parse("x y"), ParseError);
    CHECK_THROWS_AS(parse(""), ParseError);
    CHECK_THROWS_AS(parse("sin x"), ParseError);
    try {
        parse("x + z");
        FAIL("expected an unknown identifier");
    } catch (const UnknownIdentifier& e) {
        CHECK(e.name() == "z");
        CHECK(e.offset() == 4);
    }
    CHECK_THROWS_AS(parse("xy"), UnknownIdentifier);
}

TEST_CASE("eval examples and domain errors") {
    CHECK(at("x + y", 1, 1) == 2);
    CHECK(at("x*exp(-y)", 1, 0) == 1);
    CHECK_THROWS_AS(at("1/x", 0, 0), DomainError);
    CHECK_THROWS_AS(at("ln(x)", -1, 0), DomainError);
    CHECK_THROWS_AS(at("ln(x)", 0, 0), DomainError);
    CHECK_THROWS_AS(at("sqrt(x)", -1, 0), DomainError);
    CHECK_THROWS_AS(at("x^(1/2)", -1, 0), DomainError);
    CHECK_THROWS_AS(at("x^-1", 0, 0), DomainError);
    CHECK_THROWS_AS(at("exp(exp(x))", 10, 0), DomainError);
    CHECK(at("x^3", -2, 0) == -8);
    try {
        at("1 + 1/x", 0, 2);
    } catch (const DomainError& e) {
        CHECK(e.subexpr() == "1/x");
        CHECK(e.at() == Point{0, 2, 1});
    }
}

TEST_CASE("differentiate examples") {
    CHECK(format(differentiate(parse("x + y"), Var::y)) == "1");
    CHECK(format(differentiate(parse("1 - x"), Var::x)) == "-1");
    const Expr d = differentiate(parse("x*exp(-y)"), Var::y);
    CHECK(eval(d, {1, 1, 1}) == doctest::Approx(-std::exp(-1.0)).epsilon(1e-14));
    CHECK(std::abs(eval(d, {1, 1, 1}) - central_difference(parse("x*exp(-y)"), Var::y, {1, 1, 1})) < 1e-9);
    CHECK(same(simplify(d), simplify(parse("-x*exp(-y)"))));
    CHECK(differentiate(parse("x*y"), Var::alpha).is_zero());
    CHECK(format(differentiate(parse("x^3"), Var::x)) == "3*x^2");
}

TEST_CASE("property: derivatives agree with central differences on the corpus") {
    Rng rng(11);
    for (const auto& src : wt::expr_corpus()) {
        CAPTURE(src);
        const Expr e = parse(src);
        for (Var v : {Var::x, Var::y, Var::alpha}) {
            const Expr de = differentiate(e, v);
            for (int k = 0; k < 100; ++k) {
                const Point p = rng.point(wt::base_box());
                const double exact = eval(de, p);
                REQUIRE(wt::rel_err(exact, central_difference(e, v, p)) <= 1e-6);
            }
        }
    }
}

TEST_CASE("property: derivatives of random expressions agree with central differences") {
    Rng rng(12);
    for (int n = 0; n < 300; ++n) {
        const Expr e = wt::random_expr(rng, 4);
        CAPTURE(format(e));
        for (Var v : {Var::x, Var::y, Var::alpha}) {
            const Expr de = differentiate(e, v);
            for (int k = 0; k < 5; ++k) {
                const Point p = rng.point(wt::base_box());
                const double exact = eval(de, p);
                const double scale = 1.0 + std::abs(exact) + 1e-4 * std::abs(eval(e, p));
                REQUIRE(std::abs(exact - central_difference(e, v, p)) <= 1e-6 * scale);
            }
        }
    }
}

TEST_CASE("property: mixed partials commute") {
    Rng rng(13);
    for (const auto& src : wt::expr_corpus()) {
        CAPTURE(src);
        const Expr e = parse(src);
        const Expr xy = differentiate(differentiate(e, Var::x), Var::y);
        const Expr yx = differentiate(differentiate(e, Var::y), Var::x);
        for (int k = 0; k < 50; ++k) {
            const Point p = rng.point(wt::base_box());
            const double a = eval(xy, p);
            REQUIRE(std::abs(a - eval(yx, p)) <= 1e-8 * (1.0 + std::abs(a)));
        }
    }
}

TEST_CASE("simplify examples") {
    CHECK(format(simplify(parse("x*y*1 - y*x"))) == "0");
    CHECK(format(simplify(parse("0 + x"))) == "x");
    CHECK(format(simplify(parse("exp(ln(x))"))) == "x");
    CHECK(format(simplify(parse("x - x"))) == "0");
    CHECK(format(simplify(parse("1/(1 - x) + 1/(x - 1)"))) == "0");
    CHECK(format(simplify(parse("x/y*y"))) == "x");
    CHECK(format(simplify(parse("(x + y)*(x - y)"))) == "x^2 - y^2");
    CHECK(format(simplify(parse("2*x + 3*x"))) == "5*x");
    CHECK(format(simplify(parse("(x^2 - 1)/(x - 1)"))) == "x + 1");
    CHECK(format(simplify(parse("-1/(x + y)^3"))) == "-1/(x + y)^3");
    CHECK(format(simplify(parse("exp(0) + ln(1) + sin(0) + cos(0)"))) == "2");
    CHECK(format(simplify(parse("sqrt(9/4)"))) == "3/2");
}

TEST_CASE("property: simplify preserves value") {
    Rng rng(14);
    const auto check = [&](const Expr& e) {
        const Expr s = simplify(e);
        CAPTURE(format(e));
        CAPTURE(format(s));
        for (int k = 0; k < 10; ++k) {
            const Point p = rng.point(wt::base_box());
            double a = 0, b = 0;
            try {
                a = eval(e, p);
                b = eval(s, p);
            } catch (const DomainError&) {
                continue;
            }
            REQUIRE(std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)}));
        }
    };
    for (const auto& src : wt::expr_corpus()) check(parse(src));
    for (int n = 0; n < 300; ++n) check(wt::random_expr(rng, 3));
}

TEST_CASE("simplify is idempotent on the corpus") {
    for (const auto& src : wt::expr_corpus()) {
        CAPTURE(src);
        const Expr s = simplify(parse(src));
        CHECK(format(simplify(s)) == format(s));
    }
}

TEST_CASE("format examples") {
    CHECK(format(Expr::binary(BinaryOp::add, X, Y)) == "x + y");
    CHECK(format(Expr::constant(Rational(3, 2))) == "3/2");
    CHECK(format(parse("x - (y - 1)")) == "x - (y - 1)");
    CHECK(format(parse("(x*y)^2")) == "(x*y)^2");
    CHECK(format(parse("(-x)^2")) == "(-x)^2");
    CHECK(format(parse("-x^2")) == "-x^2");
    CHECK(format(parse("x/(y*alpha)")) == "x/(y*alpha)");
    CHECK(format(parse("2^(1/2)")) == "2^(1/2)");
    CHECK(format(parse("x^-1")) == "x^-1");
}

TEST_CASE("property: parse of format is the identity") {
    Rng rng(15);
    const auto check = [&](const Expr& e) {
        const std::string text = format(e);
        CAPTURE(text);
        const Expr back = parse(text);
        CHECK(format(back) == text);
        for (int k = 0; k < 5; ++k) {
            const Point p = rng.point(wt::base_box());
            const double a = eval(e, p);
            REQUIRE(std::abs(a - eval(back, p)) <= 1e-12 * (1.0 + std::abs(a)));
        }
    };
    for (const auto& src : wt::expr_corpus()) {
        check(parse(src));
        check(simplify(parse(src)));
    }
    for (int n = 0; n < 300; ++n) check(wt::random_expr(rng, 4));
}

TEST_CASE("zero test verdicts") {
    const Rect box(1, 2, 1, 2);
    CHECK(is_identically_zero(parse("x - x"), Rect(-5, 5, -5, 5)).verdict == ZeroTest::yes);

    const auto num = [](const char* f) {
        const Expr F = parse(f);
        return F * differentiate(differentiate(F, Var::x), Var::y) -
               differentiate(F, Var::x) * differentiate(F, Var::y);
    };
    CHECK(is_identically_zero(num("x*y"), box).verdict == ZeroTest::yes);
    const ZeroTestResult r = is_identically_zero(num("x + y"), box);
    REQUIRE(r.verdict == ZeroTest::no);
    REQUIRE(r.witness);
    CHECK(r.witness->x == 1);
    CHECK(r.witness->y == 1);
    CHECK(r.witness_value == -1);

    // sin^2 + cos^2 - 1 is not rewritten symbolically, so it is decided by sampling.
    const ZeroTestResult trig = is_identically_zero(parse("sin(x)^2 + cos(x)^2 - 1"), box);
    CHECK(trig.verdict == ZeroTest::yes);
    CHECK(trig.samples > 0);

    // Undefined at every interior point: no witness and nothing proven.
    CHECK(is_identically_zero(parse("ln(-x*x - 1)"), box).verdict == ZeroTest::unknown);
    // Undefined only on the boundary: ignored.
    CHECK(is_identically_zero(parse("(x - x)/(x - 1)"), box).verdict == ZeroTest::yes);
}

TEST_CASE("zero test is deterministic for a seed") {
    const Expr e = parse("sin(1000*x*y) - sin(1000*y*x) + (x - 1.37)*(y - 1.91)/1000");
    const Rect box(1, 2, 1, 2);
    const ZeroTestResult a = is_identically_zero(e, box);
    const ZeroTestResult b = is_identically_zero(e, box);
    CHECK(a.verdict == b.verdict);
    CHECK(a.samples == b.samples);
}
