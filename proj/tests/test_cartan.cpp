#include <doctest.h>

#include "support.hpp"

using namespace webcurv;
using wt::Rng;

TEST_CASE("tautological coframe") {
    const auto t = tautological_coframe(OdeProblem::parse("1", Rect(0, 1, 0, 1)));
    const auto at = form_eval(t.theta1, {0.3, 0.4, 4});
    CHECK(at[0] == 0.25);
    CHECK(at[1] == 0);
    CHECK(form_eval(t.theta2, {0.3, 0.4, 4})[1] == 0.25);
    CHECK(form_eval(t.theta3, {0.3, 0.4, 4})[2] == 1);
    const auto s = tautological_coframe(OdeProblem::parse("x + y", Rect(0.5, 2, 0.5, 2)));
    const auto v = form_eval(s.theta1, {1, 1, 2});
    CHECK(v[0] == 1);
    CHECK(v[1] == 0);
    CHECK(v[2] == 0);
}

TEST_CASE("connection form examples") {
    CHECK(format(connection_form(OdeProblem::parse("1 - x", Rect(1.1, 4, -3, 3))).phi) ==
          "0 dx + 0 dy + -1/alpha dalpha");
    CHECK(format(connection_form(OdeProblem::parse("x + y", Rect(0.5, 2, 0.5, 2))).phi) ==
          "0 dx + 1/(x + y) dy + -1/alpha dalpha");
    CHECK(format(connection_form(OdeProblem::parse("x*exp(-y)", Rect(0.5, 3, 0.5, 3))).phi) ==
          "0 dx + -1 dy + -1/alpha dalpha");
}

TEST_CASE("structure residual examples") {
    const OdeProblem s = OdeProblem::parse("x + y", Rect(0.5, 2, 0.5, 2));
    CHECK(structure_residual(s, {1, 1, 1.5}).sup_norm() <= 1e-9);
    const OdeProblem one = OdeProblem::parse("1", Rect(-1, 1, -1, 1));
    CHECK(structure_residual(one, {0, 0, 2}).sup_norm() == 0);

    const OneForm phi = connection_form_raw(one).phi + Expr::constant(Rational(1, 10)) * OneForm::dy();
    const StructureResidual r = structure_equations(one, phi).at({0, 0, 1});
    CHECK(r.first[0] == doctest::Approx(0.1));
    CHECK(r.sup_norm() > 1e-3);
}

TEST_CASE("property: structure and curvature identities on random bundle points") {
    Rng rng(31);
    for (const auto& p : wt::ode_corpus()) {
        CAPTURE(format(p.F));
        const StructureEquations eq = structure_equations(p);
        for (int k = 0; k < 100; ++k) {
            const Point q = rng.point(p.domain, 0.1, 10);
            REQUIRE(eq.at(q).sup_norm() <= 1e-9);
            REQUIRE(curvature_identity_residual(p, q) <= 1e-9);
        }
    }
}

TEST_CASE("property: the connection form is unique") {
    Rng rng(32);
    const Expr c = Expr::constant(Rational(1, 10));
    for (const auto& p : wt::ode_corpus()) {
        const OneForm phi = connection_form_raw(p).phi;
        for (const OneForm& delta : {c * OneForm::dx(), c * OneForm::dy(), c * OneForm::dalpha()}) {
            const StructureEquations eq = structure_equations(p, phi + delta);
            double worst = 0;
            for (int k = 0; k < 20; ++k) worst = std::max(worst, eq.at(rng.point(p.domain, 0.1, 10)).sup_norm());
            CHECK(worst > 1e-3);
        }
    }
}

TEST_CASE("curvature closed forms") {
    const CurvatureReport one = curvature(OdeProblem::parse("1", Rect(0, 1, 0, 1)));
    CHECK(format(one.K_base) == "0");
    CHECK(one.gauge_exponent == 2);
    const CurvatureReport s = curvature(OdeProblem::parse("x + y", Rect(0.5, 2, 0.5, 2)));
    CHECK(format(s.K_base) == "-1/(x + y)^3");
    CHECK(eval(s.K, {1, 1, 2}) == doctest::Approx(-0.5));
    CHECK(format(curvature(OdeProblem::parse("x*exp(-y)", Rect(0.5, 3, 0.5, 3))).K_base) == "0");
    CHECK(format(curvature_numerator(parse("x*y"))) != "");
    CHECK(is_identically_zero(curvature_numerator(parse("x*y")), Rect(1, 2, 1, 2)).verdict == ZeroTest::yes);
}

TEST_CASE("curvature identity examples") {
    const OdeProblem s = OdeProblem::parse("x + y", Rect(0.5, 2, 0.5, 2));
    CHECK(curvature_identity_residual(s, {1, 1, 1}) <= 1e-9);
    CHECK(curvature_identity_residual(s, {1, 1, 3}) <= 1e-9);
    const auto dphi = form_eval(d1(connection_form_raw(s).phi), {1, 1, 1});
    CHECK(dphi[0] == doctest::Approx(-0.25));
    CHECK(curvature_identity_residual(OdeProblem::parse("1", Rect(0, 1, 0, 1)), {0.5, 0.5, 7}) == 0);
}

TEST_CASE("property: gauge law") {
    for (const auto& p : wt::ode_corpus()) {
        const CurvatureReport c = curvature(p);
        for (int i = 0; i < 17; ++i)
            for (int j = 0; j < 17; ++j) {
                Point q = p.domain.grid(i, j, 17);
                const double base = eval(c.K, q);
                for (double a : {0.1, 0.5, 2.0, 10.0}) {
                    q.alpha = a;
                    const double k = eval(c.K, q);
                    REQUIRE(std::abs(k - a * a * base) <= 1e-12 * (1 + std::abs(k)));
                }
            }
    }
}

TEST_CASE("property: flat corpus") {
    for (const auto& p : wt::ode_corpus()) {
        CAPTURE(format(p.F));
        const ZeroTest z = is_identically_zero(curvature(p).K_base, p.domain).verdict;
        CHECK(z == (format(p.F) == "x + y" ? ZeroTest::no : ZeroTest::yes));
    }
}
