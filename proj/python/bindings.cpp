#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <tuple>

#include "webcurv/plot.hpp"
#include "webcurv/report.hpp"
#include "webcurv/selftest.hpp"

namespace py = pybind11;
using namespace webcurv;

namespace {

using Box = std::tuple<double, double, double, double>;

Rect rect(const Box& b) { return Rect(std::get<0>(b), std::get<1>(b), std::get<2>(b), std::get<3>(b)); }

OdeProblem problem(const std::string& F, const Box& b) { return OdeProblem::parse(F, rect(b)); }

ZeroTestOptions zero_options(std::uint64_t seed) {
    ZeroTestOptions o;
    o.seed = seed;
    return o;
}

}  // namespace

PYBIND11_MODULE(_webcurv, m) {
    m.doc() = "Curvature and equivalence of first-order ODEs of 3-web type";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<UnknownIdentifier>(m, "UnknownIdentifier", PyExc_ValueError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ArithmeticError);
    py::register_exception<NonVanishingViolation>(m, "NonVanishingViolation", PyExc_ValueError);
    py::register_exception<ImageEscapesTarget>(m, "ImageEscapesTarget", PyExc_ValueError);

    py::enum_<Var>(m, "Var").value("x", Var::x).value("y", Var::y).value("alpha", Var::alpha);

    py::class_<Expr>(m, "Expr")
        .def(py::init([](const std::string& text) { return parse(text); }), py::arg("text"))
        .def("__call__", [](const Expr& e, double x, double y, double alpha) { return eval(e, {x, y, alpha}); },
             py::arg("x"), py::arg("y"), py::arg("alpha") = 1.0)
        .def("diff", [](const Expr& e, Var v) { return differentiate(e, v); }, py::arg("var"))
        .def("simplify", [](const Expr& e) { return simplify(e); })
        .def("is_zero_on", [](const Expr& e, const Box& b, std::uint64_t seed) -> py::tuple {
                 const ZeroTestResult r = is_identically_zero(e, rect(b), zero_options(seed));
                 switch (r.verdict) {
                     case ZeroTest::yes: return py::make_tuple("yes", py::none());
                     case ZeroTest::no: return py::make_tuple("no", py::make_tuple(r.witness->x, r.witness->y));
                     default: return py::make_tuple("unknown", py::none());
                 }
             }, py::arg("domain"), py::arg("seed") = 42)
        .def("__str__", [](const Expr& e) { return format(e); })
        .def("__repr__", [](const Expr& e) { return "Expr('" + format(e) + "')"; });

    m.def("_curvature", [](const std::string& F, const Box& b, std::uint64_t seed) {
        const OdeProblem p = problem(F, b);
        build_web(p);
        const CurvatureReport c = curvature(p);
        auto j = to_json(c);
        j["K"] = format(c.K);
        j["phi"] = format(connection_form(p).phi);
        j["verdict"] = to_json(classify_flat(p, zero_options(seed)));
        return j.dump();
    });
    m.def("_classify", [](const std::string& F, const Box& b, std::uint64_t seed) {
        const OdeProblem p = problem(F, b);
        build_web(p);
        return to_json(classify_flat(p, zero_options(seed))).dump();
    });
    m.def("_equivalent", [](const std::string& F1, const Box& b1, const std::string& F2, const Box& b2,
                            std::uint64_t seed) {
        const OdeProblem p1 = problem(F1, b1);
        const OdeProblem p2 = problem(F2, b2);
        build_web(p1);
        build_web(p2);
        return to_json(equivalence_check(p1, p2, zero_options(seed))).dump();
    });
    m.def("_verify_map", [](const std::string& a, const std::string& b, const std::string& F1, const Box& b1,
                            const std::string& F2, const Box& b2, int leaves, double tol, double step) {
        const OdeProblem p1 = problem(F1, b1);
        const OdeProblem p2 = problem(F2, b2);
        const DiffeoMap map{parse(a), parse(b), p1.domain, p2.domain};
        return to_json(verify_diffeo(map, p1, p2, leaves, tol, step)).dump();
    });
    m.def("_log_map_transport", [](int leaves, double tol, double step) {
        return to_json(log_map_transport_check(leaves, tol, step)).dump();
    });

    m.def("web_leaves", [](const std::string& F, const Box& b, int leaves, double step) {
        std::vector<std::tuple<int, std::vector<std::pair<double, double>>>> out;
        for (const Leaf& l : web_leaves(problem(F, b), leaves, step)) out.emplace_back(l.which, l.points);
        return out;
    }, py::arg("F"), py::arg("domain"), py::arg("leaves") = 5, py::arg("step") = 1e-3,
       "Leaves of the three foliations as (family, [(x, y), ...]).");
    m.def("web_svg", [](const std::string& F, const Box& b, int leaves, double step) {
        const OdeProblem p = problem(F, b);
        std::vector<Leaf> ls = web_leaves(p, leaves, step);
        for (Leaf& l : ls) l = decimate(l, 400);
        return render_svg(ls, p.domain, "y' = " + format(p.F));
    }, py::arg("F"), py::arg("domain"), py::arg("leaves") = 5, py::arg("step") = 1e-3);

    m.def("selftest", [](std::uint64_t seed, double step) {
        SelftestOptions o;
        o.seed = seed;
        o.step = step;
        py::list out;
        for (const SuiteResult& s : run_selftest(builtin_corpus(), o)) {
            py::dict d;
            d["name"] = s.name;
            d["measured"] = s.measured;
            d["threshold"] = s.threshold;
            d["passed"] = s.passed;
            d["details"] = s.details;
            out.append(d);
        }
        return out;
    }, py::arg("seed") = 42, py::arg("step") = 1e-3);
}
