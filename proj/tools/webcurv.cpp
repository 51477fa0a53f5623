#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "webcurv/plot.hpp"
#include "webcurv/report.hpp"
#include "webcurv/selftest.hpp"

using nlohmann::json;
using namespace webcurv;

namespace {

struct RunConfig {
    std::string command;
    std::string ode;
    std::string ode2;
    std::string domain = "0.5,2,0.5,2";
    std::string domain2;
    std::string map;
    std::string corpus;
    std::string output;
    std::string format;
    int leaves = 5;
    int grid = 17;
    double step = 1e-3;
    double tol = 1e-4;
    std::uint64_t seed = 42;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string part; std::getline(ss, part, sep);) out.push_back(part);
    return out;
}

Rect parse_rect(const std::string& text) {
    const auto parts = split(text, ',');
    if (parts.size() != 4) throw UsageError("domain must be xmin,xmax,ymin,ymax: " + text);
    double v[4];
    for (int i = 0; i < 4; ++i) {
        std::size_t used = 0;
        try {
            v[i] = std::stod(parts[i], &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != parts[i].size() || !std::isfinite(v[i]))
            throw UsageError("bad number in domain: " + parts[i]);
    }
    return Rect(v[0], v[1], v[2], v[3]);
}

OdeProblem first_problem(const RunConfig& c) {
    if (c.ode.empty()) throw UsageError("missing -F/--ode");
    return OdeProblem::parse(c.ode, parse_rect(c.domain));
}

OdeProblem second_problem(const RunConfig& c) {
    if (c.ode2.empty()) throw UsageError("missing --ode2");
    return OdeProblem::parse(c.ode2, parse_rect(c.domain2.empty() ? c.domain : c.domain2));
}

ZeroTestOptions zero_options(const RunConfig& c) {
    ZeroTestOptions o;
    o.seed = c.seed;
    o.grid = c.grid;
    return o;
}

void flatten(const json& j, const std::string& prefix, std::ostream& os) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, os);
    } else if (j.is_array() && std::any_of(j.begin(), j.end(), [](const json& e) { return e.is_structured(); })) {
        for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), os);
    } else if (j.is_array()) {
        os << prefix << ":";
        for (const auto& e : j) os << ' ' << (e.is_string() ? e.get<std::string>() : e.dump());
        os << '\n';
    } else {
        os << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
    }
}

void emit(const RunConfig& c, const std::string& text) {
    if (c.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(c.output);
    if (!out) throw std::runtime_error("cannot open " + c.output);
    out << text;
    if (!out) throw std::runtime_error("cannot write " + c.output);
}

void emit(const RunConfig& c, json j) {
    j["seed"] = c.seed;
    if (c.format == "text") {
        std::ostringstream os;
        flatten(j, "", os);
        emit(c, os.str());
    } else if (c.format.empty() || c.format == "json") {
        emit(c, j.dump(2) + "\n");
    } else {
        throw UsageError("format " + c.format + " is not available for " + c.command);
    }
}

int cmd_curvature(const RunConfig& c) {
    const OdeProblem p = first_problem(c);
    build_web(p);
    json j = to_json(curvature(p));
    j["K"] = format(curvature(p).K);
    j["phi"] = format(connection_form(p).phi);
    j["verdict"] = to_json(classify_flat(p, zero_options(c)));
    emit(c, j);
    return 0;
}

int cmd_classify(const RunConfig& c) {
    const OdeProblem p = first_problem(c);
    build_web(p);
    emit(c, json{{"F", format(p.F)}, {"verdict", to_json(classify_flat(p, zero_options(c)))}});
    return 0;
}

int cmd_equivalent(const RunConfig& c) {
    const OdeProblem p1 = first_problem(c);
    const OdeProblem p2 = second_problem(c);
    build_web(p1);
    build_web(p2);
    const EquivalenceVerdict v = equivalence_check(p1, p2, zero_options(c));
    json j = to_json(v);
    j["F"] = format(p1.F);
    j["F2"] = format(p2.F);
    emit(c, j);
    return v.tag == Equivalence::equivalent_flat ? 0 : 1;
}

int cmd_web_plot(const RunConfig& c) {
    const OdeProblem p = first_problem(c);
    if (c.leaves < 1) throw UsageError("--leaves must be positive");
    std::vector<Leaf> leaves = web_leaves(p, c.leaves, c.step);
    if (c.format == "text") {
        emit(c, export_leaves(leaves));
    } else if (c.format.empty() || c.format == "svg") {
        for (Leaf& l : leaves) l = decimate(l, 400);
        emit(c, render_svg(leaves, p.domain, "y' = " + format(p.F)));
    } else {
        throw UsageError("web-plot writes svg or text");
    }
    return 0;
}

int cmd_verify_map(const RunConfig& c) {
    const OdeProblem p1 = first_problem(c);
    const OdeProblem p2 = second_problem(c);
    const auto parts = split(c.map, ';');
    if (parts.size() != 2) throw UsageError("--map must be \"a;b\"");
    const DiffeoMap m{parse(parts[0]), parse(parts[1]), p1.domain, p2.domain};
    if (c.leaves < 2) throw UsageError("--leaves must be at least 2");
    const DiffeoCheckReport r = verify_diffeo(m, p1, p2, c.leaves, c.tol, c.step);
    json j = to_json(r);
    j["map"] = json::array({format(m.a), format(m.b)});
    emit(c, j);
    return r.pass ? 0 : 1;
}

int cmd_check_structure(const RunConfig& c) {
    const OdeProblem p = first_problem(c);
    build_web(p);
    const StructureEquations eq = structure_equations(p);
    std::mt19937_64 rng(c.seed);
    std::uniform_real_distribution<double> u(0.02, 0.98);
    std::uniform_real_distribution<double> ua(0.1, 10.0);
    double structure = 0.0;
    double identity = 0.0;
    const int points = 100;
    for (int k = 0; k < points; ++k) {
        Point q{p.domain.x_min + u(rng) * p.domain.width(), p.domain.y_min + u(rng) * p.domain.height(), 0};
        q.alpha = ua(rng);
        structure = std::max(structure, eq.at(q).sup_norm());
        identity = std::max(identity, curvature_identity_residual(p, q));
    }
    const double threshold = 1e-9;
    const bool ok = structure <= threshold && identity <= threshold;
    emit(c, json{{"F", format(p.F)},
                 {"phi", format(connection_form(p).phi)},
                 {"points", points},
                 {"structure_residual", structure},
                 {"curvature_identity_residual", identity},
                 {"threshold", threshold},
                 {"verdict", ok ? "pass" : "fail"}});
    return ok ? 0 : 1;
}

int cmd_selftest(const RunConfig& c) {
    std::vector<OdeProblem> corpus;
    if (c.corpus.empty()) {
        corpus = builtin_corpus();
    } else {
        const Rect dom = parse_rect(c.domain);
        for (const auto& f : split(c.corpus, ';')) corpus.push_back(OdeProblem::parse(f, dom));
    }
    SelftestOptions o;
    o.seed = c.seed;
    o.step = c.step;
    const auto suites = run_selftest(corpus, o);
    bool all = true;
    json arr = json::array();
    for (const auto& s : suites) {
        all = all && s.passed;
        arr.push_back({{"name", s.name},
                       {"measured", s.measured},
                       {"threshold", s.threshold},
                       {"passed", s.passed},
                       {"details", s.details}});
    }
    if (c.format == "json") {
        emit(c, json{{"suites", arr}, {"verdict", all ? "pass" : "fail"}});
    } else if (c.format.empty() || c.format == "text") {
        std::ostringstream os;
        os << "seed " << c.seed << '\n';
        for (const auto& s : suites) {
            char head[160];
            std::snprintf(head, sizeof head, "%-4s %-20s measured %.3g  threshold %.3g\n", s.passed ? "ok" : "FAIL",
                          s.name.c_str(), s.measured, s.threshold);
            os << head;
            for (const auto& d : s.details) os << "     " << d << '\n';
        }
        os << (all ? "all suites passed" : "some suites failed") << '\n';
        emit(c, os.str());
    } else {
        throw UsageError("selftest writes text or json");
    }
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Curvature and equivalence of first-order ODEs of 3-web type"};
    app.require_subcommand(1);
    RunConfig c;

    const auto common = [&](CLI::App* sub, bool two) {
        sub->add_option("-F,--ode", c.ode, "right-hand side F(x, y)");
        sub->add_option("--domain", c.domain, "xmin,xmax,ymin,ymax")->capture_default_str();
        if (two) {
            sub->add_option("--ode2", c.ode2, "second right-hand side");
            sub->add_option("--domain2", c.domain2, "domain of the second ODE (defaults to --domain)");
        }
        sub->add_option("--grid", c.grid, "zero-test grid size")->check(CLI::Range(3, 1000))->capture_default_str();
        sub->add_option("--seed", c.seed, "sampling seed")->capture_default_str();
        sub->add_option("--step", c.step, "RK4 step")->check(CLI::PositiveNumber)->capture_default_str();
        sub->add_option("--tol", c.tol, "leaf deviation tolerance")->check(CLI::PositiveNumber)->capture_default_str();
        sub->add_option("--leaves", c.leaves, "leaves per family")->capture_default_str();
        sub->add_option("-o,--output", c.output, "output path (stdout when omitted)");
        sub->add_option("--format", c.format, "json|text|svg")->check(CLI::IsMember({"json", "text", "svg"}));
    };

    common(app.add_subcommand("curvature", "connection form and Blaschke-Chern curvature"), false);
    common(app.add_subcommand("classify", "flat / non-flat verdict"), false);
    common(app.add_subcommand("equivalent", "compare two ODEs through their curvature"), true);
    common(app.add_subcommand("web-plot", "SVG of the three foliations"), false);
    auto* verify = app.add_subcommand("verify-map", "check that a map carries one web onto another");
    common(verify, true);
    verify->add_option("--map", c.map, "\"a(x,y);b(x,y)\"")->required();
    common(app.add_subcommand("check-structure", "numeric check of the structure equations"), false);
    auto* self = app.add_subcommand("selftest", "invariant suites over a corpus");
    common(self, false);
    self->add_option("--corpus", c.corpus, "';'-separated right-hand sides, all on --domain");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    c.command = app.get_subcommands().front()->get_name();

    try {
        if (c.command == "curvature") return cmd_curvature(c);
        if (c.command == "classify") return cmd_classify(c);
        if (c.command == "equivalent") return cmd_equivalent(c);
        if (c.command == "web-plot") return cmd_web_plot(c);
        if (c.command == "verify-map") return cmd_verify_map(c);
        if (c.command == "check-structure") return cmd_check_structure(c);
        if (c.command == "selftest") return cmd_selftest(c);
    } catch (const ParseError& e) {
        std::cerr << "webcurv: parse error at offset " << e.offset() << ": " << e.what() << '\n';
    } catch (const NonVanishingViolation& e) {
        std::cerr << "webcurv: F vanishes at " << to_string(e.witness()) << ": " << e.what() << '\n';
    } catch (const std::exception& e) {
        std::cerr << "webcurv: " << e.what() << '\n';
    }
    return 2;
}
