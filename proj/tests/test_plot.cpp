#include <doctest.h>

#include <regex>

#include "support.hpp"
#include "webcurv/plot.hpp"

using namespace webcurv;

namespace {

std::size_t count(const std::string& s, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++n;
    return n;
}

}  // namespace

TEST_CASE("svg has one polyline per leaf with family classes") {
    const OdeProblem p = OdeProblem::parse("1 - x", Rect(-2, 4, -5, 3));
    const std::string svg = render_svg(web_leaves(p, 11), p.domain, "y' = 1 - x");
    CHECK(count(svg, "<polyline") == 33);
    CHECK(count(svg, "class=\"l1\"") == 11);
    CHECK(count(svg, "class=\"l2\"") == 11);
    CHECK(count(svg, "class=\"l3\"") == 11);
    CHECK(svg.find("scale(1,-1)") != std::string::npos);
    CHECK(svg.find("<title>y' = 1 - x</title>") != std::string::npos);
}

TEST_CASE("svg viewBox covers the domain with a margin") {
    const Rect dom(0, 1, 0, 2);
    const std::string svg = render_svg({}, dom);
    const std::regex vb("viewBox=\"([^ ]+) ([^ ]+) ([^ ]+) ([^\"]+)\"");
    std::smatch m;
    REQUIRE(std::regex_search(svg, m, vb));
    CHECK(std::stod(m[1]) == doctest::Approx(-0.05));
    CHECK(std::stod(m[2]) == doctest::Approx(-2.1));
    CHECK(std::stod(m[3]) == doctest::Approx(1.1));
    CHECK(std::stod(m[4]) == doctest::Approx(2.2));
}

TEST_CASE("slope-one lines for F = 1") {
    const OdeProblem p = OdeProblem::parse("1", Rect(0, 1, 0, 1));
    for (const Leaf& l : leaf_family(p, 3, 3))
        for (const auto& [x, y] : l.points)
            CHECK(y - x == doctest::Approx(l.points.front().second - l.points.front().first));
}

TEST_CASE("titles are escaped") {
    const std::string svg = render_svg({}, Rect(0, 1, 0, 1), "a<b & c");
    CHECK(svg.find("a&lt;b &amp; c") != std::string::npos);
}

TEST_CASE("decimate keeps endpoints") {
    Leaf l{3, {}, false};
    for (int i = 0; i <= 1000; ++i) l.points.emplace_back(i * 1e-3, 0);
    const Leaf d = decimate(l, 50);
    CHECK(d.points.size() <= 52);
    CHECK(d.points.front() == l.points.front());
    CHECK(d.points.back() == l.points.back());
    CHECK(decimate(l, 5000).points.size() == l.points.size());
}
