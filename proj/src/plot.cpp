#include <cstdio>

#include "webcurv/plot.hpp"

namespace webcurv {

namespace {

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

std::string render_svg(const std::vector<Leaf>& leaves, const Rect& domain, const std::string& title) {
    const double mx = 0.05 * domain.width();
    const double my = 0.05 * domain.height();
    const double vw = domain.width() + 2 * mx;
    const double vh = domain.height() + 2 * my;
    const double px_w = 640.0;
    const double px_h = px_w * vh / vw;

    char buf[256];
    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    std::snprintf(buf, sizeof buf,
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" "
                  "viewBox=\"%.17g %.17g %.17g %.17g\">\n",
                  px_w, px_h, domain.x_min - mx, -(domain.y_max + my), vw, vh);
    out += buf;
    if (!title.empty()) out += "  <title>" + escape(title) + "</title>\n";
    out +=
        "  <style>\n"
        "    polyline { fill: none; stroke-width: 1.2; vector-effect: non-scaling-stroke; }\n"
        "    .l1 { stroke: #1f77b4; }\n"
        "    .l2 { stroke: #2ca02c; }\n"
        "    .l3 { stroke: #d62728; }\n"
        "  </style>\n";
    std::snprintf(buf, sizeof buf,
                  "  <rect x=\"%.17g\" y=\"%.17g\" width=\"%.17g\" height=\"%.17g\" fill=\"none\" stroke=\"#999\" "
                  "stroke-width=\"0.5\" vector-effect=\"non-scaling-stroke\"/>\n",
                  domain.x_min, -domain.y_max, domain.width(), domain.height());
    out += buf;
    out += "  <g transform=\"scale(1,-1)\">\n";
    for (const Leaf& leaf : leaves) {
        std::snprintf(buf, sizeof buf, "    <polyline class=\"l%d\" points=\"", leaf.which);
        out += buf;
        for (std::size_t i = 0; i < leaf.points.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%s%.17g,%.17g", i ? " " : "", leaf.points[i].first, leaf.points[i].second);
            out += buf;
        }
        out += "\"/>\n";
    }
    out += "  </g>\n</svg>\n";
    return out;
}

Leaf decimate(const Leaf& leaf, std::size_t max_points) {
    if (max_points < 2 || leaf.points.size() <= max_points) return leaf;
    const std::size_t stride = (leaf.points.size() + max_points - 2) / (max_points - 1);
    Leaf out{leaf.which, {}, leaf.clipped};
    for (std::size_t i = 0; i < leaf.points.size(); i += stride) out.points.push_back(leaf.points[i]);
    if (out.points.back() != leaf.points.back()) out.points.push_back(leaf.points.back());
    return out;
}

std::vector<Leaf> web_leaves(const OdeProblem& p, int leaves_per_family, double step) {
    std::vector<Leaf> all;
    for (int which = 1; which <= 3; ++which) {
        auto fam = leaf_family(p, which, leaves_per_family, step);
        all.insert(all.end(), fam.begin(), fam.end());
    }
    return all;
}

}  // namespace webcurv
