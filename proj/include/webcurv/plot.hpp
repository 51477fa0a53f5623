#ifndef WEBCURV_PLOT_HPP
#define WEBCURV_PLOT_HPP

#include <string>
#include <vector>

#include "webcurv/web.hpp"

namespace webcurv {

/// Renders leaves as an SVG document: one <polyline class="lN"> per leaf.
/// Vertices are written in plot coordinates inside a group that flips the
/// y axis, so they can be read back as (x, y) pairs directly. The viewBox
/// covers `domain` plus a 5% margin.
std::string render_svg(const std::vector<Leaf>& leaves, const Rect& domain, const std::string& title = {});

/// Keeps every k-th vertex (and the last) so a leaf has roughly `max_points`.
Leaf decimate(const Leaf& leaf, std::size_t max_points);

/// The three leaf families of y' = F over its domain.
std::vector<Leaf> web_leaves(const OdeProblem& p, int leaves_per_family, double step = 1e-3);

}  // namespace webcurv

#endif
