#ifndef WEBCURV_GEOMETRY_HPP
#define WEBCURV_GEOMETRY_HPP

#include <stdexcept>
#include <string>

namespace webcurv {

/// A point of the bundle chart (x, y, alpha). Base-plane points use alpha = 1.
struct Point {
    double x = 0.0;
    double y = 0.0;
    double alpha = 1.0;

    friend bool operator==(const Point&, const Point&) = default;
};

/// Axis-aligned open rectangle in the (x, y) plane.
struct Rect {
    double x_min = 0.0;
    double x_max = 1.0;
    double y_min = 0.0;
    double y_max = 1.0;

    Rect() = default;
    Rect(double xmin, double xmax, double ymin, double ymax)
        : x_min(xmin), x_max(xmax), y_min(ymin), y_max(ymax) {
        if (!(x_min < x_max) || !(y_min < y_max))
            throw std::invalid_argument("degenerate rectangle");
    }

    double width() const { return x_max - x_min; }
    double height() const { return y_max - y_min; }

    bool contains_closed(double x, double y) const {
        return x >= x_min && x <= x_max && y >= y_min && y <= y_max;
    }
    bool on_boundary(double x, double y) const {
        return x == x_min || x == x_max || y == y_min || y == y_max;
    }

    /// Vertex (i, j) of an n x n grid spanning the closed rectangle.
    Point grid(int i, int j, int n) const {
        const double fx = static_cast<double>(i) / (n - 1);
        const double fy = static_cast<double>(j) / (n - 1);
        return {i == n - 1 ? x_max : x_min + fx * width(), j == n - 1 ? y_max : y_min + fy * height(), 1.0};
    }

    friend bool operator==(const Rect&, const Rect&) = default;
};

std::string to_string(const Point& p);
std::string to_string(const Rect& r);

}  // namespace webcurv

#endif
