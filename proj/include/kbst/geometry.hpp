#pragma once

#include <optional>
#include <vector>

namespace kbst {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

struct Circle {
    Point center;
    double radius = 0.0;
};

double dist(const Point& p, const Point& q);

// Tolerance used by the geometric comparisons: 1e-9 times the bounding box
// diagonal of the points involved, floored at 1e-12.
double geom_eps(const std::vector<Point>& points);

// Circle through three points. Empty when the points are (near) collinear;
// callers fall back to pair diameters in that case.
std::optional<Circle> circumcircle(const Point& a, const Point& b, const Point& c);

// Smallest circle containing all points. Throws std::invalid_argument on
// empty input. Randomized incremental construction with a fixed seed, so the
// result is deterministic.
Circle smallest_enclosing_circle(const std::vector<Point>& points);

// A point s with min_{p in g} dist(s,p) <= lambda + eps for every group g,
// or nothing when no such point exists. The search is restricted to the
// group points themselves plus pairwise intersections of radius-lambda
// circles, which suffices for existence. eps < 0 selects geom_eps of all
// group points. first_feasible returns the first witness instead of the one
// minimizing the worst group distance; the bottleneck search uses it since
// it only needs existence.
std::optional<Point> cover_point(const std::vector<std::vector<Point>>& groups,
                                 double lambda, double eps = -1.0,
                                 bool first_feasible = false);

}  // namespace kbst
