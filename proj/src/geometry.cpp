#include "kbst/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "kbst/rng.hpp"

namespace kbst {

double dist(const Point& p, const Point& q) {
    const double dx = p.x - q.x;
    const double dy = p.y - q.y;
    return std::sqrt(dx * dx + dy * dy);
}

double geom_eps(const std::vector<Point>& points) {
    if (points.empty()) return 1e-12;
    double xmin = points[0].x, xmax = points[0].x;
    double ymin = points[0].y, ymax = points[0].y;
    for (const Point& p : points) {
        xmin = std::min(xmin, p.x);
        xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, p.y);
        ymax = std::max(ymax, p.y);
    }
    const double diag = std::hypot(xmax - xmin, ymax - ymin);
    return std::max(1e-9 * diag, 1e-12);
}

std::optional<Circle> circumcircle(const Point& a, const Point& b, const Point& c) {
    const double diag = std::max({std::abs(a.x - b.x), std::abs(a.y - b.y),
                                  std::abs(a.x - c.x), std::abs(a.y - c.y),
                                  std::abs(b.x - c.x), std::abs(b.y - c.y)});
    const double area2 = std::abs((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x));
    if (area2 <= 1e-9 * diag * diag || diag == 0.0) return std::nullopt;

    const double d = 2.0 * (a.x * (b.y - c.y) + b.x * (c.y - a.y) + c.x * (a.y - b.y));
    const double na = a.x * a.x + a.y * a.y;
    const double nb = b.x * b.x + b.y * b.y;
    const double nc = c.x * c.x + c.y * c.y;
    Circle out;
    out.center.x = (na * (b.y - c.y) + nb * (c.y - a.y) + nc * (a.y - b.y)) / d;
    out.center.y = (na * (c.x - b.x) + nb * (a.x - c.x) + nc * (b.x - a.x)) / d;
    out.radius = dist(out.center, a);
    return out;
}

namespace {

bool in_circle(const Circle& c, const Point& p, double eps) {
    return dist(c.center, p) <= c.radius + eps;
}

Circle circle_two(const Point& a, const Point& b) {
    Circle c;
    c.center = Point{(a.x + b.x) / 2.0, (a.y + b.y) / 2.0};
    c.radius = dist(a, b) / 2.0;
    return c;
}

// Widest pair diameter; used when the triple is collinear.
Circle widest_pair(const Point& a, const Point& b, const Point& c) {
    Circle best = circle_two(a, b);
    Circle cand = circle_two(a, c);
    if (cand.radius > best.radius) best = cand;
    cand = circle_two(b, c);
    if (cand.radius > best.radius) best = cand;
    return best;
}

Circle circle_three(const Point& a, const Point& b, const Point& c) {
    if (auto cc = circumcircle(a, b, c)) return *cc;
    return widest_pair(a, b, c);
}

Circle sec_incremental(const std::vector<Point>& pts, double eps) {
    Circle c{pts[0], 0.0};
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (in_circle(c, pts[i], eps)) continue;
        c = Circle{pts[i], 0.0};
        for (std::size_t j = 0; j < i; ++j) {
            if (in_circle(c, pts[j], eps)) continue;
            c = circle_two(pts[i], pts[j]);
            for (std::size_t l = 0; l < j; ++l) {
                if (in_circle(c, pts[l], eps)) continue;
                c = circle_three(pts[i], pts[j], pts[l]);
            }
        }
    }
    return c;
}

double max_excess(const Circle& c, const std::vector<Point>& pts) {
    double worst = 0.0;
    for (const Point& p : pts) worst = std::max(worst, dist(c.center, p) - c.radius);
    return worst;
}

}  // namespace

Circle smallest_enclosing_circle(const std::vector<Point>& points) {
    if (points.empty())
        throw std::invalid_argument("smallest_enclosing_circle: empty input");

    std::vector<Point> pts;
    pts.reserve(points.size());
    for (const Point& p : points) {
        bool dup = false;
        for (const Point& q : pts)
            if (p.x == q.x && p.y == q.y) { dup = true; break; }
        if (!dup) pts.push_back(p);
    }

    const double eps = geom_eps(pts);
    if (pts.size() == 1) return Circle{pts[0], 0.0};
    if (pts.size() == 2) return circle_two(pts[0], pts[1]);

    // Shuffled restarts guard against a degenerate insertion order; the rng
    // seed is fixed so the overall result is deterministic.
    Circle best;
    double best_excess = std::numeric_limits<double>::infinity();
    Rng rng(0x2545F4914F6CDD1Dull);
    for (int attempt = 0; attempt < 5; ++attempt) {
        std::vector<Point> shuffled = pts;
        for (std::size_t i = shuffled.size() - 1; i > 0; --i) {
            const std::size_t j = static_cast<std::size_t>(rng.eng() % (i + 1));
            std::swap(shuffled[i], shuffled[j]);
        }
        const Circle c = sec_incremental(shuffled, eps);
        const double excess = max_excess(c, pts);
        if (excess <= 10.0 * eps) return c;
        if (excess < best_excess) {
            best_excess = excess;
            best = c;
        }
    }
    return best;
}

std::optional<Point> cover_point(const std::vector<std::vector<Point>>& groups,
                                 double lambda, double eps, bool first_feasible) {
    std::vector<Point> flat;
    for (const auto& g : groups)
        for (const Point& p : g) flat.push_back(p);
    if (eps < 0.0) eps = geom_eps(flat);

    // Worst group distance from s, aborting once it cannot beat `cut`.
    const auto score = [&](const Point& s, double cut) {
        double worst = 0.0;
        for (const auto& g : groups) {
            double gmin = std::numeric_limits<double>::infinity();
            for (const Point& p : g) gmin = std::min(gmin, dist(s, p));
            worst = std::max(worst, gmin);
            if (worst >= cut) return worst;
        }
        return worst;
    };

    const double feasible_cut = lambda + eps;
    double best_f = std::numeric_limits<double>::infinity();
    Point best;
    bool found = false;

    // In first_feasible mode a candidate only needs to be judged feasible or
    // not, so scoring may abort just above the feasibility cut; in best mode
    // it aborts at the incumbent instead. Aborted scores come back >= the
    // cut and never update the incumbent, so ties keep the earliest
    // candidate.
    const auto consider = [&](const Point& s) -> bool {
        const double abort_at =
            first_feasible
                ? std::nextafter(feasible_cut, std::numeric_limits<double>::infinity())
                : best_f;
        const double f = score(s, abort_at);
        if (f < best_f) {
            best_f = f;
            best = s;
            found = best_f <= feasible_cut;
        }
        return first_feasible && found;
    };

    for (const auto& g : groups)
        for (const Point& p : g)
            if (consider(p)) return best;

    const double reach = 2.0 * lambda + eps;
    for (std::size_t i = 0; i < flat.size(); ++i) {
        for (std::size_t j = i + 1; j < flat.size(); ++j) {
            const double d = dist(flat[i], flat[j]);
            if (d > reach || d <= 0.0) continue;
            const double half = d / 2.0;
            const double h2 = lambda * lambda - half * half;
            const double h = h2 > 0.0 ? std::sqrt(h2) : 0.0;
            const double ux = (flat[j].x - flat[i].x) / d;
            const double uy = (flat[j].y - flat[i].y) / d;
            const Point mid{flat[i].x + ux * half, flat[i].y + uy * half};
            if (consider(Point{mid.x - uy * h, mid.y + ux * h})) return best;
            if (consider(Point{mid.x + uy * h, mid.y - ux * h})) return best;
        }
    }

    if (found) return best;
    return std::nullopt;
}

}  // namespace kbst
