#include "kbst/one_bst.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "kbst/mst.hpp"

namespace kbst {

namespace {

std::vector<Point> positions_of(const std::vector<Node>& nodes) {
    std::vector<Point> out;
    out.reserve(nodes.size());
    for (const Node& n : nodes) out.push_back(n.pos);
    return out;
}

// Rebuild the MST with s inserted, then alternate between relocating s to
// the smallest-enclosing-circle center of its current tree neighbours and
// rebuilding, until s stops moving. Relocation never increases the longest
// edge at s and the rebuild never increases the bottleneck, so the final
// value cannot exceed the one at entry, and it cannot drop below the true
// optimum either. This pins down the witness position among ties.
Tree polish_steiner(const std::vector<Node>& fixed, Node& s, double move_tol) {
    std::vector<Node> all = fixed;
    all.push_back(s);
    Tree t = euclidean_mst(all);
    for (int iter = 0; iter < 50; ++iter) {
        const std::set<int>& nb = t.neighbours(s.id);
        if (nb.empty()) break;
        std::vector<Point> pts;
        pts.reserve(nb.size());
        for (int id : nb) pts.push_back(t.node(id).pos);
        const Point target = smallest_enclosing_circle(pts).center;
        if (dist(target, s.pos) <= move_tol) break;
        s.pos = target;
        all.back().pos = target;
        t = euclidean_mst(all);
    }
    return t;
}

OneBstResult finish(const std::vector<Node>& fixed, Node s, double move_tol) {
    OneBstResult res;
    res.tree = polish_steiner(fixed, s, move_tol);
    res.steiner = res.tree.node(s.id);
    const std::set<int>& nb = res.tree.neighbours(s.id);
    res.neighbours.assign(nb.begin(), nb.end());
    res.bottleneck = bottleneck(res.tree);
    return res;
}

// Shared no-improvement fallback: a bead at the midpoint of the bottleneck
// edge, which never worsens the tree.
OneBstResult fallback_midpoint(const std::vector<Node>& nodes, const Tree& base,
                               int s_id, double move_tol) {
    const EdgeId e = bottleneck(base).edge;
    const Point a = base.node(e.first).pos;
    const Point b = base.node(e.second).pos;
    Node s{s_id, NodeKind::Steiner, Point{(a.x + b.x) / 2.0, (a.y + b.y) / 2.0}};
    return finish(nodes, s, move_tol);
}

}  // namespace

OneBstResult solve_1bst_bruteforce(const std::vector<Node>& nodes) {
    if (nodes.size() < 2)
        throw std::invalid_argument("solve_1bst_bruteforce: need at least 2 nodes");

    std::vector<Node> sorted = nodes;
    std::sort(sorted.begin(), sorted.end(),
              [](const Node& a, const Node& b) { return a.id < b.id; });

    const Tree base = euclidean_mst(sorted);
    const double base_len = bottleneck(base).length;
    const double move_tol = geom_eps(positions_of(sorted)) * 1e-3;
    const int s_id = base.fresh_id();
    const int n = static_cast<int>(sorted.size());
    const int max_size = std::min(5, n);

    double best_len = base_len;
    Point best_pos;
    bool improved = false;

    // Subsets in size order, lexicographic ids within a size; the first
    // strict improvement of a given value wins.
    std::vector<int> pick;
    for (int size = 1; size <= max_size; ++size) {
        pick.assign(size, 0);
        for (int i = 0; i < size; ++i) pick[i] = i;
        while (true) {
            std::vector<Point> pts;
            pts.reserve(size);
            for (int idx : pick) pts.push_back(sorted[idx].pos);
            const Point center = smallest_enclosing_circle(pts).center;
            std::vector<Node> all = sorted;
            all.push_back({s_id, NodeKind::Steiner, center});
            const double len = bottleneck(euclidean_mst(all)).length;
            if (len < best_len) {
                best_len = len;
                best_pos = center;
                improved = true;
            }
            int i = size - 1;
            while (i >= 0 && pick[i] == n - size + i) --i;
            if (i < 0) break;
            ++pick[i];
            for (int j = i + 1; j < size; ++j) pick[j] = pick[j - 1] + 1;
        }
    }

    if (!improved) return fallback_midpoint(sorted, base, s_id, move_tol);
    return finish(sorted, Node{s_id, NodeKind::Steiner, best_pos}, move_tol);
}

OneBstResult solve_1bst_fast(const std::vector<Node>& nodes) {
    if (nodes.size() < 2)
        throw std::invalid_argument("solve_1bst_fast: need at least 2 nodes");

    std::vector<Node> sorted = nodes;
    std::sort(sorted.begin(), sorted.end(),
              [](const Node& a, const Node& b) { return a.id < b.id; });

    const Tree base = euclidean_mst(sorted);
    const double base_len = bottleneck(base).length;
    const std::vector<Point> pos = positions_of(sorted);
    // Much tighter than the general geometric tolerance: at the accepted
    // value the witness construction is exact up to rounding, and a loose
    // cut here could let a candidate just below the optimum pass.
    const double eps = geom_eps(pos) * 1e-3;
    const double move_tol = eps;
    const int s_id = base.fresh_id();
    const std::size_t m = sorted.size();

    if (base_len <= 0.0) {
        // All nodes coincide; nothing to optimize.
        return fallback_midpoint(sorted, base, s_id, move_tol);
    }

    std::vector<double> d(m * m, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            d[i * m + j] = d[j * m + i] = dist(pos[i], pos[j]);

    // Threshold components at lambda, as point groups ordered by smallest
    // member index.
    const auto groups_at = [&](double lambda) {
        std::vector<int> parent(m);
        for (std::size_t i = 0; i < m; ++i) parent[i] = static_cast<int>(i);
        const auto find = [&](int x) {
            while (parent[x] != x) {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            return x;
        };
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j)
                if (d[i * m + j] <= lambda + eps) {
                    const int a = find(static_cast<int>(i));
                    const int b = find(static_cast<int>(j));
                    if (a != b) parent[b] = a;
                }
        std::vector<std::vector<Point>> groups;
        std::vector<int> slot(m, -1);
        for (std::size_t i = 0; i < m; ++i) {
            const int r = find(static_cast<int>(i));
            if (slot[r] < 0) {
                slot[r] = static_cast<int>(groups.size());
                groups.emplace_back();
            }
            groups[slot[r]].push_back(pos[i]);
        }
        return groups;
    };

    const auto feasible = [&](double lambda) {
        const auto groups = groups_at(lambda);
        if (groups.size() == 1) return true;
        return cover_point(groups, lambda, eps, true).has_value();
    };

    // Pair-derived candidates first: distances and half distances up to the
    // bare bottleneck.
    std::vector<double> cands;
    cands.reserve(m * m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            const double dij = d[i * m + j];
            if (dij <= base_len + eps) cands.push_back(dij);
            if (dij / 2.0 <= base_len + eps) cands.push_back(dij / 2.0);
        }
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());

    const auto first_feasible_index = [&](const std::vector<double>& vals) {
        // vals sorted ascending; feasibility is monotone in lambda.
        std::size_t lo = 0, hi = vals.size();
        while (lo < hi) {
            const std::size_t mid = lo + (hi - lo) / 2;
            if (feasible(vals[mid]))
                hi = mid;
            else
                lo = mid + 1;
        }
        return lo;
    };

    const std::size_t pair_idx = first_feasible_index(cands);
    if (pair_idx == cands.size())
        throw std::logic_error("solve_1bst_fast: bare bottleneck not feasible");
    double hi_val = cands[pair_idx];
    const double lo_val = pair_idx == 0 ? 0.0 : cands[pair_idx - 1];

    // Circumradii of acute triples can only beat hi_val if every side is
    // below 2 * hi_val, which keeps this enumeration local.
    const double side_limit = 2.0 * hi_val + eps;
    std::vector<std::vector<std::size_t>> near(m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            if (d[i * m + j] <= side_limit) near[i].push_back(j);

    std::vector<double> tri;
    for (std::size_t i = 0; i < m; ++i) {
        const auto& ni = near[i];
        for (std::size_t a = 0; a < ni.size(); ++a) {
            for (std::size_t b = a + 1; b < ni.size(); ++b) {
                const std::size_t j = ni[a];
                const std::size_t l = ni[b];
                if (d[j * m + l] > side_limit) continue;
                const double s1 = d[i * m + j];
                const double s2 = d[i * m + l];
                const double s3 = d[j * m + l];
                const double q1 = s1 * s1, q2 = s2 * s2, q3 = s3 * s3;
                const double longest = std::max({q1, q2, q3});
                // Right or obtuse triples are covered by the half distance
                // of their widest pair.
                if (q1 + q2 + q3 - longest <= longest) continue;
                const auto cc = circumcircle(pos[i], pos[j], pos[l]);
                if (!cc) continue;
                if (cc->radius > lo_val && cc->radius < hi_val) tri.push_back(cc->radius);
            }
        }
    }
    std::sort(tri.begin(), tri.end());
    tri.erase(std::unique(tri.begin(), tri.end()), tri.end());

    const std::size_t tri_idx = first_feasible_index(tri);
    const double lambda = tri_idx < tri.size() ? tri[tri_idx] : hi_val;

    if (!(lambda < base_len)) {
        // No single point improves this instance.
        return fallback_midpoint(sorted, base, s_id, move_tol);
    }

    const auto witness = cover_point(groups_at(lambda), lambda, eps, false);
    if (!witness)
        throw std::logic_error("solve_1bst_fast: missing witness at accepted value");
    return finish(sorted, Node{s_id, NodeKind::Steiner, *witness}, move_tol);
}

}  // namespace kbst
