#include "kbst/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <vector>

#include "kbst/beading.hpp"
#include "kbst/experiments.hpp"
#include "kbst/geometry.hpp"
#include "kbst/mst.hpp"
#include "kbst/one_bst.hpp"
#include "kbst/rng.hpp"
#include "kbst/tree.hpp"

namespace kbst {

namespace {

constexpr std::uint64_t kSecTag = 101;
constexpr std::uint64_t kMstTag = 102;
constexpr std::uint64_t kBeadTag = 103;
constexpr std::uint64_t kOneBstTag = 104;

std::uint64_t case_seed(std::uint64_t master, std::uint64_t tag, int index) {
    std::uint64_t h = splitmix64(master ^ (tag * 0x9E3779B97F4A7C15ull));
    return splitmix64(h + static_cast<std::uint64_t>(index));
}

void report_failure(std::ostream* diag, const char* suite, int index,
                    const std::string& what) {
    if (diag) *diag << suite << " case " << index << ": " << what << "\n";
}

// Smallest circle covering all points, by trying every pair diameter and
// every triple circumcircle. Quadratic-cubic, fine for tiny inputs.
Circle sec_bruteforce(const std::vector<Point>& pts) {
    const double slack = 1e-9;
    Circle best{{0.0, 0.0}, std::numeric_limits<double>::infinity()};
    auto consider = [&](const Circle& c) {
        if (c.radius >= best.radius) return;
        for (const Point& p : pts)
            if (dist(c.center, p) > c.radius + slack) return;
        best = c;
    };
    for (std::size_t i = 0; i < pts.size(); ++i)
        consider({pts[i], 0.0});
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            const Point mid{(pts[i].x + pts[j].x) / 2.0, (pts[i].y + pts[j].y) / 2.0};
            consider({mid, dist(pts[i], pts[j]) / 2.0});
        }
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            for (std::size_t l = j + 1; l < pts.size(); ++l) {
                const auto c = circumcircle(pts[i], pts[j], pts[l]);
                if (c) consider(*c);
            }
    return best;
}

}  // namespace

OracleReport oracle_sec_suite(std::uint64_t seed, int cases, std::ostream* diag) {
    OracleReport rep;
    for (int i = 0; i < cases; ++i) {
        ++rep.cases;
        Rng rng(case_seed(seed, kSecTag, i));
        const int n = 1 + rng.uniform_int(0, 7);
        std::vector<Point> pts;
        for (int j = 0; j < n; ++j)
            pts.push_back({rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0)});
        // A quarter of the cases get a duplicated point.
        if (n >= 2 && i % 4 == 0) pts.push_back(pts[0]);

        const Circle got = smallest_enclosing_circle(pts);
        const Circle want = sec_bruteforce(pts);

        bool ok = std::fabs(got.radius - want.radius) <= 1e-9;
        if (!ok)
            report_failure(diag, "sec", i,
                           "radius " + std::to_string(got.radius) + " vs oracle " +
                               std::to_string(want.radius));

        for (const Point& p : pts)
            if (dist(got.center, p) > got.radius + 1e-7) {
                ok = false;
                report_failure(diag, "sec", i, "point outside the returned circle");
                break;
            }

        std::vector<Point> distinct;
        for (const Point& p : pts) {
            bool seen = false;
            for (const Point& q : distinct)
                if (q.x == p.x && q.y == p.y) seen = true;
            if (!seen) distinct.push_back(p);
        }
        int on_boundary = 0;
        for (const Point& p : distinct)
            if (std::fabs(dist(got.center, p) - got.radius) <= 1e-7) ++on_boundary;
        if (on_boundary < 1 || on_boundary > 3) {
            ok = false;
            report_failure(diag, "sec", i,
                           "boundary support count " + std::to_string(on_boundary));
        }

        if (!ok) ++rep.failures;
    }
    return rep;
}

namespace {

// Decodes a Pruefer sequence over labels 0..n-1 into the tree's edge list.
void prufer_decode(const std::vector<int>& seq, int n,
                   std::vector<std::pair<int, int>>& edges) {
    edges.clear();
    std::vector<int> deg(n, 1);
    for (int x : seq) ++deg[x];
    std::vector<char> done(n, 0);
    for (int x : seq) {
        int leaf = -1;
        for (int j = 0; j < n; ++j)
            if (!done[j] && deg[j] == 1) {
                leaf = j;
                break;
            }
        edges.emplace_back(leaf, x);
        done[leaf] = 1;
        --deg[x];
    }
    int a = -1, b = -1;
    for (int j = 0; j < n; ++j)
        if (!done[j] && deg[j] == 1) (a < 0 ? a : b) = j;
    edges.emplace_back(a, b);
}

}  // namespace

OracleReport oracle_mst_suite(std::uint64_t seed, int cases, std::ostream* diag) {
    OracleReport rep;
    for (int i = 0; i < cases; ++i) {
        ++rep.cases;
        Rng rng(case_seed(seed, kMstTag, i));
        const int n = 2 + i % 7;
        std::vector<Node> nodes;
        std::vector<Point> pts;
        for (int j = 0; j < n; ++j) {
            const Point p{rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0)};
            pts.push_back(p);
            nodes.push_back({j, NodeKind::Terminal, p});
        }
        std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) d[a][b] = dist(pts[a], pts[b]);

        // Every labelled tree on n nodes, via Pruefer sequences.
        double min_total = std::numeric_limits<double>::infinity();
        double min_bneck = std::numeric_limits<double>::infinity();
        std::vector<std::pair<int, int>> edges;
        if (n == 2) {
            min_total = min_bneck = d[0][1];
        } else {
            std::vector<int> seq(n - 2, 0);
            while (true) {
                prufer_decode(seq, n, edges);
                double total = 0.0, bneck = 0.0;
                for (const auto& [a, b] : edges) {
                    total += d[a][b];
                    bneck = std::max(bneck, d[a][b]);
                }
                min_total = std::min(min_total, total);
                min_bneck = std::min(min_bneck, bneck);
                int pos = n - 3;
                while (pos >= 0 && seq[pos] == n - 1) seq[pos--] = 0;
                if (pos < 0) break;
                ++seq[pos];
            }
        }

        const Tree t = euclidean_mst(nodes);
        double total = 0.0;
        for (const EdgeId& e : t.edges) total += t.edge_length(e);
        const double bneck = bottleneck(t).length;

        bool ok = true;
        if (std::fabs(total - min_total) > 1e-9) {
            ok = false;
            report_failure(diag, "mst", i,
                           "total " + std::to_string(total) + " vs oracle " +
                               std::to_string(min_total));
        }
        if (std::fabs(bneck - min_bneck) > 1e-9) {
            ok = false;
            report_failure(diag, "mst", i,
                           "bottleneck " + std::to_string(bneck) + " vs oracle " +
                               std::to_string(min_bneck));
        }
        if (!t.connected_acyclic()) {
            ok = false;
            report_failure(diag, "mst", i, "result is not a tree");
        }
        if (!ok) ++rep.failures;
    }
    return rep;
}

namespace {

// Minimum over all ways to distribute j beads across the edges of the
// largest resulting segment length.
double best_composition(const std::vector<double>& lens, int j) {
    double best = std::numeric_limits<double>::infinity();
    std::vector<int> counts(lens.size(), 0);
    const auto eval = [&] {
        double worst = 0.0;
        for (std::size_t e = 0; e < lens.size(); ++e)
            worst = std::max(worst, lens[e] / (counts[e] + 1));
        best = std::min(best, worst);
    };
    const std::size_t m = lens.size();
    // Recursive enumeration of compositions of j into m parts.
    const auto rec = [&](const auto& self, std::size_t e, int left) -> void {
        if (e + 1 == m) {
            counts[e] = left;
            eval();
            return;
        }
        for (int c = 0; c <= left; ++c) {
            counts[e] = c;
            self(self, e + 1, left - c);
        }
    };
    if (m == 0) return best;
    rec(rec, 0, j);
    return best;
}

}  // namespace

OracleReport oracle_bead_suite(std::uint64_t seed, int cases, std::ostream* diag) {
    OracleReport rep;
    for (int i = 0; i < cases; ++i) {
        ++rep.cases;
        Rng rng(case_seed(seed, kBeadTag, i));
        const int n = 3 + i % 5;
        const int j = i % 7;
        std::vector<Node> nodes;
        for (int a = 0; a < n; ++a)
            nodes.push_back({a, NodeKind::Terminal,
                             {rng.uniform(0.0, 10.0), rng.uniform(0.0, 10.0)}});
        const Tree base = euclidean_mst(nodes);
        std::vector<double> lens;
        for (const EdgeId& e : base.edges) lens.push_back(base.edge_length(e));

        const Tree beaded = bead(base, j);
        const double got = bottleneck(beaded).length;
        const double want = best_composition(lens, j);

        // The beaded tree is measured from materialized coordinates, the
        // oracle by direct division; those round differently in the last
        // ulp, so the comparison allows that much and nothing more.
        bool ok = true;
        if (std::fabs(got - want) > 1e-12 * std::max(1.0, want)) {
            ok = false;
            report_failure(diag, "bead", i,
                           "bottleneck " + std::to_string(got) + " vs oracle " +
                               std::to_string(want));
        }
        if (!beaded.connected_acyclic()) {
            ok = false;
            report_failure(diag, "bead", i, "result is not a tree");
        }
        if (beaded.count_kind(NodeKind::Bead) != j) {
            ok = false;
            report_failure(diag, "bead", i, "bead count is not j");
        }
        for (const Node& nd : beaded.node_list())
            if (nd.kind == NodeKind::Bead && beaded.degree(nd.id) != 2) {
                ok = false;
                report_failure(diag, "bead", i, "bead with degree != 2");
                break;
            }
        if (!ok) ++rep.failures;
    }
    return rep;
}

OracleReport oracle_onebst_suite(std::uint64_t seed, int cases, std::ostream* diag) {
    OracleReport rep;
    for (int i = 0; i < cases; ++i) {
        ++rep.cases;
        Rng rng(case_seed(seed, kOneBstTag, i));
        const int n = 5 + i % 5;
        std::vector<Node> nodes;
        std::vector<Point> pts;
        for (int a = 0; a < n; ++a) {
            const Point p{rng.uniform(0.0, 100.0), rng.uniform(0.0, 100.0)};
            pts.push_back(p);
            nodes.push_back({a, NodeKind::Terminal, p});
        }
        const double base_bneck = bottleneck(euclidean_mst(nodes)).length;

        bool ok = true;
        try {
            const OneBstResult brute = solve_1bst_bruteforce(nodes);
            const OneBstResult fast = solve_1bst_fast(nodes);
            if (std::fabs(brute.bottleneck.length - fast.bottleneck.length) > 1e-9) {
                ok = false;
                report_failure(diag, "onebst", i,
                               "fast " + std::to_string(fast.bottleneck.length) +
                                   " vs brute " + std::to_string(brute.bottleneck.length));
            }
            if (fast.bottleneck.length > base_bneck + 1e-9) {
                ok = false;
                report_failure(diag, "onebst", i, "result worse than plain tree");
            }
            const int deg = fast.tree.degree(fast.steiner.id);
            if (deg < 1 || deg > 6) {
                ok = false;
                report_failure(diag, "onebst", i,
                               "relay degree " + std::to_string(deg));
            }
            // The relay should sit at the centre of the smallest circle
            // through its neighbours, so its worst incident edge matches
            // that circle's radius.
            std::vector<Point> npts;
            for (int nb : fast.neighbours) npts.push_back(fast.tree.node(nb).pos);
            const Circle c = smallest_enclosing_circle(npts);
            double worst = 0.0;
            for (const Point& p : npts)
                worst = std::max(worst, dist(fast.steiner.pos, p));
            if (worst > c.radius + 1e-7) {
                ok = false;
                report_failure(diag, "onebst", i, "relay not centred on neighbours");
            }
            if (!fast.tree.connected_acyclic()) {
                ok = false;
                report_failure(diag, "onebst", i, "result is not a tree");
            }
        } catch (const std::exception& e) {
            ok = false;
            report_failure(diag, "onebst", i, std::string("exception: ") + e.what());
        }
        if (!ok) ++rep.failures;
    }
    return rep;
}

}  // namespace kbst
