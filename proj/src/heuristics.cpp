#include "kbst/heuristics.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <json.hpp>

#include "kbst/beading.hpp"
#include "kbst/mst.hpp"
#include "kbst/one_bst.hpp"

namespace kbst {

namespace {

constexpr double kStraightTol = 1e-6;  // radians away from pi
constexpr double kStallTol = 1e-12;
constexpr int kStallLimit = 3;

std::vector<Node> terminal_nodes(const std::vector<Point>& terminals) {
    std::vector<Node> nodes;
    nodes.reserve(terminals.size());
    for (std::size_t i = 0; i < terminals.size(); ++i)
        nodes.push_back({static_cast<int>(i), NodeKind::Terminal, terminals[i]});
    return nodes;
}

void check_inputs(const std::vector<Point>& terminals, int k, const char* who) {
    if (terminals.size() < 2)
        throw std::invalid_argument(std::string(who) + ": need at least 2 terminals");
    if (k < 0) throw std::invalid_argument(std::string(who) + ": negative budget");
}

void fill_solution(Solution& sol, const char* name,
                   std::chrono::steady_clock::time_point start) {
    sol.algorithm = name;
    sol.bottleneck = bottleneck(sol.tree).length;
    sol.steiner_points.clear();
    for (const auto& [id, n] : sol.tree.nodes)
        if (n.kind != NodeKind::Terminal) sol.steiner_points.push_back(n);
    sol.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

int count_nonbead_steiner(const Tree& t) {
    int c = 0;
    for (const auto& [id, n] : t.nodes)
        if (n.kind == NodeKind::Steiner) ++c;
    return c;
}

}  // namespace

bool straight_at(const Tree& t, int id) {
    const std::set<int>& nb = t.neighbours(id);
    if (nb.size() != 2) return false;
    const Point& x = t.node(id).pos;
    const Point& a = t.node(*nb.begin()).pos;
    const Point& b = t.node(*nb.rbegin()).pos;
    const double ux = a.x - x.x, uy = a.y - x.y;
    const double vx = b.x - x.x, vy = b.y - x.y;
    if ((ux == 0.0 && uy == 0.0) || (vx == 0.0 && vy == 0.0)) return false;
    const double angle = std::atan2(std::abs(ux * vy - uy * vx), ux * vx + uy * vy);
    return std::abs(M_PI - angle) <= kStraightTol;
}

void reclassify(Tree& t, const std::set<int>& keep_steiner) {
    for (auto& [id, n] : t.nodes) {
        if (n.kind == NodeKind::Terminal) continue;
        if (keep_steiner.count(id)) {
            n.kind = NodeKind::Steiner;
        } else {
            n.kind = straight_at(t, id) ? NodeKind::Bead : NodeKind::Steiner;
        }
    }
}

Tree convert(const Tree& t, int steiner_id) {
    if (!t.has_node(steiner_id)) throw std::invalid_argument("convert: node not in tree");
    Tree out = t;

    // Step 1: prune non-terminal leaves until none remain.
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<int> drop;
        for (const auto& [id, n] : out.nodes)
            if (n.kind != NodeKind::Terminal && out.degree(id) == 1) drop.push_back(id);
        for (int id : drop) {
            out.remove_node(id);
            changed = true;
        }
    }

    // Step 2: re-space every maximal degree-2 chain equally between its end
    // anchors. An anchor is a terminal or a node of degree != 2. Chain ends
    // cannot be leaves after step 1, so both anchors exist.
    const auto is_anchor = [&](int id) {
        return out.node(id).kind == NodeKind::Terminal || out.degree(id) != 2;
    };
    std::set<int> visited;
    for (const auto& [id, n] : out.nodes) {
        if (is_anchor(id) || visited.count(id)) continue;
        // Walk both directions to the anchors.
        std::vector<int> chain{id};
        int end_a = -1, end_b = -1;
        for (int dir = 0; dir < 2; ++dir) {
            int prev = id;
            auto it = out.neighbours(id).begin();
            if (dir == 1) ++it;
            int cur = *it;
            while (!is_anchor(cur)) {
                if (dir == 0)
                    chain.insert(chain.begin(), cur);
                else
                    chain.push_back(cur);
                const std::set<int>& nb = out.neighbours(cur);
                const int a = *nb.begin();
                const int b = *nb.rbegin();
                const int next = a == prev ? b : a;
                prev = cur;
                cur = next;
            }
            if (dir == 0)
                end_a = cur;
            else
                end_b = cur;
        }
        if (end_a > end_b) {
            std::reverse(chain.begin(), chain.end());
            std::swap(end_a, end_b);
        }
        const Point pa = out.node(end_a).pos;
        const Point pb = out.node(end_b).pos;
        const int len = static_cast<int>(chain.size());
        for (int i = 0; i < len; ++i) {
            const double f = static_cast<double>(i + 1) / (len + 1);
            out.node(chain[i]).pos =
                Point{pa.x + f * (pb.x - pa.x), pa.y + f * (pb.y - pa.y)};
            visited.insert(chain[i]);
        }
    }

    // Step 3: put the inserted point at the smallest-enclosing-circle center
    // of its neighbours (it may have been pruned in step 1).
    if (out.has_node(steiner_id)) {
        const std::set<int>& nb = out.neighbours(steiner_id);
        if (!nb.empty()) {
            std::vector<Point> pts;
            pts.reserve(nb.size());
            for (int id : nb) pts.push_back(out.node(id).pos);
            out.node(steiner_id).pos = smallest_enclosing_circle(pts).center;
        }
    }
    return out;
}

Solution naive_i1bsth(const std::vector<Point>& terminals, int k) {
    check_inputs(terminals, k, "naive_i1bsth");
    const auto start = std::chrono::steady_clock::now();

    Tree t = euclidean_mst(terminal_nodes(terminals));
    for (int i = 0; i < k; ++i) {
        const OneBstResult res = solve_1bst_fast(t.node_list());
        t = convert(res.tree, res.steiner.id);
    }
    reclassify(t, {});

    Solution sol;
    sol.tree = t;
    sol.iterations = k;
    sol.nonbead_count = count_nonbead_steiner(t);
    fill_solution(sol, "naive", start);
    return sol;
}

namespace {

// Shared driver for the two look-ahead variants. Per iteration: (a) re-bead
// the incumbent, with k-1-p beads in prebead mode or none otherwise; (b)
// insert one optimal point s over that node set; (c) convert; (d) classify,
// promoting beads that served as neighbours of s so later re-beading keeps
// them; (e) re-bead with the remaining budget; (f) keep the cheapest tree
// seen, preferring fewer non-bead points and earlier iterations on ties.
// Stops after k iterations, when the non-bead count reaches k, or after 3
// iterations without improvement (the pipeline is deterministic, so a
// non-improving iteration would repeat forever).
Solution lookahead_driver(const std::vector<Point>& terminals, int k, bool prebead,
                          const char* name) {
    check_inputs(terminals, k, name);
    const auto start = std::chrono::steady_clock::now();

    Tree current = euclidean_mst(terminal_nodes(terminals));
    Solution sol;
    if (k == 0) {
        sol.tree = current;
        fill_solution(sol, name, start);
        return sol;
    }

    struct Best {
        double len = std::numeric_limits<double>::infinity();
        int nonbead = 0;
        Tree tree;
        std::set<int> sticky;
    } best;

    std::set<int> sticky;
    int c = 0;
    int p = 0;
    int stall = 0;
    while (c < k && p < k) {
        const Tree beaded = bead(current, prebead ? k - 1 - p : 0);
        const OneBstResult res = solve_1bst_fast(beaded.node_list());

        // Beads used as neighbours of s are promoted: they survive both the
        // classification below and every later bead clearing.
        std::set<int> iter_sticky = sticky;
        for (int id : res.neighbours)
            if (res.tree.node(id).kind == NodeKind::Bead) iter_sticky.insert(id);

        Tree converted = convert(res.tree, res.steiner.id);
        // Ids of pruned nodes may be reallocated by later beading, so keep
        // only ids still present.
        for (auto it = iter_sticky.begin(); it != iter_sticky.end();) {
            it = converted.has_node(*it) ? std::next(it) : iter_sticky.erase(it);
        }
        reclassify(converted, iter_sticky);
        const int p_new = count_nonbead_steiner(converted);

        const Tree candidate = bead(converted, k - p_new);
        const double len = bottleneck(candidate).length;

        ++c;
        const double prev_best = best.len;
        if (len < best.len || (len == best.len && p_new < best.nonbead)) {
            best.len = len;
            best.nonbead = p_new;
            best.tree = candidate;
            best.sticky = iter_sticky;
        }
        stall = prev_best - best.len > kStallTol ? 0 : stall + 1;
        if (stall >= kStallLimit) break;

        current = best.tree;
        p = best.nonbead;
        sticky = best.sticky;
    }

    sol.tree = best.tree;
    sol.iterations = c;
    sol.nonbead_count = best.nonbead;
    fill_solution(sol, name, start);
    return sol;
}

}  // namespace

Solution prebeaded_i1bsth(const std::vector<Point>& terminals, int k) {
    return lookahead_driver(terminals, k, true, "prebeaded");
}

Solution postbeaded_i1bsth(const std::vector<Point>& terminals, int k) {
    return lookahead_driver(terminals, k, false, "postbeaded");
}

Solution meta_naive_msth(const std::vector<Point>& terminals, int k) {
    check_inputs(terminals, k, "meta_naive_msth");
    const auto start = std::chrono::steady_clock::now();

    Solution naive = naive_i1bsth(terminals, k);
    Solution mst_sol = msth(terminals, k);
    Solution sol = naive.bottleneck < mst_sol.bottleneck ? std::move(naive)
                                                         : std::move(mst_sol);
    fill_solution(sol, "meta", start);
    return sol;
}

std::string solution_to_json(const Solution& s, int k, int n) {
    nlohmann::ordered_json j;
    j["algorithm"] = s.algorithm;
    j["bottleneck"] = s.bottleneck;
    j["wall_time_s"] = s.wall_time;
    j["k"] = k;
    j["n"] = n;
    j["iterations"] = s.iterations;
    j["nonbead_count"] = s.nonbead_count;
    j["tree"] = nlohmann::ordered_json::parse(tree_to_json(s.tree));
    return j.dump(2) + "\n";
}

}  // namespace kbst
