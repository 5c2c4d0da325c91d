#include "kbst/beading.hpp"

#include <chrono>
#include <map>
#include <queue>
#include <stdexcept>

#include "kbst/mst.hpp"

namespace kbst {

Tree bead(const Tree& t, int j, bool* warned) {
    if (j < 0) throw std::invalid_argument("bead: negative bead count");
    if (warned) *warned = false;

    Tree out = t;

    // Step 1: clear existing beads, merging their incident edges.
    std::vector<int> old_beads;
    for (const auto& [id, n] : out.nodes)
        if (n.kind == NodeKind::Bead) old_beads.push_back(id);
    for (int id : old_beads) {
        const std::set<int> nb = out.neighbours(id);
        if (nb.size() != 2)
            throw std::logic_error("bead: bead node without degree 2");
        const int u = *nb.begin();
        const int v = *nb.rbegin();
        out.remove_node(id);
        out.add_edge(u, v);
    }

    if (out.edges.empty()) {
        if (j > 0 && warned) *warned = true;
        return out;
    }

    // Greedy: repeatedly subdivide the edge whose current segment length is
    // largest. One heap entry per host edge, updated on pop, so no stale
    // entries exist.
    struct Entry {
        double seg;
        EdgeId e;
        int count;
    };
    const auto lower = [](const Entry& a, const Entry& b) {
        if (a.seg != b.seg) return a.seg < b.seg;
        return a.e > b.e;
    };
    std::priority_queue<Entry, std::vector<Entry>, decltype(lower)> heap(lower);
    std::map<EdgeId, int> counts;
    for (const EdgeId& e : out.edges) {
        counts[e] = 0;
        heap.push({out.edge_length(e), e, 0});
    }
    for (int placed = 0; placed < j; ++placed) {
        Entry top = heap.top();
        heap.pop();
        const int next = top.count + 1;
        counts[top.e] = next;
        heap.push({out.edge_length(top.e) / (next + 1), top.e, next});
    }

    // Materialize the beads equally spaced, numbering from the lower id
    // endpoint; host edges are visited in (min id, max id) order.
    int next_id = out.fresh_id();
    for (const auto& [e, cnt] : counts) {
        if (cnt == 0) continue;
        const Point a = out.node(e.first).pos;
        const Point b = out.node(e.second).pos;
        out.remove_edge(e.first, e.second);
        int prev = e.first;
        for (int i = 1; i <= cnt; ++i) {
            const double f = static_cast<double>(i) / (cnt + 1);
            Node bd;
            bd.id = next_id++;
            bd.kind = NodeKind::Bead;
            bd.pos = Point{a.x + f * (b.x - a.x), a.y + f * (b.y - a.y)};
            out.add_node(bd);
            out.add_edge(prev, bd.id);
            prev = bd.id;
        }
        out.add_edge(prev, e.second);
    }
    return out;
}

Solution msth(const std::vector<Point>& terminals, int k) {
    if (terminals.size() < 2) throw std::invalid_argument("msth: need at least 2 terminals");
    if (k < 0) throw std::invalid_argument("msth: negative budget");
    const auto start = std::chrono::steady_clock::now();

    std::vector<Node> nodes;
    nodes.reserve(terminals.size());
    for (std::size_t i = 0; i < terminals.size(); ++i)
        nodes.push_back({static_cast<int>(i), NodeKind::Terminal, terminals[i]});

    Solution sol;
    sol.algorithm = "msth";
    sol.tree = bead(euclidean_mst(nodes), k);
    sol.bottleneck = bottleneck(sol.tree).length;
    for (const auto& [id, n] : sol.tree.nodes)
        if (n.kind != NodeKind::Terminal) sol.steiner_points.push_back(n);
    sol.iterations = 0;
    sol.nonbead_count = 0;
    sol.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return sol;
}

}  // namespace kbst
