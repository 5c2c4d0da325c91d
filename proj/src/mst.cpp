#include "kbst/mst.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace kbst {

namespace {

struct DisjointSet {
    std::vector<int> parent;
    explicit DisjointSet(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[b] = a;
        return true;
    }
};

}  // namespace

Tree euclidean_mst(const std::vector<Node>& nodes) {
    if (nodes.empty()) throw std::invalid_argument("euclidean_mst: empty input");

    std::vector<Node> sorted = nodes;
    std::sort(sorted.begin(), sorted.end(),
              [](const Node& a, const Node& b) { return a.id < b.id; });
    if (sorted.front().id < 0)
        throw std::invalid_argument("euclidean_mst: negative node id");
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i].id == sorted[i - 1].id)
            throw std::invalid_argument("euclidean_mst: duplicate node id");

    Tree t;
    for (const Node& n : sorted) t.add_node(n);
    const std::size_t m = sorted.size();
    if (m == 1) return t;

    struct Cand {
        double len;
        int u, v;  // u < v, node ids
    };
    std::vector<Cand> cands;
    cands.reserve(m * (m - 1) / 2);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            cands.push_back({dist(sorted[i].pos, sorted[j].pos), sorted[i].id, sorted[j].id});

    // (length, min id, max id): a total order, so the tree is unique.
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
        if (a.len != b.len) return a.len < b.len;
        if (a.u != b.u) return a.u < b.u;
        return a.v < b.v;
    });

    std::vector<int> index_of(sorted.back().id + 1, -1);
    for (std::size_t i = 0; i < m; ++i) index_of[sorted[i].id] = static_cast<int>(i);

    DisjointSet ds(m);
    std::size_t taken = 0;
    for (const Cand& c : cands) {
        if (!ds.unite(index_of[c.u], index_of[c.v])) continue;
        t.add_edge(c.u, c.v);
        if (++taken == m - 1) break;
    }
    return t;
}

Tree insert_and_rebuild(const Tree& t, const Node& s) {
    if (t.has_node(s.id))
        throw std::invalid_argument("insert_and_rebuild: id already present");
    std::vector<Node> nodes = t.node_list();
    nodes.push_back(s);
    return euclidean_mst(nodes);
}

}  // namespace kbst
