#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "kbst/geometry.hpp"

namespace kbst {

// Beads are degree-2 Steiner points whose incident edges are straight; they
// subdivide an edge into equal segments. Terminals never move.
enum class NodeKind { Terminal, Steiner, Bead };

std::string kind_name(NodeKind k);
NodeKind kind_from_name(const std::string& name);

struct Node {
    int id = 0;
    NodeKind kind = NodeKind::Terminal;
    Point pos;
};

// Unordered edge, stored with first < second.
using EdgeId = std::pair<int, int>;

inline EdgeId make_edge(int u, int v) {
    return u < v ? EdgeId{u, v} : EdgeId{v, u};
}

struct BottleneckInfo {
    double length = 0.0;
    EdgeId edge{-1, -1};
};

// Tree over a node set: node table plus normalized edge set with adjacency
// kept in sync. Value type, cheap enough to copy at the sizes used here.
struct Tree {
    std::map<int, Node> nodes;
    std::set<EdgeId> edges;

    bool has_node(int id) const { return nodes.count(id) != 0; }
    const Node& node(int id) const { return nodes.at(id); }
    Node& node(int id) { return nodes.at(id); }

    void add_node(const Node& n);
    void add_edge(int u, int v);
    void remove_edge(int u, int v);
    void remove_node(int id);  // also drops incident edges

    const std::set<int>& neighbours(int id) const;
    int degree(int id) const;
    double edge_length(const EdgeId& e) const;

    int fresh_id() const;  // max id + 1, or 0 when empty
    std::vector<Node> node_list() const;  // ascending id
    int count_kind(NodeKind k) const;

    // |edges| == |nodes| - 1 and every node reachable from the first.
    bool connected_acyclic() const;

  private:
    std::map<int, std::set<int>> adj_;
    static const std::set<int> kEmptyAdj;
};

// Longest edge; ties go to the smallest (min id, max id) pair. A tree with
// no edges reports length 0 and edge {-1,-1}.
BottleneckInfo bottleneck(const Tree& t);

int max_degree(const Tree& t);

// JSON form {"nodes":[{"id","kind","x","y"}...],"edges":[[u,v]...]} with
// kind one of "terminal", "steiner", "bead".
std::string tree_to_json(const Tree& t);
Tree tree_from_json(const std::string& text);

}  // namespace kbst
