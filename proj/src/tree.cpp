#include "kbst/tree.hpp"

#include <queue>
#include <stdexcept>

#include <json.hpp>

namespace kbst {

const std::set<int> Tree::kEmptyAdj;

std::string kind_name(NodeKind k) {
    switch (k) {
        case NodeKind::Terminal: return "terminal";
        case NodeKind::Steiner: return "steiner";
        case NodeKind::Bead: return "bead";
    }
    return "steiner";
}

NodeKind kind_from_name(const std::string& name) {
    if (name == "terminal") return NodeKind::Terminal;
    if (name == "steiner") return NodeKind::Steiner;
    if (name == "bead") return NodeKind::Bead;
    throw std::invalid_argument("unknown node kind: " + name);
}

void Tree::add_node(const Node& n) {
    if (has_node(n.id)) throw std::invalid_argument("duplicate node id");
    nodes[n.id] = n;
}

void Tree::add_edge(int u, int v) {
    if (u == v || !has_node(u) || !has_node(v))
        throw std::invalid_argument("bad edge endpoints");
    edges.insert(make_edge(u, v));
    adj_[u].insert(v);
    adj_[v].insert(u);
}

void Tree::remove_edge(int u, int v) {
    edges.erase(make_edge(u, v));
    auto it = adj_.find(u);
    if (it != adj_.end()) it->second.erase(v);
    it = adj_.find(v);
    if (it != adj_.end()) it->second.erase(u);
}

void Tree::remove_node(int id) {
    const std::set<int> nb = neighbours(id);
    for (int v : nb) remove_edge(id, v);
    adj_.erase(id);
    nodes.erase(id);
}

const std::set<int>& Tree::neighbours(int id) const {
    auto it = adj_.find(id);
    return it == adj_.end() ? kEmptyAdj : it->second;
}

int Tree::degree(int id) const { return static_cast<int>(neighbours(id).size()); }

double Tree::edge_length(const EdgeId& e) const {
    return dist(node(e.first).pos, node(e.second).pos);
}

int Tree::fresh_id() const {
    return nodes.empty() ? 0 : nodes.rbegin()->first + 1;
}

std::vector<Node> Tree::node_list() const {
    std::vector<Node> out;
    out.reserve(nodes.size());
    for (const auto& [id, n] : nodes) out.push_back(n);
    return out;
}

int Tree::count_kind(NodeKind k) const {
    int c = 0;
    for (const auto& [id, n] : nodes)
        if (n.kind == k) ++c;
    return c;
}

bool Tree::connected_acyclic() const {
    if (nodes.empty()) return false;
    if (edges.size() != nodes.size() - 1) return false;
    std::set<int> seen;
    std::queue<int> q;
    q.push(nodes.begin()->first);
    seen.insert(nodes.begin()->first);
    while (!q.empty()) {
        const int u = q.front();
        q.pop();
        for (int v : neighbours(u))
            if (seen.insert(v).second) q.push(v);
    }
    return seen.size() == nodes.size();
}

BottleneckInfo bottleneck(const Tree& t) {
    BottleneckInfo out;
    for (const EdgeId& e : t.edges) {
        const double len = t.edge_length(e);
        if (len > out.length || out.edge.first < 0) {
            out.length = len;
            out.edge = e;
        }
    }
    if (out.edge.first < 0) out.length = 0.0;
    return out;
}

int max_degree(const Tree& t) {
    int best = 0;
    for (const auto& [id, n] : t.nodes) best = std::max(best, t.degree(id));
    return best;
}

std::string tree_to_json(const Tree& t) {
    nlohmann::ordered_json j;
    j["nodes"] = nlohmann::ordered_json::array();
    for (const auto& [id, n] : t.nodes) {
        j["nodes"].push_back({{"id", n.id},
                              {"kind", kind_name(n.kind)},
                              {"x", n.pos.x},
                              {"y", n.pos.y}});
    }
    j["edges"] = nlohmann::ordered_json::array();
    for (const EdgeId& e : t.edges) j["edges"].push_back({e.first, e.second});
    return j.dump();
}

Tree tree_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    Tree t;
    for (const auto& jn : j.at("nodes")) {
        Node n;
        n.id = jn.at("id").get<int>();
        n.kind = kind_from_name(jn.at("kind").get<std::string>());
        n.pos = Point{jn.at("x").get<double>(), jn.at("y").get<double>()};
        t.add_node(n);
    }
    for (const auto& je : j.at("edges")) t.add_edge(je.at(0).get<int>(), je.at(1).get<int>());
    return t;
}

}  // namespace kbst
