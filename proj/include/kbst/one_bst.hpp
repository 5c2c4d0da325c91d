#pragma once

#include <vector>

#include "kbst/tree.hpp"

namespace kbst {

// Result of placing one extra point s among fixed nodes so that the MST
// bottleneck over nodes + s is minimized. After solving, s sits at the
// center of the smallest enclosing circle of its tree neighbours.
struct OneBstResult {
    Node steiner;
    std::vector<int> neighbours;  // s's tree neighbours, ascending id
    Tree tree;                    // MST over nodes + s
    BottleneckInfo bottleneck;
};

// Exhaustive reference solver: tries every subset of at most five nodes as
// the neighbour set of s, placing s at the subset's smallest enclosing
// circle center. Ties go to the first subset in enumeration order (sizes
// ascending, then lexicographic ids). When no placement strictly improves
// the bare MST bottleneck, s is placed at the midpoint of the bottleneck
// edge. Cost grows as n^5; intended for small inputs. Throws
// std::invalid_argument when given fewer than 2 nodes.
OneBstResult solve_1bst_bruteforce(const std::vector<Node>& nodes);

// Same contract, computed by searching the finite candidate set of optimal
// bottleneck values (pairwise distances, their halves, and circumradii of
// acute triples) with a connectivity-plus-cover feasibility test. Returns
// the same bottleneck value as the exhaustive solver; the tree may differ
// within ties.
OneBstResult solve_1bst_fast(const std::vector<Node>& nodes);

}  // namespace kbst
