#pragma once

#include <set>
#include <vector>

#include "kbst/solution.hpp"
#include "kbst/tree.hpp"

namespace kbst {

// True when id has degree 2 and its incident edges meet at 180 degrees
// within 1e-6 radians.
bool straight_at(const Tree& t, int id);

// Re-tags non-terminal nodes: ids in keep_steiner stay Steiner, other
// degree-2 nodes with straight incident edges become Bead, the rest Steiner.
void reclassify(Tree& t, const std::set<int>& keep_steiner);

// Clean-up applied after inserting steiner_id: (1) repeatedly delete
// degree-1 non-terminals; (2) re-space every maximal chain of degree-2
// non-terminals equally along the straight segment between its end anchors
// (an anchor is a terminal or a node of degree != 2); (3) relocate
// steiner_id to the smallest-enclosing-circle center of its neighbours.
// Throws std::invalid_argument when steiner_id is not in the tree.
Tree convert(const Tree& t, int steiner_id);

// k rounds of: exact single-point insertion over the current node set (all
// nodes fixed), then convert.
Solution naive_i1bsth(const std::vector<Point>& terminals, int k);

// Look-ahead driver: each iteration re-beads the incumbent with k-1-p
// beads, inserts one optimal point s over the beaded node set, converts,
// re-beads with the remaining budget, and keeps the cheapest result seen.
// Beads adjacent to s are promoted to Steiner and survive later re-beading.
// Never worse than msth on the same input.
Solution prebeaded_i1bsth(const std::vector<Point>& terminals, int k);

// Same driver without the pre-insertion beading step: the single-point
// solver runs on the incumbent with its look-ahead beads cleared.
Solution postbeaded_i1bsth(const std::vector<Point>& terminals, int k);

// Better of naive_i1bsth and msth; ties go to msth.
Solution meta_naive_msth(const std::vector<Point>& terminals, int k);

}  // namespace kbst
