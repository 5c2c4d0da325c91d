#pragma once

#include <vector>

#include "kbst/solution.hpp"
#include "kbst/tree.hpp"

namespace kbst {

// Clears all existing beads (merging their incident edges), then adds j new
// beads one at a time to the edge whose per-segment length |e|/(n_i+1) is
// currently largest, ties to the smaller (min id, max id) host edge. Beads
// are materialized as equally spaced degree-2 nodes. A tree with no edges is
// returned unchanged; *warned is set if j > 0 in that case.
Tree bead(const Tree& t, int j, bool* warned = nullptr);

// MST over the terminals followed by bead(k).
Solution msth(const std::vector<Point>& terminals, int k);

}  // namespace kbst
