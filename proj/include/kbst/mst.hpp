#pragma once

#include <vector>

#include "kbst/tree.hpp"

namespace kbst {

// Minimum spanning tree under Euclidean distance. Kruskal over all pairs
// with edges ordered by (length, min id, max id); the tie rule makes the
// output unique for a given node set, independent of input order. Throws
// std::invalid_argument on empty input or duplicate ids.
Tree euclidean_mst(const std::vector<Node>& nodes);

// MST over the old node set plus s. Full rebuild; s.id must be unused.
Tree insert_and_rebuild(const Tree& t, const Node& s);

}  // namespace kbst
