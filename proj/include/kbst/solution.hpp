#pragma once

#include <string>
#include <vector>

#include "kbst/tree.hpp"

namespace kbst {

// Output of one heuristic run on one instance.
struct Solution {
    Tree tree;
    double bottleneck = 0.0;
    std::vector<Node> steiner_points;  // non-terminal nodes, ascending id
    std::string algorithm;
    double wall_time = 0.0;  // seconds
    int iterations = 0;      // driver iterations performed
    int nonbead_count = 0;   // non-bead Steiner points in the output
};

std::string solution_to_json(const Solution& s, int k, int n);

}  // namespace kbst
