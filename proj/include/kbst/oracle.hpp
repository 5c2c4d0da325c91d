#pragma once

#include <cstdint>
#include <iosfwd>

namespace kbst {

struct OracleReport {
    int cases = 0;
    int failures = 0;
    bool ok() const { return failures == 0; }
};

// Randomized cross-checks of the core solvers against exhaustive reference
// computations. Diagnostics for failing cases go to *diag when given.

// Smallest enclosing circle vs the pair/triple candidate oracle, plus
// containment and boundary-support checks. Point sets of size 1..8.
OracleReport oracle_sec_suite(std::uint64_t seed, int cases, std::ostream* diag = nullptr);

// euclidean_mst total length and bottleneck vs enumeration of all labeled
// trees (Pruefer sequences), n <= 8.
OracleReport oracle_mst_suite(std::uint64_t seed, int cases, std::ostream* diag = nullptr);

// Greedy beading vs exhaustive bead compositions on trees with <= 6 edges,
// j <= 6 beads; values must match up to coordinate rounding (1e-12
// relative).
OracleReport oracle_bead_suite(std::uint64_t seed, int cases, std::ostream* diag = nullptr);

// Fast single-point solver vs the <=5-subset exhaustive solver on instances
// with 5..9 nodes, within 1e-9.
OracleReport oracle_onebst_suite(std::uint64_t seed, int cases, std::ostream* diag = nullptr);

}  // namespace kbst
