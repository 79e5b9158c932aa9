#pragma once

#include "mwt/lmt.hpp"

#include <cstdint>

namespace mwt {

struct PartitionOptions {
    /// Worker threads; 0 uses the hardware concurrency. 1 runs the serial loop.
    unsigned threads = 0;
    /// Bisection depth; negative picks default_partition_depth(threads).
    int max_depth = -1;
    /// Count mutations of edges outside the mutating task's vertex range.
    bool check_ownership = false;
};

struct PartitionStats {
    unsigned threads = 1;
    int depth = 0;
    std::uint64_t edges = 0;
    /// Edges handed to the root by its two children.
    std::uint64_t root_deferred = 0;
    std::uint64_t ownership_violations = 0;
    LmtCounters counters;

    double root_fraction() const { return edges ? static_cast<double>(root_deferred) / static_cast<double>(edges) : 0.0; }
};

/// ceil(log2(threads)) + 1.
int default_partition_depth(unsigned threads);

/// LMT loop by recursive midpoint bisection of the vertex range. Leaves
/// process edges inside their range and pass cut edges up; each parent
/// handles what its children passed up once both have finished. Reaches the
/// same fixpoint as LmtEngine::run.
PartitionStats parallel_lmt(HalfEdgeGraph &g, const QuadTree *tree, const LmtOptions &lmt = {},
                            const PartitionOptions &opts = {});

} // namespace mwt
