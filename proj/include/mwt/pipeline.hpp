#pragma once

#include "mwt/diamond.hpp"
#include "mwt/geom.hpp"
#include "mwt/halfedge.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace mwt {

struct PipelineOptions {
    double alpha = BaseAngleConfig::default_alpha;
    bool lmt_plus = true;
    /// 0 uses the hardware concurrency.
    unsigned threads = 1;
    /// Negative picks the default for the thread count.
    int partition_depth = -1;
    bool exact_triangles = true;
    /// false stops after the skeleton (faces are still classified).
    bool solve_faces = true;
};

struct StageStats {
    std::string instance;
    std::uint64_t n = 0;
    double alpha = 0.0;
    std::uint64_t cand_edges = 0;
    std::uint64_t hull_edges = 0;
    std::uint64_t possible_lmt = 0;
    std::uint64_t certain_lmt = 0;
    /// Equal to the LMT columns when LMT+ is off.
    std::uint64_t possible_lmtp = 0;
    std::uint64_t certain_lmtp = 0;
    /// Simple faces with more than three vertices.
    std::uint64_t faces_simple = 0;
    std::uint64_t faces_nonsimple = 0;
    std::uint64_t faces_triangles = 0;
    std::uint64_t root_deferred = 0;
    double weight = 0.0;
    double ms_dt = 0.0;
    double ms_init = 0.0;
    double ms_loop = 0.0;
    double ms_lmtp = 0.0;
    double ms_dp = 0.0;
    double ms_total = 0.0;
};

struct SkeletonEdge {
    Edge edge;
    EdgeStatus status = EdgeStatus::Possible;
    bool hull = false;
};

/// Everything in input point ids, smaller id first, sorted.
struct PipelineResult {
    /// The triangulation, or with solve_faces off the Certain edges.
    std::vector<Edge> edges;
    /// Every candidate edge with its final status.
    std::vector<SkeletonEdge> skeleton;
    bool complete = false;
    StageStats stats;
};

/// Diamond filter, graph, LMT loop, certain pass, optional LMT+ and re-mark,
/// faces, DP, assembly. Throws std::invalid_argument for fewer than three
/// points, duplicates or all-collinear input.
PipelineResult run_pipeline(std::span<const Point> points, const PipelineOptions &opts = {});

const char *stats_csv_header();
std::string stats_csv_row(const StageStats &s);
void write_stats_csv(std::ostream &out, std::span<const StageStats> rows);
void write_stats_csv(const std::string &path, std::span<const StageStats> rows);

} // namespace mwt
