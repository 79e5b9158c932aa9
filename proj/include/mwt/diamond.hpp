#pragma once

#include "mwt/geom.hpp"
#include "mwt/spatial.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace mwt {

/// Open interval (lo, hi) of angle keys, wrapping through 0 when lo > hi,
/// which becomes active once the scan distance exceeds sqrt(squared_radius).
struct DeadSector {
    double lo = 0.0;
    double hi = 0.0;
    double squared_radius = 0.0;
};

/// Sector of directions from s blocked by the neighbours `first` and `second`
/// (second counter-clockwise of first). Every t in the returned sector
/// farther than the activation radius has `first` strictly inside the right
/// triangle of st and `second` strictly inside the left one.
std::optional<DeadSector> dead_sector_from_pair(const Point &s, const Point &first, const Point &second,
                                                const BaseAngleConfig &cfg);

/// Sorted, disjoint open intervals on the key circle. Keys live in [0, 4);
/// wrapped intervals are stored as two pieces reaching past the ends.
class AngularIntervalSet {
  public:
    void clear() { items_.clear(); }
    void insert(double lo, double hi);
    /// True iff the closed key range is contained in one stored interval
    /// (both pieces for wrapped ranges).
    bool covers(const KeyInterval &range) const;
    bool full_circle() const { return items_.size() == 1 && items_[0].first < 0.0 && items_[0].second > 4.0; }
    std::size_t size() const { return items_.size(); }
    const std::vector<std::pair<double, double>> &items() const { return items_; }

  private:
    void insert_piece(double lo, double hi);
    bool covers_range(double lo, double hi) const;

    std::vector<std::pair<double, double>> items_;
};

struct Edge {
    std::uint32_t a;
    std::uint32_t b;

    friend bool operator==(const Edge &, const Edge &) = default;
    friend auto operator<=>(const Edge &, const Edge &) = default;
};

/// Undirected candidate edges, a < b, sorted.
struct CandidateEdgeSet {
    std::uint32_t n = 0;
    std::vector<Edge> edges;
};

struct DiamondStats {
    std::uint64_t n = 0;
    std::uint64_t edges = 0;
    std::uint64_t aborted_early = 0;
    std::uint64_t max_intervals = 0;
    std::uint64_t lazy_node_checks = 0;
    std::uint64_t points_visited = 0;
    std::uint64_t nodes_expanded = 0;
    double wall_ms = 0.0;

    double edges_per_point() const { return n ? static_cast<double>(edges) / static_cast<double>(n) : 0.0; }
};

struct DiamondOptions {
    bool use_dead_sectors = true;
    /// Test each edge against the whole neighbour ring instead of the
    /// angular window around it.
    bool full_ring = false;
    /// Test hook: every query starts with the whole circle dead.
    bool start_fully_covered = false;
};

/// Exactly the edges {s, t} passing diamond_test_bruteforce.
CandidateEdgeSet candidate_edges(const HilbertOrderedPointSet &pts, const QuadTree &tree, const BaseAngleConfig &cfg,
                                 DiamondStats *stats = nullptr, const DiamondOptions &opts = {});

/// CSV header and row for DiamondStats.
const char *diamond_stats_header();
std::string diamond_stats_row(const DiamondStats &st);

} // namespace mwt
