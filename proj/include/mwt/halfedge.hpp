#pragma once

#include "mwt/diamond.hpp"
#include "mwt/geom.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace mwt {

enum class EdgeStatus : std::uint8_t { Possible = 0, Certain = 1, Impossible = 2 };

const char *to_string(EdgeStatus s);

inline constexpr std::uint32_t no_half_edge = UINT32_MAX;

/// Half-edges stored in CSR form: the outgoing half-edges of vertex v occupy
/// [offset(v), offset(v + 1)) in counter-clockwise order starting at angle 0.
/// Edge ids index the candidate list; status lives once per edge.
class HalfEdgeGraph {
  public:
    HalfEdgeGraph() = default;
    /// Throws std::invalid_argument for fewer than 3 points or no edges.
    HalfEdgeGraph(std::span<const Point> points, const CandidateEdgeSet &cand);

    std::span<const Point> points() const { return points_; }
    std::uint32_t num_vertices() const { return static_cast<std::uint32_t>(offsets_.size()) - 1; }
    std::uint32_t num_half_edges() const { return static_cast<std::uint32_t>(target_.size()); }
    std::uint32_t num_edges() const { return static_cast<std::uint32_t>(primary_.size()); }

    std::uint32_t begin(std::uint32_t v) const { return offsets_[v]; }
    std::uint32_t end(std::uint32_t v) const { return offsets_[v + 1]; }
    std::uint32_t degree(std::uint32_t v) const { return offsets_[v + 1] - offsets_[v]; }

    std::uint32_t target(std::uint32_t h) const { return target_[h]; }
    std::uint32_t source(std::uint32_t h) const { return target_[twin_[h]]; }
    std::uint32_t twin(std::uint32_t h) const { return twin_[h]; }
    std::uint32_t next(std::uint32_t h) const { return next_[h]; }
    /// Clockwise neighbour, the inverse of next().
    std::uint32_t prev(std::uint32_t h) const;
    std::uint32_t edge(std::uint32_t h) const { return edge_[h]; }
    std::uint32_t j_start(std::uint32_t h) const { return j_start_[h]; }

    /// The half-edge leaving the lexicographically smaller endpoint.
    std::uint32_t primary(std::uint32_t e) const { return primary_[e]; }
    bool is_primary(std::uint32_t h) const { return primary_[edge_[h]] == h; }
    /// Half-edge from a to b, or no_half_edge.
    std::uint32_t find(std::uint32_t a, std::uint32_t b) const;

    EdgeStatus status(std::uint32_t e) const { return static_cast<EdgeStatus>(status_[e]); }
    EdgeStatus half_status(std::uint32_t h) const { return status(edge_[h]); }
    void set_status(std::uint32_t e, EdgeStatus s) { status_[e] = static_cast<std::uint8_t>(s); }
    bool hull(std::uint32_t e) const { return hull_[e] != 0; }
    void set_hull(std::uint32_t e, bool on) { hull_[e] = on ? 1 : 0; }

    // scan state for the empty-triangle merge on the left of each half-edge
    std::uint32_t &scan_i(std::uint32_t h) { return i_[h]; }
    std::uint32_t &scan_j(std::uint32_t h) { return j_[h]; }
    std::uint32_t scan_i(std::uint32_t h) const { return i_[h]; }
    std::uint32_t scan_j(std::uint32_t h) const { return j_[h]; }
    void reset_scan(std::uint32_t h) {
        i_[h] = next_[h];
        j_[h] = j_start_[h];
    }

    // LMT bookkeeping, once per edge
    bool examined(std::uint32_t e) const { return examined_[e] != 0; }
    void set_examined(std::uint32_t e, bool v) { examined_[e] = v ? 1 : 0; }
    bool on_stack(std::uint32_t e) const { return on_stack_[e] != 0; }
    void set_on_stack(std::uint32_t e, bool v) { on_stack_[e] = v ? 1 : 0; }

    /// Resets statuses to Possible (hull flags kept), scan state and flags.
    void reset_lmt_state();
    std::vector<EdgeStatus> statuses() const;

    std::uint32_t count(EdgeStatus s) const;
    std::uint32_t hull_count() const;

    /// Checks every structural invariant; returns an empty string when valid.
    std::string validate() const;

    /// One line per edge: "src dst status hull_flag", ids mapped through
    /// `ids` when given.
    void dump(std::ostream &os, std::span<const std::uint32_t> ids = {}) const;

  private:
    std::span<const Point> points_;
    std::vector<std::uint32_t> offsets_;
    std::vector<std::uint32_t> target_, twin_, next_, edge_, j_start_, i_, j_;
    std::vector<std::uint32_t> primary_;
    std::vector<std::uint8_t> status_, hull_, examined_, on_stack_;
};

/// Convex hull by monotone chain, counter-clockwise, keeping collinear
/// boundary points. Throws std::invalid_argument when all points are
/// collinear or fewer than 3 are given.
std::vector<std::uint32_t> convex_hull(std::span<const Point> points);

/// Flags the edges between consecutive hull vertices. Throws if one of them
/// is missing from the graph.
std::uint32_t mark_hull_edges(HalfEdgeGraph &g);

} // namespace mwt
