#pragma once

#include "mwt/diamond.hpp"
#include "mwt/halfedge.hpp"
#include "mwt/spatial.hpp"

#include <algorithm>
#include <vector>

namespace mwt::test {

/// Sorted points, tree, candidate edges and graph for one input.
struct Instance {
    enum class Edges { Diamond, AllPairs };

    explicit Instance(std::vector<Point> pts, Edges mode = Edges::Diamond, BaseAngleConfig cfg = BaseAngleConfig())
        : input(std::move(pts)), h(hilbert_sort(input)), tree(h), cand(make_edges(mode, cfg)), g(h.points, cand) {
        mark_hull_edges(g);
    }
    Instance(const Instance &) = delete;
    Instance &operator=(const Instance &) = delete;

    /// Edge e in input ids, smaller id first.
    Edge input_edge(std::uint32_t e) const {
        const std::uint32_t p = g.primary(e);
        const std::uint32_t a = h.original_index[g.source(p)], b = h.original_index[g.target(p)];
        return {std::min(a, b), std::max(a, b)};
    }

    std::vector<Point> input;
    HilbertOrderedPointSet h;
    QuadTree tree;
    CandidateEdgeSet cand;
    HalfEdgeGraph g;

  private:
    CandidateEdgeSet make_edges(Edges mode, const BaseAngleConfig &cfg) {
        if(mode == Edges::Diamond)
            return candidate_edges(h, tree, cfg);
        CandidateEdgeSet c;
        c.n = static_cast<std::uint32_t>(input.size());
        for(std::uint32_t a = 0; a < c.n; ++a)
            for(std::uint32_t b = a + 1; b < c.n; ++b)
                c.edges.push_back({a, b});
        return c;
    }
};

} // namespace mwt::test
