#pragma once

#include "mwt/diamond.hpp"
#include "mwt/halfedge.hpp"
#include "mwt/spatial.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace mwt {

enum class FaceKind : std::uint8_t { Simple, NonSimple };

/// A bounded face of the skeleton (Certain and hull edges).
struct PolygonFace {
    /// Counter-clockwise vertex cycle.
    std::vector<std::uint32_t> boundary;
    FaceKind kind = FaceKind::Simple;
    /// Possible edges inside the face between boundary vertices, as pairs of
    /// boundary positions (i < j). Empty for non-simple faces.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> chord_pool;

    bool is_triangle() const { return kind == FaceKind::Simple && boundary.size() == 3; }
};

struct FaceSolution {
    /// Chosen chords as vertex ids, sorted.
    std::vector<Edge> chords;
    /// Sum of chord lengths taken in chord order.
    double weight = 0.0;
};

/// Walks every bounded face of the skeleton. A face is NonSimple when its
/// cycle repeats a vertex or an input point lies strictly inside it.
/// `tree` indexes the graph's points.
std::vector<PolygonFace> extract_faces(const HalfEdgeGraph &g, const QuadTree &tree);

/// Minimum-weight triangulation of a simple face using only pool chords.
/// Throws std::logic_error when the pool admits no triangulation.
FaceSolution triangulate_face(const PolygonFace &face, std::span<const Point> points);

/// Solves all simple faces; solutions[k] belongs to faces[k].
std::vector<FaceSolution> triangulate_faces(const std::vector<PolygonFace> &faces, std::span<const Point> points,
                                            unsigned threads = 1);

struct TriangulationResult {
    /// Vertex ids, smaller first, sorted.
    std::vector<Edge> edges;
    double weight = 0.0;
    bool complete = false;
    std::uint32_t faces_simple = 0;
    std::uint32_t faces_nonsimple = 0;
    std::uint32_t faces_triangles = 0;
};

/// Skeleton edges plus the chords of every solved face. Complete only when
/// no face is NonSimple.
TriangulationResult assemble(const HalfEdgeGraph &g, const std::vector<PolygonFace> &faces,
                             const std::vector<FaceSolution> &solutions);

} // namespace mwt
