#pragma once

#include "mwt/diamond.hpp"
#include "mwt/geom.hpp"

#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mwt {

/// Malformed or unreadable input; the message names file and line.
class InputError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class PointFormat { Auto, Tsplib, Xy };

/// Parses "tsplib", "xy" or "auto". Throws std::invalid_argument otherwise.
PointFormat parse_point_format(const std::string &s);

/// Reads a point file; Auto picks TSPLIB for a .tsp extension or a file
/// whose first keyword line looks like a TSPLIB header. Duplicate points
/// are rejected.
std::vector<Point> read_points(const std::string &path, PointFormat format = PointFormat::Auto);

/// TSPLIB with NODE_COORD_SECTION; EUC_2D, CEIL_2D, ATT and GEO coordinates
/// are taken verbatim.
std::vector<Point> parse_tsplib(std::istream &in, const std::string &name);

/// One "x y" pair per line; blank lines and lines starting with '#' skipped.
std::vector<Point> parse_xy(std::istream &in, const std::string &name);

void write_points_xy(std::ostream &out, std::span<const Point> points);

/// Edge list: "MWT n m weight" then one "src dst" line per edge.
struct EdgeFile {
    std::uint32_t n = 0;
    double weight = 0.0;
    std::vector<Edge> edges;
};

void write_edges(std::ostream &out, const EdgeFile &f);
void write_edges(const std::string &path, const EdgeFile &f);
EdgeFile read_edges(const std::string &path);

enum class SvgClass { Edge, Possible, Certain, Hull };

struct SvgStyle {
    std::string edge = "#222222";
    std::string possible = "#e6550d";
    std::string certain = "#08519c";
    std::string hull = "#000000";
    /// Stroke width as a fraction of the larger bounding-box side.
    double stroke = 1e-3;
    double point_radius = 0.0;
};

struct SvgEdge {
    Edge edge;
    SvgClass cls = SvgClass::Edge;
};

/// Lines with y flipped to screen orientation; viewBox is the bounding box
/// plus a 2% margin. Throws std::invalid_argument for an empty edge list.
void write_svg(std::ostream &out, std::span<const Point> points, std::span<const SvgEdge> edges,
               const SvgStyle &style = {});
void write_svg(const std::string &path, std::span<const Point> points, std::span<const SvgEdge> edges,
               const SvgStyle &style = {});

} // namespace mwt
