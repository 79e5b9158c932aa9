#include "mwt/spatial.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace mwt {

BBox bounding_box(std::span<const Point> points) {
    if(points.empty())
        return {};
    BBox b = BBox::of(points[0]);
    for(const Point &p : points)
        b.expand(p);
    return b;
}

namespace {

constexpr std::uint32_t grid_side = 1u << hilbert_levels;

std::uint32_t grid_coord(double v, double lo, double extent) {
    const double u = (v - lo) / extent * static_cast<double>(grid_side - 1);
    if(!(u > 0.0))
        return 0;
    if(u >= static_cast<double>(grid_side - 1))
        return grid_side - 1;
    return static_cast<std::uint32_t>(u);
}

} // namespace

std::uint64_t hilbert_index(const Point &p, const BBox &bounds) {
    double extent = std::max(bounds.xmax - bounds.xmin, bounds.ymax - bounds.ymin);
    if(!(extent > 0.0))
        extent = 1.0;
    std::uint64_t x = grid_coord(p.x, bounds.xmin, extent);
    std::uint64_t y = grid_coord(p.y, bounds.ymin, extent);
    std::uint64_t d = 0;
    for(std::uint64_t s = grid_side / 2; s > 0; s /= 2) {
        const std::uint64_t rx = (x & s) ? 1 : 0;
        const std::uint64_t ry = (y & s) ? 1 : 0;
        d += s * s * ((3 * rx) ^ ry);
        if(ry == 0) {
            if(rx == 1) {
                x = grid_side - 1 - x;
                y = grid_side - 1 - y;
            }
            std::swap(x, y);
        }
    }
    return d;
}

HilbertOrderedPointSet hilbert_sort(std::span<const Point> points) {
    HilbertOrderedPointSet out;
    const std::size_t n = points.size();
    out.bounds = bounding_box(points);
    std::vector<std::uint64_t> keys(n);
    for(std::size_t i = 0; i < n; ++i)
        keys[i] = hilbert_index(points[i], out.bounds);
    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        if(keys[a] != keys[b])
            return keys[a] < keys[b];
        return lex_less(points[a], points[b]);
    });
    out.points.resize(n);
    out.keys.resize(n);
    for(std::size_t i = 0; i < n; ++i) {
        out.points[i] = points[order[i]];
        out.keys[i] = keys[order[i]];
    }
    for(std::size_t i = 1; i < n; ++i) {
        if(out.points[i] == out.points[i - 1])
            throw std::invalid_argument("duplicate point at input rows " + std::to_string(order[i - 1] + 1) +
                                        " and " + std::to_string(order[i] + 1));
    }
    out.original_index = std::move(order);
    return out;
}

QuadTree::QuadTree(const HilbertOrderedPointSet &pts, std::uint32_t leaf_capacity)
    : points_(pts.points), leaf_capacity_(leaf_capacity) {
    if(leaf_capacity == 0)
        throw std::invalid_argument("leaf capacity must be positive");
    if(pts.points.empty())
        return;
    nodes_.reserve(2 * pts.size() / leaf_capacity + 16);
    QuadNode root;
    root.lo = 0;
    root.hi = static_cast<std::uint32_t>(pts.size());
    nodes_.push_back(root);
    build(0, pts.keys);
}

void QuadTree::build(std::uint32_t id, const std::vector<std::uint64_t> &keys) {
    const std::uint32_t lo = nodes_[id].lo;
    const std::uint32_t hi = nodes_[id].hi;
    const int level = nodes_[id].level;
    if(hi - lo <= leaf_capacity_ || level >= hilbert_levels) {
        BBox b = BBox::of(points_[lo]);
        for(std::uint32_t i = lo + 1; i < hi; ++i)
            b.expand(points_[i]);
        nodes_[id].box = b;
        return;
    }
    const int shift = 2 * (hilbert_levels - 1 - level);
    std::uint32_t bounds[5];
    bounds[0] = lo;
    bounds[4] = hi;
    for(std::uint64_t d = 1; d < 4; ++d) {
        auto it = std::partition_point(keys.begin() + lo, keys.begin() + hi,
                                       [&](std::uint64_t k) { return ((k >> shift) & 3u) < d; });
        bounds[d] = static_cast<std::uint32_t>(it - keys.begin());
    }
    const auto first = static_cast<std::uint32_t>(nodes_.size());
    std::uint8_t count = 0;
    for(int d = 0; d < 4; ++d) {
        if(bounds[d] == bounds[d + 1])
            continue;
        QuadNode child;
        child.lo = bounds[d];
        child.hi = bounds[d + 1];
        child.level = static_cast<std::uint8_t>(level + 1);
        nodes_.push_back(child);
        ++count;
    }
    nodes_[id].first_child = first;
    nodes_[id].child_count = count;
    BBox b = BBox::of(points_[lo]);
    for(std::uint32_t c = 0; c < count; ++c) {
        build(first + c, keys);
        const BBox &cb = nodes_[first + c].box;
        b.expand({cb.xmin, cb.ymin});
        b.expand({cb.xmax, cb.ymax});
    }
    nodes_[id].box = b;
}

std::vector<std::uint32_t> QuadTree::range_query(const BBox &box) const {
    std::vector<std::uint32_t> out;
    for_each_in_box(box, [&](std::uint32_t i) {
        if(box.contains(points_[i]))
            out.push_back(i);
    });
    std::sort(out.begin(), out.end());
    return out;
}

KeyInterval box_key_interval(const Point &q, const BBox &box) {
    if(box.contains(q))
        return {};
    // clockwise-most and counter-clockwise-most corners, by region of q
    Point lo, hi;
    if(q.y < box.ymin) {
        if(q.x < box.xmin) {
            lo = {box.xmax, box.ymin};
            hi = {box.xmin, box.ymax};
        } else if(q.x > box.xmax) {
            lo = {box.xmax, box.ymax};
            hi = {box.xmin, box.ymin};
        } else {
            lo = {box.xmax, box.ymin};
            hi = {box.xmin, box.ymin};
        }
    } else if(q.y > box.ymax) {
        if(q.x < box.xmin) {
            lo = {box.xmin, box.ymin};
            hi = {box.xmax, box.ymax};
        } else if(q.x > box.xmax) {
            lo = {box.xmin, box.ymax};
            hi = {box.xmax, box.ymin};
        } else {
            lo = {box.xmin, box.ymax};
            hi = {box.xmax, box.ymax};
        }
    } else if(q.x < box.xmin) {
        lo = {box.xmin, box.ymin};
        hi = {box.xmin, box.ymax};
    } else {
        lo = {box.xmax, box.ymax};
        hi = {box.xmax, box.ymin};
    }
    constexpr double pad = 1e-12;
    double klo = angle_key(q, lo) - pad;
    double khi = angle_key(q, hi) + pad;
    if(klo < 0.0)
        klo += 4.0;
    if(khi >= 4.0)
        khi -= 4.0;
    return {klo, khi, false};
}

} // namespace mwt
