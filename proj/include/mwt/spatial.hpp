#pragma once

#include "mwt/geom.hpp"

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

namespace mwt {

struct BBox {
    double xmin = 0.0, ymin = 0.0, xmax = 0.0, ymax = 0.0;

    bool contains(const Point &p) const { return p.x >= xmin && p.x <= xmax && p.y >= ymin && p.y <= ymax; }

    bool intersects(const BBox &o) const {
        return xmin <= o.xmax && o.xmin <= xmax && ymin <= o.ymax && o.ymin <= ymax;
    }

    void expand(const Point &p) {
        xmin = std::min(xmin, p.x);
        ymin = std::min(ymin, p.y);
        xmax = std::max(xmax, p.x);
        ymax = std::max(ymax, p.y);
    }

    static BBox of(const Point &p) { return {p.x, p.y, p.x, p.y}; }
};

/// Squared distance from p to the closest point of the box (0 inside).
inline double min_squared_distance(const BBox &b, const Point &p) {
    const double dx = p.x < b.xmin ? b.xmin - p.x : (p.x > b.xmax ? p.x - b.xmax : 0.0);
    const double dy = p.y < b.ymin ? b.ymin - p.y : (p.y > b.ymax ? p.y - b.ymax : 0.0);
    return dx * dx + dy * dy;
}

BBox bounding_box(std::span<const Point> points);

struct HilbertOrderedPointSet {
    std::vector<Point> points;
    /// sorted position -> input position
    std::vector<std::uint32_t> original_index;
    /// 62-bit Hilbert index of each sorted point
    std::vector<std::uint64_t> keys;
    BBox bounds;

    std::size_t size() const { return points.size(); }
};

inline constexpr int hilbert_levels = 31;

/// Hilbert index of p on a 2^31 x 2^31 grid laid over the square of side
/// max(width, height) anchored at the box's lower-left corner.
std::uint64_t hilbert_index(const Point &p, const BBox &bounds);

/// Sorts by Hilbert index, ties broken by (x, y). Throws std::invalid_argument
/// on duplicate points.
HilbertOrderedPointSet hilbert_sort(std::span<const Point> points);

struct QuadNode {
    BBox box;
    std::uint32_t lo = 0, hi = 0;
    /// children occupy [first_child, first_child + child_count)
    std::uint32_t first_child = 0;
    std::uint8_t child_count = 0;
    std::uint8_t level = 0;

    bool is_leaf() const { return child_count == 0; }
};

class QuadTree {
  public:
    static constexpr std::uint32_t default_leaf_capacity = 16;

    QuadTree() = default;
    QuadTree(const HilbertOrderedPointSet &pts, std::uint32_t leaf_capacity = default_leaf_capacity);

    const std::vector<QuadNode> &nodes() const { return nodes_; }
    const QuadNode &node(std::uint32_t id) const { return nodes_[id]; }
    std::span<const Point> points() const { return points_; }
    std::uint32_t leaf_capacity() const { return leaf_capacity_; }
    bool empty() const { return nodes_.empty(); }

    /// Ids of points whose coordinates fall inside the closed box.
    std::vector<std::uint32_t> range_query(const BBox &box) const;

    /// Visits every point id in nodes whose box intersects `box`.
    template<class F> void for_each_in_box(const BBox &box, F &&f) const;
    /// True iff pred(i) holds for some point id in a leaf meeting the box;
    /// stops at the first hit.
    template<class P> bool any_in_box(const BBox &box, P &&pred) const;

  private:
    void build(std::uint32_t node, const std::vector<std::uint64_t> &keys);

    std::vector<QuadNode> nodes_;
    std::span<const Point> points_;
    std::uint32_t leaf_capacity_ = default_leaf_capacity;
};

template<class F> void QuadTree::for_each_in_box(const BBox &box, F &&f) const {
    if(nodes_.empty())
        return;
    std::uint32_t stack[4 * (hilbert_levels + 2)];
    int top = 0;
    stack[top++] = 0;
    while(top > 0) {
        const QuadNode &nd = nodes_[stack[--top]];
        if(!nd.box.intersects(box))
            continue;
        if(nd.is_leaf()) {
            for(std::uint32_t i = nd.lo; i < nd.hi; ++i)
                f(i);
        } else {
            for(std::uint32_t c = 0; c < nd.child_count; ++c)
                stack[top++] = nd.first_child + c;
        }
    }
}

template<class P> bool QuadTree::any_in_box(const BBox &box, P &&pred) const {
    if(nodes_.empty())
        return false;
    std::uint32_t stack[4 * (hilbert_levels + 2)];
    int top = 0;
    stack[top++] = 0;
    while(top > 0) {
        const QuadNode &nd = nodes_[stack[--top]];
        if(!nd.box.intersects(box))
            continue;
        if(nd.is_leaf()) {
            for(std::uint32_t i = nd.lo; i < nd.hi; ++i)
                if(pred(i))
                    return true;
        } else {
            for(std::uint32_t c = 0; c < nd.child_count; ++c)
                stack[top++] = nd.first_child + c;
        }
    }
    return false;
}

/// Range of angle keys (see angle_key) covered by a box as seen from a point.
/// Wraps through 0 when lo > hi.
struct KeyInterval {
    double lo = 0.0;
    double hi = 4.0;
    bool full = true;
};

/// Smallest key interval enclosing the box as seen from q, padded outwards.
/// Full circle when q lies inside or on the boundary of the box.
KeyInterval box_key_interval(const Point &q, const BBox &box);

struct Neighbor {
    std::uint32_t id;
    double d2;
};

/// Best-first traversal (Hjaltason-Samet) yielding points by nondecreasing
/// squared distance. The frontier is reused across queries.
class IncrementalNearest {
  public:
    explicit IncrementalNearest(const QuadTree &tree) : tree_(&tree) {}

    /// Starts a new query. `skip` is omitted from the output (pass
    /// UINT32_MAX for none). The root is subject to pruning as well.
    template<class Prune> void reset(const Point &q, std::uint32_t skip, Prune &&prune);

    void reset(const Point &q, std::uint32_t skip = UINT32_MAX) {
        reset(q, skip, [](const KeyInterval &, std::uint32_t) { return false; });
    }

    /// Next point; `prune(interval, node)` is asked before each node is
    /// enqueued and may return true to discard the node's subtree.
    template<class Prune> bool next(Neighbor &out, Prune &&prune);

    bool next(Neighbor &out) {
        return next(out, [](const KeyInterval &, std::uint32_t) { return false; });
    }

    const Point &query() const { return q_; }
    std::size_t nodes_expanded() const { return expanded_; }

  private:
    struct Entry {
        double d2;
        // bit 31 set for points so nodes win ties
        std::uint32_t tagged;

        bool operator>(const Entry &o) const { return d2 > o.d2 || (d2 == o.d2 && tagged > o.tagged); }
    };
    static constexpr std::uint32_t point_tag = 0x80000000u;

    void push(Entry e) {
        heap_.push_back(e);
        std::push_heap(heap_.begin(), heap_.end(), std::greater<>{});
    }

    template<class Prune> void push_node(std::uint32_t id, Prune &prune);

    const QuadTree *tree_;
    std::vector<Entry> heap_;
    Point q_;
    std::uint32_t skip_ = UINT32_MAX;
    std::size_t expanded_ = 0;
};

template<class Prune> void IncrementalNearest::push_node(std::uint32_t id, Prune &prune) {
    const QuadNode &nd = tree_->node(id);
    if(prune(box_key_interval(q_, nd.box), id))
        return;
    push({min_squared_distance(nd.box, q_), id});
}

template<class Prune> void IncrementalNearest::reset(const Point &q, std::uint32_t skip, Prune &&prune) {
    heap_.clear();
    q_ = q;
    skip_ = skip;
    expanded_ = 0;
    if(!tree_->empty())
        push_node(0, prune);
}

template<class Prune> bool IncrementalNearest::next(Neighbor &out, Prune &&prune) {
    const auto pts = tree_->points();
    while(!heap_.empty()) {
        std::pop_heap(heap_.begin(), heap_.end(), std::greater<>{});
        const Entry e = heap_.back();
        heap_.pop_back();
        if(e.tagged & point_tag) {
            out = {e.tagged & ~point_tag, e.d2};
            return true;
        }
        ++expanded_;
        const QuadNode &nd = tree_->node(e.tagged);
        if(nd.is_leaf()) {
            for(std::uint32_t i = nd.lo; i < nd.hi; ++i) {
                if(i != skip_)
                    push({squared_distance(q_, pts[i]), i | point_tag});
            }
        } else {
            for(std::uint32_t c = 0; c < nd.child_count; ++c)
                push_node(nd.first_child + c, prune);
        }
    }
    return false;
}

} // namespace mwt
