#include "mwt/diamond.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <limits>
#include <string>

namespace mwt {

namespace {

constexpr double key_margin = 1e-9;

Point rotate(double x, double y, double c, double s) { return {c * x - s * y, s * x + c * y}; }

} // namespace

std::optional<DeadSector> dead_sector_from_pair(const Point &s, const Point &first, const Point &second,
                                                const BaseAngleConfig &cfg) {
    const double fx = first.x - s.x, fy = first.y - s.y;
    const double gx = second.x - s.x, gy = second.y - s.y;
    const double cr = fx * gy - fy * gx;
    const double dt = fx * gx + fy * gy;
    const double ca = cfg.cos_alpha(), sa = cfg.sin_alpha();
    const double c2 = ca * ca - sa * sa, s2 = 2.0 * sa * ca;
    if(!(cr * c2 - dt * s2 < 0.0))
        return std::nullopt;
    if(first == second || first == s || second == s)
        return std::nullopt;
    if(orient(s, first, second) != Orientation::CCW)
        return std::nullopt;

    const double f2 = fx * fx + fy * fy;
    const double g2 = gx * gx + gy * gy;
    DeadSector ds;
    if(cr * ca - dt * sa <= 0.0) {
        ds.lo = angle_key(fx, fy);
        ds.hi = angle_key(gx, gy);
        // offsets stay below the gap, so sin(alpha + gap) / sin(alpha) suffices
        double ratio2 = 1.0 / (sa * sa);
        if(dt * ca - cr * sa > 0.0) {
            const double ratio = (dt + cr * ca / sa) / std::sqrt(f2 * g2);
            ratio2 = std::min(ratio2, ratio * ratio);
        }
        ds.squared_radius = std::max(f2, g2) * ratio2 * (1.0 + 1e-10);
    } else {
        const Point lo_dir = rotate(gx, gy, ca, -sa);
        const Point hi_dir = rotate(fx, fy, ca, sa);
        ds.lo = angle_key(lo_dir.x, lo_dir.y) + key_margin;
        ds.hi = angle_key(hi_dir.x, hi_dir.y) - key_margin;
        if(ds.lo >= 4.0)
            ds.lo -= 4.0;
        if(ds.hi < 0.0)
            ds.hi += 4.0;
        ds.squared_radius = std::max(f2, g2) * cfg.activation_factor();
    }
    const double width = key_ccw_distance(ds.lo, ds.hi);
    if(!(width > 0.0) || width > 2.0)
        return std::nullopt;
    return ds;
}

void AngularIntervalSet::insert(double lo, double hi) {
    if(lo < hi) {
        insert_piece(lo, hi);
    } else {
        insert_piece(lo, 5.0);
        insert_piece(-1.0, hi);
    }
}

void AngularIntervalSet::insert_piece(double lo, double hi) {
    auto it = std::lower_bound(items_.begin(), items_.end(), lo,
                               [](const std::pair<double, double> &p, double v) { return p.second < v; });
    // it: first interval whose right end is >= lo
    auto last = it;
    while(last != items_.end() && last->first <= hi) {
        lo = std::min(lo, last->first);
        hi = std::max(hi, last->second);
        ++last;
    }
    it = items_.erase(it, last);
    items_.insert(it, {lo, hi});
}

bool AngularIntervalSet::covers_range(double lo, double hi) const {
    for(const auto &[l, h] : items_) {
        if(l >= lo)
            return false;
        if(hi < h)
            return true;
    }
    return false;
}

bool AngularIntervalSet::covers(const KeyInterval &range) const {
    if(range.full)
        return full_circle();
    if(range.lo <= range.hi)
        return covers_range(range.lo, range.hi);
    return covers_range(range.lo, 4.0) && covers_range(0.0, range.hi);
}

namespace {

struct RingEntry {
    double key;
    double d2;
    std::uint32_t id;

    bool operator<(const RingEntry &o) const { return key < o.key || (key == o.key && d2 < o.d2); }
};

class Scanner {
  public:
    Scanner(const HilbertOrderedPointSet &pts, const QuadTree &tree, const BaseAngleConfig &cfg,
            const DiamondOptions &opts)
        : pts_(pts.points), tree_(tree), cfg_(cfg), opts_(opts), nn_(tree) {}

    void scan(std::uint32_t s, std::vector<Edge> &out, DiamondStats &st);

  private:
    bool ring_blocks(std::uint32_t s, std::uint32_t t, double tkey, bool &left, bool &right) const;
    bool pruned_blocks(std::uint32_t s, std::uint32_t t, double d2, bool &left, bool &right, DiamondStats &st) const;
    bool classify(const Point &ps, const Point &pt, const Point &pq, bool &left, bool &right) const;
    static bool later(const DeadSector &a, const DeadSector &b) { return a.squared_radius > b.squared_radius; }
    void add_pending(const DeadSector &ds) {
        pending_.push_back(ds);
        std::push_heap(pending_.begin(), pending_.end(), later);
    }

    std::span<const Point> pts_;
    const QuadTree &tree_;
    const BaseAngleConfig &cfg_;
    const DiamondOptions &opts_;
    IncrementalNearest nn_;
    std::vector<RingEntry> ring_;
    std::vector<DeadSector> pending_;
    std::vector<std::uint32_t> pruned_;
    AngularIntervalSet dead_;
};

// Returns true once both sides are blocked or p sits on the open segment.
bool Scanner::classify(const Point &ps, const Point &pt, const Point &pq, bool &left, bool &right) const {
    const Orientation o = orient(ps, pt, pq);
    if(o == Orientation::Collinear)
        return on_open_segment(ps, pt, pq);
    if(o == Orientation::CCW) {
        if(!left && in_diamond_triangle(ps, pt, pq, Side::Left, cfg_))
            left = true;
    } else if(!right && in_diamond_triangle(ps, pt, pq, Side::Right, cfg_)) {
        right = true;
    }
    return left && right;
}

bool Scanner::ring_blocks(std::uint32_t s, std::uint32_t t, double tkey, bool &left, bool &right) const {
    const Point &ps = pts_[s];
    const Point &pt = pts_[t];
    const std::size_t m = ring_.size();
    if(m == 0)
        return false;
    if(opts_.full_ring) {
        for(const RingEntry &e : ring_)
            if(classify(ps, pt, pts_[e.id], left, right))
                return true;
        return false;
    }
    const double span = cfg_.max_pseudo_span() + key_margin;
    const std::size_t pos =
        std::lower_bound(ring_.begin(), ring_.end(), RingEntry{tkey, -1.0, 0}) - ring_.begin();
    std::size_t visited = 0;
    for(std::size_t k = 0; k < m; ++k) {
        const RingEntry &e = ring_[(pos + k) % m];
        if(key_ccw_distance(tkey, e.key) > span)
            break;
        ++visited;
        if(classify(ps, pt, pts_[e.id], left, right))
            return true;
    }
    for(std::size_t k = 1; k + visited <= m; ++k) {
        const RingEntry &e = ring_[(pos + m - k) % m];
        if(key_ccw_distance(e.key, tkey) > span)
            break;
        if(classify(ps, pt, pts_[e.id], left, right))
            return true;
    }
    return false;
}

bool Scanner::pruned_blocks(std::uint32_t s, std::uint32_t t, double d2, bool &left, bool &right,
                            DiamondStats &st) const {
    if(pruned_.empty())
        return false;
    const Point &ps = pts_[s];
    const Point &pt = pts_[t];
    BBox region = BBox::of(ps);
    region.expand(pt);
    region.expand(diamond_apex(ps, pt, Side::Left, cfg_));
    region.expand(diamond_apex(ps, pt, Side::Right, cfg_));
    const double pad = 1e-9 * std::max(region.xmax - region.xmin, region.ymax - region.ymin) + 1e-300;
    region.xmin -= pad;
    region.ymin -= pad;
    region.xmax += pad;
    region.ymax += pad;

    std::uint32_t stack[4 * (hilbert_levels + 2)];
    for(std::uint32_t root : pruned_) {
        int top = 0;
        stack[top++] = root;
        while(top > 0) {
            const QuadNode &nd = tree_.node(stack[--top]);
            if(!nd.box.intersects(region) || !(min_squared_distance(nd.box, ps) < d2))
                continue;
            ++st.lazy_node_checks;
            if(nd.is_leaf()) {
                for(std::uint32_t q = nd.lo; q < nd.hi; ++q) {
                    if(q == s || q == t)
                        continue;
                    if(classify(ps, pt, pts_[q], left, right))
                        return true;
                }
            } else {
                for(std::uint32_t c = 0; c < nd.child_count; ++c)
                    stack[top++] = nd.first_child + c;
            }
        }
    }
    return false;
}

void Scanner::scan(std::uint32_t s, std::vector<Edge> &out, DiamondStats &st) {
    ring_.clear();
    pending_.clear();
    pruned_.clear();
    dead_.clear();
    const Point &ps = pts_[s];
    if(opts_.start_fully_covered)
        dead_.insert(-0.5, 4.5);
    else
        dead_.insert(1.0, 3.0);

    auto prune = [&](const KeyInterval &range, std::uint32_t node) {
        if(!dead_.covers(range))
            return false;
        pruned_.push_back(node);
        return true;
    };

    nn_.reset(ps, s, prune);
    Neighbor nb;
    bool aborted = dead_.full_circle();
    while(!aborted && nn_.next(nb, prune)) {
        if(!pending_.empty() && pending_.front().squared_radius < nb.d2) {
            while(!pending_.empty() && pending_.front().squared_radius < nb.d2) {
                std::pop_heap(pending_.begin(), pending_.end(), later);
                dead_.insert(pending_.back().lo, pending_.back().hi);
                pending_.pop_back();
            }
            st.max_intervals = std::max<std::uint64_t>(st.max_intervals, dead_.size());
            if(dead_.full_circle()) {
                aborted = true;
                break;
            }
        }

        ++st.points_visited;
        const std::uint32_t t = nb.id;
        const Point &pt = pts_[t];
        const double tkey = angle_key(ps, pt);
        // active sectors already kill t; the padding absorbs key rounding
        if(lex_less(ps, pt) && !dead_.covers({tkey - 1e-12, tkey + 1e-12, false})) {
            bool left = false, right = false;
            if(!ring_blocks(s, t, tkey, left, right) && !pruned_blocks(s, t, nb.d2, left, right, st))
                out.push_back({std::min(s, t), std::max(s, t)});
        }

        const RingEntry entry{tkey, nb.d2, t};
        auto it = ring_.insert(std::upper_bound(ring_.begin(), ring_.end(), entry), entry);
        if(opts_.use_dead_sectors && ring_.size() >= 2) {
            const std::size_t m = ring_.size();
            const std::size_t pos = static_cast<std::size_t>(it - ring_.begin());
            const Point &pred = pts_[ring_[(pos + m - 1) % m].id];
            const Point &succ = pts_[ring_[(pos + 1) % m].id];
            if(auto ds = dead_sector_from_pair(ps, pred, pt, cfg_))
                add_pending(*ds);
            if(auto ds = dead_sector_from_pair(ps, pt, succ, cfg_))
                add_pending(*ds);
        }
    }
    if(aborted)
        ++st.aborted_early;
    st.nodes_expanded += nn_.nodes_expanded();
}

} // namespace

CandidateEdgeSet candidate_edges(const HilbertOrderedPointSet &pts, const QuadTree &tree, const BaseAngleConfig &cfg,
                                 DiamondStats *stats, const DiamondOptions &opts) {
    const auto start = std::chrono::steady_clock::now();
    DiamondStats local;
    DiamondStats &st = stats ? *stats : local;
    st = {};
    CandidateEdgeSet out;
    out.n = static_cast<std::uint32_t>(pts.size());
    out.edges.reserve(pts.size() * 6);
    Scanner scanner(pts, tree, cfg, opts);
    for(std::uint32_t s = 0; s < pts.size(); ++s)
        scanner.scan(s, out.edges, st);
    std::sort(out.edges.begin(), out.edges.end());
    st.n = pts.size();
    st.edges = out.edges.size();
    st.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return out;
}

const char *diamond_stats_header() { return "n,edges,edges_per_point,aborted_early,wall_ms"; }

std::string diamond_stats_row(const DiamondStats &st) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%llu,%llu,%.6f,%llu,%.3f", static_cast<unsigned long long>(st.n),
                  static_cast<unsigned long long>(st.edges), st.edges_per_point(),
                  static_cast<unsigned long long>(st.aborted_early), st.wall_ms);
    return buf;
}

} // namespace mwt
