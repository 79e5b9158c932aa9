#include "mwt/halfedge.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace mwt {

const char *to_string(EdgeStatus s) {
    switch(s) {
    case EdgeStatus::Possible:
        return "possible";
    case EdgeStatus::Certain:
        return "certain";
    case EdgeStatus::Impossible:
        return "impossible";
    }
    return "?";
}

namespace {

inline bool upper_half(const Point &from, const Point &to) {
    return to.y > from.y || (to.y == from.y && to.x > from.x);
}

// angle(t - s) < angle(w - t), both measured from 0 in [0, 2 pi)
inline bool continued_before(const Point &s, const Point &t, const Point &w) {
    const bool hu = upper_half(s, t);
    const bool hv = upper_half(t, w);
    if(hu != hv)
        return hu;
    return orient(s, t, w) == Orientation::CCW;
}

} // namespace

HalfEdgeGraph::HalfEdgeGraph(std::span<const Point> points, const CandidateEdgeSet &cand) : points_(points) {
    const auto n = static_cast<std::uint32_t>(points.size());
    if(n < 3)
        throw std::invalid_argument("a triangulation needs at least 3 points");
    if(cand.edges.empty())
        throw std::invalid_argument("empty candidate edge set");
    const auto m = static_cast<std::uint32_t>(cand.edges.size());

    offsets_.assign(n + 1, 0);
    for(const Edge &e : cand.edges) {
        if(e.a >= n || e.b >= n || e.a == e.b)
            throw std::invalid_argument("candidate edge refers to an invalid vertex");
        ++offsets_[e.a + 1];
        ++offsets_[e.b + 1];
    }
    std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());

    const std::uint32_t H = 2 * m;
    target_.resize(H);
    edge_.resize(H);
    {
        std::vector<std::uint32_t> fill(offsets_.begin(), offsets_.end() - 1);
        for(std::uint32_t e = 0; e < m; ++e) {
            const Edge &ed = cand.edges[e];
            std::uint32_t h = fill[ed.a]++;
            target_[h] = ed.b;
            edge_[h] = e;
            h = fill[ed.b]++;
            target_[h] = ed.a;
            edge_[h] = e;
        }
    }

    std::vector<std::pair<std::uint32_t, std::uint32_t>> slot;
    for(std::uint32_t v = 0; v < n; ++v) {
        const std::uint32_t lo = offsets_[v], hi = offsets_[v + 1];
        slot.clear();
        for(std::uint32_t h = lo; h < hi; ++h)
            slot.emplace_back(target_[h], edge_[h]);
        const Point &o = points[v];
        std::sort(slot.begin(), slot.end(),
                  [&](const auto &a, const auto &b) { return radial_less(o, points[a.first], points[b.first]); });
        for(std::uint32_t k = 0; k < slot.size(); ++k) {
            target_[lo + k] = slot[k].first;
            edge_[lo + k] = slot[k].second;
        }
    }

    // twins: each edge has exactly one half-edge at each endpoint
    std::vector<std::uint32_t> first_half(m, no_half_edge);
    twin_.assign(H, no_half_edge);
    for(std::uint32_t h = 0; h < H; ++h) {
        const std::uint32_t e = edge_[h];
        if(first_half[e] == no_half_edge) {
            first_half[e] = h;
        } else {
            twin_[h] = first_half[e];
            twin_[first_half[e]] = h;
        }
    }

    next_.resize(H);
    for(std::uint32_t v = 0; v < n; ++v) {
        const std::uint32_t lo = offsets_[v], hi = offsets_[v + 1];
        for(std::uint32_t h = lo; h < hi; ++h)
            next_[h] = h + 1 == hi ? lo : h + 1;
    }

    primary_.resize(m);
    for(std::uint32_t e = 0; e < m; ++e) {
        const std::uint32_t h = first_half[e];
        primary_[e] = lex_less(points[target_[twin_[h]]], points[target_[h]]) ? h : twin_[h];
    }

    j_start_.resize(H);
    for(std::uint32_t h = 0; h < H; ++h) {
        const Point &s = points[target_[twin_[h]]];
        const std::uint32_t tv = target_[h];
        const Point &t = points[tv];
        const std::uint32_t lo = offsets_[tv], hi = offsets_[tv + 1];
        // first outgoing edge of t strictly counter-clockwise of the ray s->t continued
        std::uint32_t k = lo;
        std::uint32_t len = hi - lo;
        while(len > 0) {
            const std::uint32_t half = len / 2;
            if(!continued_before(s, t, points[target_[k + half]])) {
                k += half + 1;
                len -= half + 1;
            } else {
                len = half;
            }
        }
        j_start_[h] = k == hi ? lo : k;
    }

    i_ = next_;
    j_ = j_start_;
    status_.assign(m, static_cast<std::uint8_t>(EdgeStatus::Possible));
    hull_.assign(m, 0);
    examined_.assign(m, 0);
    on_stack_.assign(m, 0);
}

std::uint32_t HalfEdgeGraph::prev(std::uint32_t h) const {
    const std::uint32_t v = source(h);
    return h == offsets_[v] ? offsets_[v + 1] - 1 : h - 1;
}

std::uint32_t HalfEdgeGraph::find(std::uint32_t a, std::uint32_t b) const {
    for(std::uint32_t h = offsets_[a]; h < offsets_[a + 1]; ++h)
        if(target_[h] == b)
            return h;
    return no_half_edge;
}

void HalfEdgeGraph::reset_lmt_state() {
    std::fill(status_.begin(), status_.end(), static_cast<std::uint8_t>(EdgeStatus::Possible));
    std::fill(examined_.begin(), examined_.end(), 0);
    std::fill(on_stack_.begin(), on_stack_.end(), 0);
    i_ = next_;
    j_ = j_start_;
}

std::vector<EdgeStatus> HalfEdgeGraph::statuses() const {
    std::vector<EdgeStatus> out(status_.size());
    for(std::size_t e = 0; e < out.size(); ++e)
        out[e] = static_cast<EdgeStatus>(status_[e]);
    return out;
}

std::uint32_t HalfEdgeGraph::count(EdgeStatus s) const {
    return static_cast<std::uint32_t>(std::count(status_.begin(), status_.end(), static_cast<std::uint8_t>(s)));
}

std::uint32_t HalfEdgeGraph::hull_count() const {
    return static_cast<std::uint32_t>(std::count(hull_.begin(), hull_.end(), 1));
}

std::string HalfEdgeGraph::validate() const {
    std::ostringstream err;
    const std::uint32_t H = num_half_edges();
    for(std::uint32_t v = 0; v < num_vertices(); ++v) {
        for(std::uint32_t h = begin(v); h < end(v); ++h) {
            if(source(h) != v)
                err << "half-edge " << h << " stored under the wrong vertex\n";
            const std::uint32_t nx = next_[h];
            if(nx < begin(v) || nx >= end(v))
                err << "next of " << h << " leaves its vertex range\n";
            if(degree(v) > 1 && h + 1 < end(v) &&
               !radial_less(points_[v], points_[target_[h]], points_[target_[h + 1]]))
                err << "radial order broken at vertex " << v << "\n";
        }
    }
    for(std::uint32_t h = 0; h < H; ++h) {
        if(twin_[h] >= H || twin_[twin_[h]] != h)
            err << "twin mismatch at " << h << "\n";
        else if(edge_[twin_[h]] != edge_[h])
            err << "twin edge id mismatch at " << h << "\n";
        if(target_[h] == source(h))
            err << "loop at " << h << "\n";
    }
    for(std::uint32_t e = 0; e < num_edges(); ++e) {
        const std::uint32_t h = primary_[e];
        if(edge_[h] != e)
            err << "primary of edge " << e << " has the wrong id\n";
        else if(!lex_less(points_[source(h)], points_[target(h)]))
            err << "primary of edge " << e << " not from the smaller endpoint\n";
        if(hull_[e] && status_[e] == static_cast<std::uint8_t>(EdgeStatus::Impossible))
            err << "hull edge " << e << " marked impossible\n";
    }
    return err.str();
}

void HalfEdgeGraph::dump(std::ostream &os, std::span<const std::uint32_t> ids) const {
    for(std::uint32_t e = 0; e < num_edges(); ++e) {
        const std::uint32_t h = primary_[e];
        std::uint32_t a = source(h), b = target(h);
        if(!ids.empty()) {
            a = ids[a];
            b = ids[b];
        }
        os << a << ' ' << b << ' ' << to_string(status(e)) << ' ' << (hull(e) ? 1 : 0) << '\n';
    }
}

std::vector<std::uint32_t> convex_hull(std::span<const Point> pts) {
    const auto n = static_cast<std::uint32_t>(pts.size());
    if(n < 3)
        throw std::invalid_argument("convex hull needs at least 3 points");
    std::vector<std::uint32_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0u);
    std::sort(idx.begin(), idx.end(), [&](std::uint32_t a, std::uint32_t b) { return lex_less(pts[a], pts[b]); });
    std::vector<std::uint32_t> hull;
    hull.reserve(2 * n);
    for(int pass = 0; pass < 2; ++pass) {
        const std::size_t base = hull.size();
        for(std::uint32_t p : idx) {
            // pop only on strict right turns so collinear boundary points stay
            while(hull.size() >= base + 2 &&
                  orient(pts[hull[hull.size() - 2]], pts[hull.back()], pts[p]) == Orientation::CW)
                hull.pop_back();
            hull.push_back(p);
        }
        hull.pop_back();
        std::reverse(idx.begin(), idx.end());
    }
    // all points collinear: both chains walk the same segment
    bool flat = true;
    for(std::size_t k = 2; k < hull.size() && flat; ++k)
        flat = orient(pts[hull[0]], pts[hull[1]], pts[hull[k]]) == Orientation::Collinear;
    if(flat)
        throw std::invalid_argument("all points are collinear; no triangulation exists");
    return hull;
}

std::uint32_t mark_hull_edges(HalfEdgeGraph &g) {
    const auto hull = convex_hull(g.points());
    std::uint32_t count = 0;
    for(std::size_t k = 0; k < hull.size(); ++k) {
        const std::uint32_t a = hull[k], b = hull[(k + 1) % hull.size()];
        const std::uint32_t h = g.find(a, b);
        if(h == no_half_edge)
            throw std::logic_error("hull edge missing from the candidate graph");
        g.set_hull(g.edge(h), true);
        ++count;
    }
    return count;
}

} // namespace mwt
