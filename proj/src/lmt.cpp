#include "mwt/lmt.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mwt {

LmtEngine::LmtEngine(HalfEdgeGraph &g, const QuadTree *tree, LmtOptions opts) : g_(g), tree_(tree), opts_(opts) {
    if(opts_.exact_triangles && !tree_)
        throw std::invalid_argument("exact triangle checks need a point tree");
}

bool LmtEngine::strictly_left(std::uint32_t a, std::uint32_t b, std::uint32_t p) const {
    const auto pts = g_.points();
    return orient(pts[a], pts[b], pts[p]) == Orientation::CCW;
}

bool LmtEngine::triangle_usable(std::uint32_t a, std::uint32_t b, std::uint32_t c) {
    if(!opts_.exact_triangles)
        return true;
    ++counters_.triangle_checks;
    const auto pts = g_.points();
    const Point &pa = pts[a], &pb = pts[b], &pc = pts[c];
    BBox box = BBox::of(pa);
    box.expand(pb);
    box.expand(pc);
    const bool hit = tree_->any_in_box(box, [&](std::uint32_t p) {
        return box.contains(pts[p]) && p != a && p != b && p != c && strictly_inside_triangle(pa, pb, pc, pts[p]);
    });
    if(hit)
        ++counters_.nonempty_triangles;
    return !hit;
}

ScanResult LmtEngine::settle(std::uint32_t h, std::uint32_t &i, std::uint32_t &j) {
    const std::uint32_t s = g_.source(h), t = g_.target(h);
    for(;;) {
        while(g_.half_status(i) == EdgeStatus::Impossible)
            i = g_.next(i);
        const std::uint32_t a = g_.target(i);
        if(!strictly_left(s, t, a))
            return ScanResult::Exhausted;
        while(g_.half_status(j) == EdgeStatus::Impossible)
            j = g_.next(j);
        const std::uint32_t b = g_.target(j);
        if(!strictly_left(s, t, b))
            return ScanResult::Exhausted;
        if(a == b) {
            if(triangle_usable(s, t, a))
                return ScanResult::Found;
            i = g_.next(i);
        } else if(strictly_left(t, b, a)) {
            j = g_.next(j);
        } else {
            i = g_.next(i);
        }
    }
}

ScanResult LmtEngine::advance(std::uint32_t h) {
    g_.scan_i(h) = g_.next(g_.scan_i(h));
    return settle(h, g_.scan_i(h), g_.scan_j(h));
}

bool LmtEngine::locally_minimal(std::uint32_t s, std::uint32_t t, std::uint32_t v, std::uint32_t w) const {
    const auto pts = g_.points();
    const Orientation os = orient(pts[v], pts[w], pts[s]);
    const Orientation ot = orient(pts[v], pts[w], pts[t]);
    if(os == Orientation::Collinear || ot == Orientation::Collinear || os == ot)
        return true;
    return squared_distance(pts[s], pts[t]) <= squared_distance(pts[v], pts[w]);
}

bool LmtEngine::find_certificate(std::uint32_t e) {
    const std::uint32_t p = g_.primary(e), q = g_.twin(p);
    const std::uint32_t s = g_.source(p), t = g_.target(p);
    for(;;) {
        const std::uint32_t before = g_.scan_i(p);
        if(settle(p, g_.scan_i(p), g_.scan_j(p)) == ScanResult::Exhausted)
            return false;
        if(g_.scan_i(p) != before)
            g_.reset_scan(q);
        const std::uint32_t v = g_.target(g_.scan_i(p));
        while(settle(q, g_.scan_i(q), g_.scan_j(q)) == ScanResult::Found) {
            if(locally_minimal(s, t, v, g_.target(g_.scan_i(q))))
                return true;
            g_.scan_i(q) = g_.next(g_.scan_i(q));
        }
        g_.scan_i(p) = g_.next(g_.scan_i(p));
        g_.reset_scan(q);
    }
}

void LmtEngine::restack(std::uint32_t e, WorkStack &stack) {
    const std::uint32_t pe = g_.primary(e);
    const std::uint32_t ends[2] = {g_.source(pe), g_.target(pe)};
    for(int k = 0; k < 2; ++k) {
        const std::uint32_t x = ends[k], other = ends[1 - k];
        for(std::uint32_t h = g_.begin(x); h < g_.end(x); ++h) {
            const std::uint32_t f = g_.edge(h);
            if(f == e || g_.hull(f) || !g_.examined(f) || g_.on_stack(f) || g_.status(f) == EdgeStatus::Impossible)
                continue;
            const std::uint32_t pf = g_.primary(f);
            if(g_.target(g_.scan_i(pf)) == other || g_.target(g_.scan_i(g_.twin(pf))) == other) {
                note_mutation(f);
                stack.push(g_, f);
                ++counters_.restacked;
            }
        }
    }
}

void LmtEngine::process(std::uint32_t e, WorkStack &stack) {
    note_mutation(e);
    g_.set_examined(e, true);
    if(g_.hull(e) || g_.status(e) == EdgeStatus::Impossible)
        return;
    ++counters_.processed;
    if(!find_certificate(e)) {
        g_.set_status(e, EdgeStatus::Impossible);
        ++counters_.killed;
        restack(e, stack);
    }
}

void LmtEngine::drain(WorkStack &stack) {
    while(!stack.empty())
        process(stack.pop(g_), stack);
}

void LmtEngine::sweep(std::uint32_t lo, std::uint32_t hi, std::vector<std::uint32_t> *deferred) {
    WorkStack stack;
    for(std::uint32_t v = lo; v < hi; ++v) {
        for(std::uint32_t h = g_.begin(v); h < g_.end(v); ++h) {
            if(!g_.is_primary(h))
                continue;
            const std::uint32_t e = g_.edge(h);
            if(g_.examined(e))
                continue;
            const std::uint32_t t = g_.target(h);
            if(t < lo || t >= hi) {
                if(deferred)
                    deferred->push_back(e);
                continue;
            }
            process(e, stack);
            drain(stack);
        }
    }
}

void LmtEngine::run() { sweep(0, g_.num_vertices(), nullptr); }

bool LmtEngine::has_certificate_with(std::uint32_t h, std::uint32_t c) {
    if(g_.hull(g_.edge(h)))
        return true;
    const std::uint32_t a = g_.source(h), b = g_.target(h);
    std::uint32_t i = g_.next(h), j = g_.j_start(h);
    while(settle(h, i, j) == ScanResult::Found) {
        if(locally_minimal(a, b, g_.target(i), c))
            return true;
        i = g_.next(i);
    }
    return false;
}

bool LmtEngine::plus_certified(std::uint32_t e) {
    const std::uint32_t p = g_.primary(e), q = g_.twin(p);
    const std::uint32_t s = g_.source(p), t = g_.target(p);
    std::uint32_t ip = g_.next(p), jp = g_.j_start(p);
    while(settle(p, ip, jp) == ScanResult::Found) {
        const std::uint32_t v = g_.target(ip);
        const bool left_ok = has_certificate_with(g_.find(s, v), t) && has_certificate_with(g_.find(v, t), s);
        if(left_ok) {
            std::uint32_t iq = g_.next(q), jq = g_.j_start(q);
            while(settle(q, iq, jq) == ScanResult::Found) {
                const std::uint32_t w = g_.target(iq);
                if(locally_minimal(s, t, v, w) && has_certificate_with(g_.find(w, s), t) &&
                   has_certificate_with(g_.find(t, w), s))
                    return true;
                iq = g_.next(iq);
            }
        }
        ip = g_.next(ip);
    }
    return false;
}

void LmtEngine::run_plus() {
    WorkStack stack;
    auto push_possible = [&](std::uint32_t f) {
        if(!g_.hull(f) && g_.status(f) == EdgeStatus::Possible)
            stack.push(g_, f);
    };
    for(std::uint32_t e = g_.num_edges(); e-- > 0;)
        push_possible(e);
    while(!stack.empty()) {
        const std::uint32_t e = stack.pop(g_);
        if(g_.status(e) != EdgeStatus::Possible || g_.hull(e))
            continue;
        ++counters_.processed;
        if(plus_certified(e))
            continue;
        g_.set_status(e, EdgeStatus::Impossible);
        ++counters_.killed;
        const std::uint32_t pe = g_.primary(e);
        for(const std::uint32_t x : {g_.source(pe), g_.target(pe)}) {
            for(std::uint32_t h = g_.begin(x); h < g_.end(x); ++h) {
                push_possible(g_.edge(h));
                const std::uint32_t u = g_.target(h);
                for(std::uint32_t h2 = g_.begin(u); h2 < g_.end(u); ++h2)
                    push_possible(g_.edge(h2));
            }
        }
    }
}

std::uint32_t mark_certain_pass(HalfEdgeGraph &g) {
    const auto pts = g.points();
    std::uint32_t marked = 0;
    for(std::uint32_t e = 0; e < g.num_edges(); ++e) {
        if(g.hull(e) && g.status(e) != EdgeStatus::Certain) {
            g.set_status(e, EdgeStatus::Certain);
            ++marked;
        }
    }

    std::vector<std::uint32_t> active;
    for(std::uint32_t e = 0; e < g.num_edges(); ++e)
        if(g.status(e) != EdgeStatus::Impossible)
            active.push_back(e);
    if(active.empty())
        return marked;

    const BBox bounds = bounding_box(pts);
    const auto cells = static_cast<std::uint32_t>(
        std::clamp(std::ceil(std::sqrt(static_cast<double>(active.size()))), 1.0, 4096.0));
    const double w = std::max(bounds.xmax - bounds.xmin, 1e-300);
    const double h = std::max(bounds.ymax - bounds.ymin, 1e-300);
    auto cx = [&](double x) {
        return std::min(cells - 1, static_cast<std::uint32_t>(std::max(0.0, (x - bounds.xmin) / w * cells)));
    };
    auto cy = [&](double y) {
        return std::min(cells - 1, static_cast<std::uint32_t>(std::max(0.0, (y - bounds.ymin) / h * cells)));
    };
    struct Span {
        std::uint32_t x0, x1, y0, y1;
    };
    auto span_of = [&](std::uint32_t e) {
        const std::uint32_t p = g.primary(e);
        const Point &a = pts[g.source(p)], &b = pts[g.target(p)];
        return Span{cx(std::min(a.x, b.x)), cx(std::max(a.x, b.x)), cy(std::min(a.y, b.y)), cy(std::max(a.y, b.y))};
    };

    std::vector<std::uint32_t> start(static_cast<std::size_t>(cells) * cells + 1, 0);
    for(const std::uint32_t e : active) {
        const Span sp = span_of(e);
        for(std::uint32_t y = sp.y0; y <= sp.y1; ++y)
            for(std::uint32_t x = sp.x0; x <= sp.x1; ++x)
                ++start[y * cells + x + 1];
    }
    for(std::size_t k = 1; k < start.size(); ++k)
        start[k] += start[k - 1];
    std::vector<std::uint32_t> slots(start.back());
    {
        std::vector<std::uint32_t> fill(start.begin(), start.end() - 1);
        for(const std::uint32_t e : active) {
            const Span sp = span_of(e);
            for(std::uint32_t y = sp.y0; y <= sp.y1; ++y)
                for(std::uint32_t x = sp.x0; x <= sp.x1; ++x)
                    slots[fill[y * cells + x]++] = e;
        }
    }

    for(const std::uint32_t e : active) {
        if(g.status(e) != EdgeStatus::Possible)
            continue;
        const std::uint32_t p = g.primary(e);
        const Point &a = pts[g.source(p)], &b = pts[g.target(p)];
        const Span sp = span_of(e);
        bool crossed = false;
        for(std::uint32_t y = sp.y0; y <= sp.y1 && !crossed; ++y) {
            for(std::uint32_t x = sp.x0; x <= sp.x1 && !crossed; ++x) {
                const std::uint32_t c = y * cells + x;
                for(std::uint32_t k = start[c]; k < start[c + 1]; ++k) {
                    const std::uint32_t f = slots[k];
                    if(f == e)
                        continue;
                    const std::uint32_t pf = g.primary(f);
                    if(segments_properly_intersect(a, b, pts[g.source(pf)], pts[g.target(pf)])) {
                        crossed = true;
                        break;
                    }
                }
            }
        }
        if(!crossed) {
            g.set_status(e, EdgeStatus::Certain);
            ++marked;
        }
    }
    return marked;
}

std::uint64_t triangulation_edge_count(std::uint32_t n, std::uint32_t hull_edges) {
    return 3ull * n - hull_edges - 3;
}

} // namespace mwt
