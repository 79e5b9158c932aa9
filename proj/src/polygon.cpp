#include "mwt/polygon.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <stdexcept>
#include <thread>

namespace mwt {

namespace {

bool in_skeleton(const HalfEdgeGraph &g, std::uint32_t h) {
    const std::uint32_t e = g.edge(h);
    return g.hull(e) || g.status(e) == EdgeStatus::Certain;
}

// Winding number test; p must not lie on the boundary.
bool strictly_inside_polygon(std::span<const Point> pts, const std::vector<std::uint32_t> &cycle, const Point &p) {
    int wn = 0;
    for(std::size_t k = 0; k < cycle.size(); ++k) {
        const Point &a = pts[cycle[k]];
        const Point &b = pts[cycle[(k + 1) % cycle.size()]];
        if(a.y <= p.y) {
            if(b.y > p.y && orient(a, b, p) == Orientation::CCW)
                ++wn;
        } else if(b.y <= p.y && orient(a, b, p) == Orientation::CW) {
            --wn;
        }
    }
    return wn != 0;
}

double signed_area2(std::span<const Point> pts, const std::vector<std::uint32_t> &cycle) {
    double a = 0.0;
    for(std::size_t k = 0; k < cycle.size(); ++k) {
        const Point &p = pts[cycle[k]];
        const Point &q = pts[cycle[(k + 1) % cycle.size()]];
        a += p.x * q.y - q.x * p.y;
    }
    return a;
}

} // namespace

std::vector<PolygonFace> extract_faces(const HalfEdgeGraph &g, const QuadTree &tree) {
    const auto pts = g.points();
    const std::uint32_t H = g.num_half_edges();
    std::vector<std::uint8_t> visited(H, 0);
    std::vector<std::uint32_t> pos(g.num_vertices(), UINT32_MAX);
    std::vector<std::uint32_t> cycle;
    std::vector<PolygonFace> faces;

    for(std::uint32_t start = 0; start < H; ++start) {
        if(visited[start] || !in_skeleton(g, start))
            continue;
        cycle.clear();
        std::uint32_t cur = start;
        do {
            visited[cur] = 1;
            cycle.push_back(cur);
            std::uint32_t k = g.prev(g.twin(cur));
            while(!in_skeleton(g, k))
                k = g.prev(k);
            cur = k;
        } while(cur != start);

        PolygonFace face;
        face.boundary.reserve(cycle.size());
        for(const std::uint32_t h : cycle)
            face.boundary.push_back(g.source(h));
        if(signed_area2(pts, face.boundary) <= 0.0)
            continue; // the unbounded face or the outside of an enclosed component

        std::vector<std::uint32_t> sorted = face.boundary;
        std::sort(sorted.begin(), sorted.end());
        if(std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            face.kind = FaceKind::NonSimple;
            faces.push_back(std::move(face));
            continue;
        }

        BBox box = BBox::of(pts[face.boundary[0]]);
        for(const std::uint32_t v : face.boundary)
            box.expand(pts[v]);
        const bool occupied = tree.any_in_box(box, [&](std::uint32_t p) {
            return box.contains(pts[p]) && !std::binary_search(sorted.begin(), sorted.end(), p) &&
                   strictly_inside_polygon(pts, face.boundary, pts[p]);
        });
        if(occupied) {
            face.kind = FaceKind::NonSimple;
            faces.push_back(std::move(face));
            continue;
        }

        const auto k = static_cast<std::uint32_t>(cycle.size());
        if(k > 3) {
            for(std::uint32_t i = 0; i < k; ++i)
                pos[face.boundary[i]] = i;
            for(std::uint32_t i = 0; i < k; ++i) {
                // Possible edges strictly inside the face's corner at boundary[i]
                const std::uint32_t stop = g.twin(cycle[(i + k - 1) % k]);
                for(std::uint32_t h = g.next(cycle[i]); h != stop; h = g.next(h)) {
                    if(g.half_status(h) != EdgeStatus::Possible || g.hull(g.edge(h)))
                        continue;
                    const std::uint32_t j = pos[g.target(h)];
                    if(j != UINT32_MAX && i < j)
                        face.chord_pool.emplace_back(i, j);
                }
            }
            for(const std::uint32_t v : face.boundary)
                pos[v] = UINT32_MAX;
            std::sort(face.chord_pool.begin(), face.chord_pool.end());
        }
        faces.push_back(std::move(face));
    }
    return faces;
}

FaceSolution triangulate_face(const PolygonFace &face, std::span<const Point> points) {
    if(face.kind != FaceKind::Simple)
        throw std::invalid_argument("only simple faces can be triangulated");
    const auto k = static_cast<std::uint32_t>(face.boundary.size());
    FaceSolution sol;
    if(k <= 3)
        return sol;

    constexpr double inf = std::numeric_limits<double>::infinity();
    const std::size_t kk = k;
    // c: cost of a usable side or chord (0 for polygon sides), inf otherwise
    std::vector<double> c(kk * kk, inf);
    std::vector<std::vector<std::uint32_t>> nbr(k);
    for(std::uint32_t i = 0; i + 1 < k; ++i) {
        c[i * kk + i + 1] = 0.0;
        nbr[i].push_back(i + 1);
    }
    c[0 * kk + (k - 1)] = 0.0;
    for(const auto &[i, j] : face.chord_pool) {
        if(j == i + 1 || (i == 0 && j == k - 1))
            continue;
        c[i * kk + j] = distance(points[face.boundary[i]], points[face.boundary[j]]);
        nbr[i].push_back(j);
    }
    for(auto &n : nbr)
        std::sort(n.begin(), n.end());

    std::vector<double> W(kk * kk, inf);
    std::vector<std::uint32_t> choice(kk * kk, UINT32_MAX);
    for(std::uint32_t i = 0; i + 1 < k; ++i)
        W[i * kk + i + 1] = 0.0;
    for(std::uint32_t len = 2; len < k; ++len) {
        for(std::uint32_t i = 0; i + len < k; ++i) {
            const std::uint32_t m = i + len;
            if(c[i * kk + m] == inf)
                continue; // W(i, m) is only ever needed for usable pairs
            double best = inf;
            std::uint32_t arg = UINT32_MAX;
            for(const std::uint32_t j : nbr[i]) {
                if(j >= m)
                    break;
                const double cjm = c[j * kk + m];
                if(cjm == inf)
                    continue;
                const double v = W[i * kk + j] + W[j * kk + m] + c[i * kk + j] + cjm;
                if(v < best) {
                    best = v;
                    arg = j;
                }
            }
            W[i * kk + m] = best;
            choice[i * kk + m] = arg;
        }
    }
    if(W[0 * kk + (k - 1)] == inf)
        throw std::logic_error("face has no triangulation from its chord pool");

    std::vector<std::pair<std::uint32_t, std::uint32_t>> todo{{0, k - 1}};
    while(!todo.empty()) {
        const auto [i, m] = todo.back();
        todo.pop_back();
        if(m - i < 2)
            continue;
        const std::uint32_t j = choice[i * kk + m];
        for(const auto &[a, b] : {std::pair{i, j}, std::pair{j, m}}) {
            if(b - a >= 2) {
                const std::uint32_t u = face.boundary[a], v = face.boundary[b];
                sol.chords.push_back({std::min(u, v), std::max(u, v)});
                todo.emplace_back(a, b);
            }
        }
    }
    std::sort(sol.chords.begin(), sol.chords.end());
    // sum in chord order
    for(const Edge &e : sol.chords)
        sol.weight += distance(points[e.a], points[e.b]);
    return sol;
}

std::vector<FaceSolution> triangulate_faces(const std::vector<PolygonFace> &faces, std::span<const Point> points,
                                            unsigned threads) {
    std::vector<FaceSolution> out(faces.size());
    std::atomic<std::size_t> cursor{0};
    auto worker = [&] {
        for(std::size_t f; (f = cursor.fetch_add(1, std::memory_order_relaxed)) < faces.size();)
            if(faces[f].kind == FaceKind::Simple)
                out[f] = triangulate_face(faces[f], points);
    };
    if(threads <= 1) {
        worker();
        return out;
    }
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    for(unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            try {
                worker();
            } catch(...) {
                if(!failed.exchange(true))
                    failure = std::current_exception();
            }
        });
    }
    for(auto &t : pool)
        t.join();
    if(failure)
        std::rethrow_exception(failure);
    return out;
}

TriangulationResult assemble(const HalfEdgeGraph &g, const std::vector<PolygonFace> &faces,
                             const std::vector<FaceSolution> &solutions) {
    const auto pts = g.points();
    TriangulationResult r;
    for(std::uint32_t e = 0; e < g.num_edges(); ++e) {
        if(!g.hull(e) && g.status(e) != EdgeStatus::Certain)
            continue;
        const std::uint32_t h = g.primary(e);
        const std::uint32_t a = g.source(h), b = g.target(h);
        r.edges.push_back({std::min(a, b), std::max(a, b)});
        r.weight += distance(pts[a], pts[b]);
    }
    for(std::size_t f = 0; f < faces.size(); ++f) {
        if(faces[f].kind == FaceKind::NonSimple) {
            ++r.faces_nonsimple;
            continue;
        }
        if(faces[f].boundary.size() == 3) {
            ++r.faces_triangles;
            continue;
        }
        ++r.faces_simple;
        r.edges.insert(r.edges.end(), solutions[f].chords.begin(), solutions[f].chords.end());
        r.weight += solutions[f].weight;
    }
    std::sort(r.edges.begin(), r.edges.end());
    r.complete = r.faces_nonsimple == 0;
    return r;
}

} // namespace mwt
