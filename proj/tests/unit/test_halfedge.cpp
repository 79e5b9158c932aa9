#include "doctest.h"

#include "mwt/halfedge.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

using namespace mwt;

namespace {

CandidateEdgeSet complete_graph(std::size_t n) {
    CandidateEdgeSet c;
    c.n = static_cast<std::uint32_t>(n);
    for(std::uint32_t a = 0; a < n; ++a)
        for(std::uint32_t b = a + 1; b < n; ++b)
            c.edges.push_back({a, b});
    return c;
}

CandidateEdgeSet from_edges(std::size_t n, std::vector<Edge> e) {
    CandidateEdgeSet c;
    c.n = static_cast<std::uint32_t>(n);
    c.edges = std::move(e);
    return c;
}

bool left_of(const HalfEdgeGraph &g, std::uint32_t h, std::uint32_t w) {
    const auto p = g.points();
    return orient(p[g.source(h)], p[g.target(h)], p[w]) == Orientation::CCW;
}

// Walks from `start` counter-clockwise while targets stay left of h.
std::vector<std::uint32_t> left_walk(const HalfEdgeGraph &g, std::uint32_t h, std::uint32_t start) {
    std::vector<std::uint32_t> out;
    std::uint32_t k = start;
    for(std::uint32_t step = 0; step < g.degree(g.source(start)); ++step) {
        if(!left_of(g, h, g.target(k)))
            break;
        out.push_back(g.target(k));
        k = g.next(k);
    }
    return out;
}

void check_scan_windows(const HalfEdgeGraph &g) {
    for(std::uint32_t h = 0; h < g.num_half_edges(); ++h) {
        const std::uint32_t s = g.source(h), t = g.target(h);
        std::set<std::uint32_t> ns, nt;
        for(std::uint32_t k = g.begin(s); k < g.end(s); ++k)
            if(left_of(g, h, g.target(k)))
                ns.insert(g.target(k));
        for(std::uint32_t k = g.begin(t); k < g.end(t); ++k)
            if(left_of(g, h, g.target(k)))
                nt.insert(g.target(k));
        const auto ws = left_walk(g, h, g.next(h));
        const auto wt = left_walk(g, h, g.j_start(h));
        REQUIRE(ws.size() == ns.size());
        REQUIRE(wt.size() == nt.size());
        CHECK(std::set<std::uint32_t>(ws.begin(), ws.end()) == ns);
        CHECK(std::set<std::uint32_t>(wt.begin(), wt.end()) == nt);
    }
}

} // namespace

TEST_CASE("triangle and square") {
    const std::vector<Point> tri{{0, 0}, {1, 0}, {0, 1}};
    HalfEdgeGraph g(tri, complete_graph(3));
    CHECK(g.num_half_edges() == 6);
    CHECK(g.num_edges() == 3);
    CHECK(g.validate().empty());
    CHECK(mark_hull_edges(g) == 3);
    CHECK(g.hull_count() == 3);
    const std::uint32_t h = g.find(0, 1);
    REQUIRE(h != no_half_edge);
    CHECK(g.source(h) == 0);
    CHECK(g.target(g.next(h)) == 2);
    CHECK(g.target(g.j_start(h)) == 2);
    CHECK(g.is_primary(h));
    CHECK_FALSE(g.is_primary(g.twin(h)));

    const std::vector<Point> sq{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    HalfEdgeGraph q(sq, complete_graph(4));
    CHECK(q.num_half_edges() == 12);
    CHECK(q.validate().empty());
    CHECK(mark_hull_edges(q) == 4);
    CHECK_FALSE(q.hull(q.edge(q.find(0, 2))));
    CHECK_FALSE(q.hull(q.edge(q.find(1, 3))));
    for(std::uint32_t h2 = 0; h2 < q.num_half_edges(); ++h2)
        CHECK(q.next(q.prev(h2)) == h2);
}

TEST_CASE("constructor rejects bad input") {
    const std::vector<Point> two{{0, 0}, {1, 0}};
    CHECK_THROWS_AS(HalfEdgeGraph(two, complete_graph(2)), std::invalid_argument);
    const std::vector<Point> tri{{0, 0}, {1, 0}, {0, 1}};
    CHECK_THROWS_AS(HalfEdgeGraph(tri, from_edges(3, {})), std::invalid_argument);
    CHECK_THROWS_AS(HalfEdgeGraph(tri, from_edges(3, {{0, 3}})), std::invalid_argument);
}

TEST_CASE("radial order around a vertex") {
    const std::vector<Point> p{{0, 0}, {1, 0}, {1, 1}, {0, 1}, {-1, 1}, {-1, 0}, {-1, -1}, {0, -1}, {1, -1}};
    std::vector<Edge> e;
    for(std::uint32_t k = 1; k < 9; ++k)
        e.push_back({0, k});
    HalfEdgeGraph g(p, from_edges(9, e));
    CHECK(g.validate().empty());
    for(std::uint32_t k = 0; k < 8; ++k)
        CHECK(g.target(g.begin(0) + k) == k + 1);
}

TEST_CASE("scan windows on random complete graphs") {
    std::mt19937_64 rng(7);
    for(int rep = 0; rep < 20; ++rep) {
        const auto pts = oracle::random_points(12, rng);
        HalfEdgeGraph g(pts, complete_graph(pts.size()));
        REQUIRE(g.validate().empty());
        check_scan_windows(g);
    }
}

TEST_CASE("scan windows on a grid with collinear points") {
    std::vector<Point> pts;
    for(int x = 0; x < 5; ++x)
        for(int y = 0; y < 5; ++y)
            pts.push_back({double(x), double(y)});
    HalfEdgeGraph g(pts, from_edges(pts.size(), oracle::diamond_edges(pts, BaseAngleConfig{})));
    REQUIRE(g.validate().empty());
    check_scan_windows(g);
    CHECK(mark_hull_edges(g) == 16);
}

TEST_CASE("hull matches the oracle") {
    std::mt19937_64 rng(11);
    for(int rep = 0; rep < 10; ++rep) {
        auto pts = oracle::random_points(40, rng);
        pts.push_back({0.5, -1});
        pts.push_back({0.5, 2});
        pts.push_back({0.25, 2});
        pts.push_back({0.75, 2});
        const auto want = oracle::hull_edges(pts);
        const auto hull = convex_hull(pts);
        std::vector<Edge> got;
        for(std::size_t k = 0; k < hull.size(); ++k) {
            const auto a = hull[k], b = hull[(k + 1) % hull.size()];
            got.push_back({std::min(a, b), std::max(a, b)});
        }
        std::sort(got.begin(), got.end());
        CHECK(got == want);

        HalfEdgeGraph g(pts, from_edges(pts.size(), oracle::diamond_edges(pts, BaseAngleConfig{})));
        CHECK(mark_hull_edges(g) == want.size());
    }
    const std::vector<Point> line{{0, 0}, {1, 1}, {2, 2}};
    CHECK_THROWS_AS(convex_hull(line), std::invalid_argument);
}

TEST_CASE("dump and state reset") {
    const std::vector<Point> sq{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    HalfEdgeGraph g(sq, complete_graph(4));
    g.set_status(0, EdgeStatus::Certain);
    g.set_status(1, EdgeStatus::Impossible);
    g.set_examined(0, true);
    g.scan_i(0) = g.scan_j(0) = 0;
    CHECK(g.count(EdgeStatus::Possible) == 4);
    g.reset_lmt_state();
    CHECK(g.count(EdgeStatus::Possible) == 6);
    CHECK_FALSE(g.examined(0));
    CHECK(g.scan_i(0) == g.next(0));
    std::ostringstream os;
    g.dump(os);
    const std::string out = os.str();
    CHECK(std::count(out.begin(), out.end(), '\n') == 6);
    CHECK(out.find("0 1 possible 0") != std::string::npos);
}
