#include "doctest.h"

#include "fixture.hpp"
#include "mwt/lmt.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <random>
#include <set>

using namespace mwt;
using test::Instance;

namespace {

std::uint32_t vertex_of(const Instance &in, std::uint32_t input_id) {
    for(std::uint32_t v = 0; v < in.h.original_index.size(); ++v)
        if(in.h.original_index[v] == input_id)
            return v;
    return UINT32_MAX;
}

std::uint32_t edge_between(const Instance &in, std::uint32_t a, std::uint32_t b) {
    const std::uint32_t h = in.g.find(vertex_of(in, a), vertex_of(in, b));
    REQUIRE(h != no_half_edge);
    return in.g.edge(h);
}

void run_lmt(Instance &in, bool plus) {
    LmtEngine eng(in.g, &in.tree);
    eng.run();
    mark_certain_pass(in.g);
    if(plus) {
        eng.run_plus();
        mark_certain_pass(in.g);
    }
}

std::set<Edge> input_edges_with(const Instance &in, EdgeStatus st) {
    std::set<Edge> out;
    for(std::uint32_t e = 0; e < in.g.num_edges(); ++e)
        if(in.g.status(e) == st)
            out.insert(in.input_edge(e));
    return out;
}

// All apexes w left of h with both sides present, not Impossible, and the
// triangle free of points.
std::set<std::uint32_t> empty_apexes(const Instance &in, std::uint32_t h) {
    const auto pts = in.g.points();
    const std::uint32_t s = in.g.source(h), t = in.g.target(h);
    std::set<std::uint32_t> out;
    for(std::uint32_t w = 0; w < in.g.num_vertices(); ++w) {
        if(orient(pts[s], pts[t], pts[w]) != Orientation::CCW)
            continue;
        const std::uint32_t a = in.g.find(s, w), b = in.g.find(t, w);
        if(a == no_half_edge || b == no_half_edge)
            continue;
        if(in.g.half_status(a) == EdgeStatus::Impossible || in.g.half_status(b) == EdgeStatus::Impossible)
            continue;
        bool empty = true;
        for(std::uint32_t p = 0; p < pts.size() && empty; ++p)
            empty = !strictly_inside_triangle(pts[s], pts[t], pts[w], pts[p]);
        if(empty)
            out.insert(w);
    }
    return out;
}

} // namespace

TEST_CASE("advance on a convex quadrilateral") {
    // 0 (0,0), 1 (4,0), 2 (5,3), 3 (0,2); diagonal 0-2 has apexes 1 and 3
    Instance in({{0, 0}, {4, 0}, {5, 3}, {0, 2}}, Instance::Edges::AllPairs);
    LmtEngine eng(in.g, &in.tree);
    const std::uint32_t h = in.g.find(vertex_of(in, 0), vertex_of(in, 2));
    REQUIRE(h != no_half_edge);
    CHECK(eng.settle(h, in.g.scan_i(h), in.g.scan_j(h)) == ScanResult::Found);
    CHECK(in.h.original_index[in.g.target(in.g.scan_i(h))] == 3);
    CHECK(eng.advance(h) == ScanResult::Exhausted);
    const std::uint32_t q = in.g.twin(h);
    CHECK(eng.settle(q, in.g.scan_i(q), in.g.scan_j(q)) == ScanResult::Found);
    CHECK(in.h.original_index[in.g.target(in.g.scan_i(q))] == 1);

    // hull edge 0->1 has nothing on its right
    const std::uint32_t r = in.g.find(vertex_of(in, 1), vertex_of(in, 0));
    CHECK(eng.settle(r, in.g.scan_i(r), in.g.scan_j(r)) == ScanResult::Exhausted);
}

TEST_CASE("advance with a missing side returns a non-empty triangle unless checked") {
    // s t w triangle with p inside; edge s-p absent
    const std::vector<Point> pts{{0, 0}, {4, 0}, {2, 3}, {2, 1}};
    auto h = hilbert_sort(pts);
    QuadTree tree(h);
    auto id = [&](std::uint32_t k) {
        return static_cast<std::uint32_t>(std::find(h.original_index.begin(), h.original_index.end(), k) -
                                          h.original_index.begin());
    };
    CandidateEdgeSet c;
    c.n = 4;
    for(auto [a, b] : {std::pair{0u, 1u}, {0u, 2u}, {1u, 2u}, {1u, 3u}, {2u, 3u}})
        c.edges.push_back({std::min(id(a), id(b)), std::max(id(a), id(b))});
    std::sort(c.edges.begin(), c.edges.end());

    HalfEdgeGraph g(h.points, c);
    const std::uint32_t e = g.find(id(0), id(1));
    {
        LmtEngine tolerant(g, nullptr, LmtOptions{false});
        std::uint32_t i = g.next(e), j = g.j_start(e);
        REQUIRE(tolerant.settle(e, i, j) == ScanResult::Found);
        CHECK(g.target(i) == id(2));
        CHECK(strictly_inside_triangle(pts[0], pts[1], pts[2], pts[3]));
    }
    LmtEngine exact(g, &tree);
    std::uint32_t i = g.next(e), j = g.j_start(e);
    CHECK(exact.settle(e, i, j) == ScanResult::Exhausted);
    CHECK(exact.counters().nonempty_triangles == 1);
    CHECK_THROWS_AS(LmtEngine(g, nullptr), std::invalid_argument);
}

TEST_CASE("scan enumerates exactly the empty triangles") {
    std::mt19937_64 rng(3);
    for(int rep = 0; rep < 30; ++rep) {
        const bool all_pairs = rep % 2 == 0;
        Instance in(oracle::random_points(all_pairs ? 14 : 60, rng),
                    all_pairs ? Instance::Edges::AllPairs : Instance::Edges::Diamond);
        std::bernoulli_distribution kill(0.3);
        if(rep % 3 == 0)
            for(std::uint32_t e = 0; e < in.g.num_edges(); ++e)
                if(!in.g.hull(e) && kill(rng))
                    in.g.set_status(e, EdgeStatus::Impossible);
        LmtEngine eng(in.g, &in.tree);
        for(std::uint32_t h = 0; h < in.g.num_half_edges(); ++h) {
            if(in.g.half_status(h) == EdgeStatus::Impossible)
                continue;
            std::set<std::uint32_t> got;
            std::uint32_t i = in.g.next(h), j = in.g.j_start(h);
            while(eng.settle(h, i, j) == ScanResult::Found) {
                got.insert(in.g.target(i));
                i = in.g.next(i);
            }
            REQUIRE(got == empty_apexes(in, h));
        }
    }
}

TEST_CASE("certificates on a convex quadrilateral") {
    // diagonals 0-2 (length sqrt 34) and 1-3 (sqrt 20)
    Instance in({{0, 0}, {4, 0}, {5, 3}, {0, 2}}, Instance::Edges::AllPairs);
    LmtEngine eng(in.g, &in.tree);
    CHECK_FALSE(eng.find_certificate(edge_between(in, 0, 2)));
    CHECK(eng.find_certificate(edge_between(in, 1, 3)));

    in.g.reset_lmt_state();
    eng.run();
    CHECK(in.g.status(edge_between(in, 0, 2)) == EdgeStatus::Impossible);
    CHECK(in.g.status(edge_between(in, 1, 3)) == EdgeStatus::Possible);
    CHECK(in.g.hull_count() == 4);
    CHECK(mark_certain_pass(in.g) == 5);
    CHECK(in.g.status(edge_between(in, 1, 3)) == EdgeStatus::Certain);
}

TEST_CASE("unique triangulation survives completely") {
    Instance in({{0, 0}, {3, 0}, {0, 3}, {1, 1}}, Instance::Edges::AllPairs);
    run_lmt(in, false);
    CHECK(in.g.count(EdgeStatus::Certain) == 6);
    const auto before = in.g.statuses();
    LmtEngine eng(in.g, &in.tree);
    eng.run_plus();
    CHECK(in.g.statuses() == before);
    CHECK(eng.counters().killed == 0);
}

TEST_CASE("co-circular square keeps both diagonals possible") {
    Instance in({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, Instance::Edges::AllPairs);
    run_lmt(in, true);
    CHECK(in.g.status(edge_between(in, 0, 2)) == EdgeStatus::Possible);
    CHECK(in.g.status(edge_between(in, 1, 3)) == EdgeStatus::Possible);
    CHECK(in.g.count(EdgeStatus::Certain) == 4);
}

TEST_CASE("restack only pushes dependents once") {
    Instance in({{0, 0}, {4, 0}, {5, 3}, {0, 2}}, Instance::Edges::AllPairs);
    LmtEngine eng(in.g, &in.tree);
    WorkStack st;
    st.push(in.g, 0);
    st.push(in.g, 0);
    CHECK(st.size() == 1);
    st.pop(in.g);

    // nothing examined yet, so nothing depends on anything
    eng.restack(edge_between(in, 0, 2), st);
    CHECK(st.empty());

    // certify 1-3 through apexes 0 and 2, then kill a side it uses
    const std::uint32_t d = edge_between(in, 1, 3);
    in.g.set_examined(d, true);
    REQUIRE(eng.find_certificate(d));
    eng.restack(edge_between(in, 0, 1), st);
    CHECK(st.size() == 1);
    eng.restack(edge_between(in, 2, 3), st);
    CHECK(st.size() == 1);
    CHECK(st.pop(in.g) == d);
}

TEST_CASE("soundness against the exhaustive optimum") {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> size(4, 10);
    for(int trial = 0; trial < 200; ++trial) {
        const auto pts = oracle::random_points(static_cast<std::size_t>(size(rng)), rng);
        const auto best = oracle::exhaustive_mwt(pts);
        const std::set<Edge> mwt(best.edges.begin(), best.edges.end());
        for(const bool plus : {false, true}) {
            Instance in(pts);
            run_lmt(in, plus);
            for(const Edge &e : input_edges_with(in, EdgeStatus::Impossible))
                CHECK(mwt.count(e) == 0);
            for(const Edge &e : input_edges_with(in, EdgeStatus::Certain))
                CHECK(mwt.count(e) == 1);
            for(const Edge &e : mwt)
                CHECK(in.g.find(vertex_of(in, e.a), vertex_of(in, e.b)) != no_half_edge);
        }
    }
}

TEST_CASE("fixpoint does not depend on processing order") {
    std::mt19937_64 rng(99);
    for(int inst = 0; inst < 2; ++inst) {
        Instance in(oracle::random_points(500, rng));
        LmtEngine eng(in.g, &in.tree);
        eng.run();
        const auto reference = in.g.statuses();
        std::vector<std::uint32_t> order(in.g.num_edges());
        for(std::uint32_t e = 0; e < order.size(); ++e)
            order[e] = e;
        for(int shuffle = 0; shuffle < 10; ++shuffle) {
            std::shuffle(order.begin(), order.end(), rng);
            in.g.reset_lmt_state();
            WorkStack st;
            for(const std::uint32_t e : order) {
                if(in.g.examined(e))
                    continue;
                eng.process(e, st);
                eng.drain(st);
            }
            CHECK(in.g.statuses() == reference);
        }
    }
}

TEST_CASE("LMT+ dominates LMT and statuses only move out of Possible") {
    std::mt19937_64 rng(5);
    for(int inst = 0; inst < 6; ++inst) {
        auto pts = inst % 2 ? oracle::random_points(400, rng) : oracle::random_points(60, rng);
        Instance in(std::move(pts));
        LmtEngine eng(in.g, &in.tree);
        eng.run();
        mark_certain_pass(in.g);
        const auto base = in.g.statuses();
        eng.run_plus();
        mark_certain_pass(in.g);
        const auto plus = in.g.statuses();
        for(std::size_t e = 0; e < base.size(); ++e) {
            if(base[e] != EdgeStatus::Possible)
                CHECK(plus[e] == base[e]);
        }
        CHECK(in.g.validate().empty());
    }
}

TEST_CASE("exact and tolerant scans agree on random inputs") {
    std::mt19937_64 rng(17);
    for(int inst = 0; inst < 5; ++inst) {
        Instance in(oracle::random_points(300, rng));
        LmtEngine exact(in.g, &in.tree);
        exact.run();
        const auto a = in.g.statuses();
        in.g.reset_lmt_state();
        LmtEngine tolerant(in.g, nullptr, LmtOptions{false});
        tolerant.run();
        CHECK(in.g.statuses() == a);
    }
}

TEST_CASE("edge count formula") {
    CHECK(triangulation_edge_count(3, 3) == 3);
    CHECK(triangulation_edge_count(4, 3) == 6);
    CHECK(triangulation_edge_count(4, 4) == 5);
}
