#include "doctest.h"

#include "mwt/spatial.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <random>
#include <set>

using namespace mwt;

TEST_CASE("hilbert_sort basics") {
    std::vector<Point> one{{3, 4}};
    auto h = hilbert_sort(one);
    CHECK(h.original_index == std::vector<std::uint32_t>{0});

    std::vector<Point> sq{{1, 1}, {0, 0}, {1, 0}, {0, 1}};
    auto hs = hilbert_sort(sq);
    for(std::size_t i = 1; i < 4; ++i) {
        const Point &a = hs.points[i - 1], &b = hs.points[i];
        CHECK(std::fabs(a.x - b.x) + std::fabs(a.y - b.y) == 1.0);
    }

    std::mt19937_64 rng(1);
    auto pts = oracle::random_points(2000, rng);
    auto a = hilbert_sort(pts);
    std::vector<bool> seen(pts.size(), false);
    for(std::size_t i = 0; i < pts.size(); ++i) {
        REQUIRE(pts[a.original_index[i]] == a.points[i]);
        seen[a.original_index[i]] = true;
    }
    CHECK(std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }));
    CHECK(std::is_sorted(a.keys.begin(), a.keys.end()));
    auto b = hilbert_sort(a.points);
    for(std::size_t i = 0; i < pts.size(); ++i)
        REQUIRE(b.original_index[i] == i);

    // consecutive points are spatially close on average
    double walk = 0, random_walk = 0;
    for(std::size_t i = 1; i < pts.size(); ++i) {
        walk += distance(a.points[i - 1], a.points[i]);
        random_walk += distance(pts[i - 1], pts[i]);
    }
    CHECK(walk < 0.2 * random_walk);
}

TEST_CASE("hilbert_sort rejects duplicates") {
    std::vector<Point> dup{{0, 0}, {1, 2}, {0, 0}};
    CHECK_THROWS_AS(hilbert_sort(dup), std::invalid_argument);
}

namespace {

void check_tree(const HilbertOrderedPointSet &h, const QuadTree &t) {
    std::vector<int> covered(h.size(), 0);
    for(const QuadNode &nd : t.nodes()) {
        for(std::uint32_t i = nd.lo; i < nd.hi; ++i)
            REQUIRE(nd.box.contains(h.points[i]));
        if(nd.is_leaf()) {
            REQUIRE(nd.hi - nd.lo >= 1);
            for(std::uint32_t i = nd.lo; i < nd.hi; ++i)
                ++covered[i];
        } else {
            std::uint32_t lo = nd.lo;
            for(std::uint32_t c = 0; c < nd.child_count; ++c) {
                REQUIRE(t.node(nd.first_child + c).lo == lo);
                lo = t.node(nd.first_child + c).hi;
            }
            REQUIRE(lo == nd.hi);
        }
    }
    for(int c : covered)
        REQUIRE(c == 1);
}

} // namespace

TEST_CASE("quadtree structure") {
    std::vector<Point> few{{0, 0}, {1, 1}, {2, 0}};
    auto hf = hilbert_sort(few);
    QuadTree tf(hf);
    CHECK(tf.nodes().size() == 1);
    CHECK(tf.node(0).lo == 0);
    CHECK(tf.node(0).hi == 3);

    std::vector<Point> quads{{0.25, 0.25}, {0.75, 0.25}, {0.25, 0.75}, {0.75, 0.75}};
    auto hq = hilbert_sort(quads);
    QuadTree tq(hq, 1);
    std::size_t leaves = 0;
    for(const auto &nd : tq.nodes())
        leaves += nd.is_leaf();
    CHECK(leaves == 4);
    CHECK(tq.node(0).child_count == 4);
    check_tree(hq, tq);

    std::mt19937_64 rng(2);
    auto pts = oracle::random_points(1000, rng);
    auto h = hilbert_sort(pts);
    QuadTree t(h);
    check_tree(h, t);
    for(std::uint32_t i = 0; i < h.size(); ++i) {
        const auto hit = t.range_query(BBox::of(h.points[i]));
        REQUIRE(hit == std::vector<std::uint32_t>{i});
    }
}

TEST_CASE("incremental nearest: grid") {
    std::vector<Point> grid;
    for(int x = 0; x < 3; ++x)
        for(int y = 0; y < 3; ++y)
            grid.push_back({double(x), double(y)});
    auto h = hilbert_sort(grid);
    QuadTree t(h, 2);
    std::uint32_t center = 0;
    for(std::uint32_t i = 0; i < 9; ++i)
        if(h.points[i] == Point{1, 1})
            center = i;
    IncrementalNearest nn(t);
    nn.reset(h.points[center], center);
    Neighbor nb;
    std::vector<double> d;
    while(nn.next(nb))
        d.push_back(nb.d2);
    CHECK(d == std::vector<double>{1, 1, 1, 1, 2, 2, 2, 2});

    auto all = [](const KeyInterval &, std::uint32_t) { return true; };
    nn.reset(h.points[center], center, all);
    CHECK_FALSE(nn.next(nb, all));
}

TEST_CASE("incremental nearest: random full order") {
    std::mt19937_64 rng(3);
    for(int rep = 0; rep < 5; ++rep) {
        auto pts = oracle::random_points(500, rng);
        auto h = hilbert_sort(pts);
        QuadTree t(h, 4);
        IncrementalNearest nn(t);
        for(std::uint32_t s = 0; s < 500; s += 37) {
            std::vector<std::pair<double, std::uint32_t>> expect;
            for(std::uint32_t i = 0; i < 500; ++i)
                if(i != s)
                    expect.emplace_back(squared_distance(h.points[s], h.points[i]), i);
            std::sort(expect.begin(), expect.end());
            nn.reset(h.points[s], s);
            Neighbor nb;
            std::size_t k = 0;
            double last = 0;
            while(nn.next(nb)) {
                REQUIRE(k < expect.size());
                REQUIRE(nb.d2 >= last);
                REQUIRE(nb.d2 == expect[k].first);
                REQUIRE(nb.id == expect[k].second);
                last = nb.d2;
                ++k;
            }
            CHECK(k == expect.size());
        }
        // arbitrary query location
        const Point q{0.123, -0.321};
        nn.reset(q);
        Neighbor nb;
        std::size_t k = 0;
        while(nn.next(nb))
            ++k;
        CHECK(k == 500);
    }
}

TEST_CASE("incremental nearest: pruned subtrees are never visited") {
    std::mt19937_64 rng(4);
    auto pts = oracle::random_points(800, rng);
    auto h = hilbert_sort(pts);
    QuadTree t(h, 8);
    IncrementalNearest nn(t);
    const Point q{0, 0};
    // prune everything strictly in the left half-plane (keys in (1, 3))
    std::vector<std::uint32_t> pruned;
    auto prune = [&](const KeyInterval &r, std::uint32_t node) {
        if(r.full || r.lo > r.hi || !(r.lo > 1.0 && r.hi < 3.0))
            return false;
        pruned.push_back(node);
        return true;
    };
    nn.reset(q, UINT32_MAX, prune);
    Neighbor nb;
    std::set<std::uint32_t> got;
    while(nn.next(nb, prune))
        got.insert(nb.id);
    std::set<std::uint32_t> in_pruned;
    for(std::uint32_t node : pruned)
        for(std::uint32_t i = t.node(node).lo; i < t.node(node).hi; ++i) {
            in_pruned.insert(i);
            REQUIRE(h.points[i].x < 0.0);
        }
    CHECK(got.size() + in_pruned.size() == 800);
    for(std::uint32_t i : in_pruned)
        CHECK(got.count(i) == 0);
    CHECK(!pruned.empty());
}

TEST_CASE("box key interval encloses the box") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-1, 1);
    for(int it = 0; it < 20000; ++it) {
        BBox b = BBox::of({u(rng), u(rng)});
        b.expand({u(rng), u(rng)});
        const Point q{u(rng) * 2, u(rng) * 2};
        const KeyInterval r = box_key_interval(q, b);
        if(b.contains(q)) {
            REQUIRE(r.full);
            continue;
        }
        REQUIRE_FALSE(r.full);
        for(int k = 0; k < 20; ++k) {
            const Point p{b.xmin + (b.xmax - b.xmin) * (k % 5) / 4.0, b.ymin + (b.ymax - b.ymin) * (k / 5) / 3.0};
            const double key = angle_key(q, p);
            if(r.lo <= r.hi)
                REQUIRE((key > r.lo && key < r.hi));
            else
                REQUIRE((key > r.lo || key < r.hi));
        }
        // the interval is tight: narrower than the half circle
        REQUIRE(key_ccw_distance(r.lo, r.hi) < 2.0 + 1e-9);
    }
    CHECK(box_key_interval({0.5, 0}, {0, 0, 1, 1}).full);
}
