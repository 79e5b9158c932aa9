#include "mwt/generate.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace mwt {

double Rng::normal() {
    if(has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while(s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
}

namespace {

struct PointHash {
    std::size_t operator()(const Point &p) const {
        const auto a = std::bit_cast<std::uint64_t>(p.x + 0.0);
        const auto b = std::bit_cast<std::uint64_t>(p.y + 0.0);
        return std::hash<std::uint64_t>{}(a * 0x9e3779b97f4a7c15ull ^ b);
    }
};

struct PointEq {
    bool operator()(const Point &a, const Point &b) const { return a.x == b.x && a.y == b.y; }
};

template<class Draw> std::vector<Point> draw_distinct(std::size_t n, Draw &&draw) {
    std::vector<Point> out;
    out.reserve(n);
    std::unordered_set<Point, PointHash, PointEq> seen;
    seen.reserve(n);
    while(out.size() < n) {
        const Point p = draw();
        if(seen.insert(p).second)
            out.push_back(p);
    }
    return out;
}

} // namespace

std::vector<Point> generate_uniform(std::size_t n, std::uint64_t seed, double extent) {
    if(!(extent > 0.0))
        throw std::invalid_argument("extent must be positive");
    Rng rng(seed);
    return draw_distinct(n, [&] {
        const double x = (rng.uniform() - 0.5) * extent;
        const double y = (rng.uniform() - 0.5) * extent;
        return Point{x, y};
    });
}

std::vector<Point> generate_normal(std::size_t n, std::uint64_t seed, double sigma) {
    if(!(sigma > 0.0))
        throw std::invalid_argument("sigma must be positive");
    Rng rng(seed);
    return draw_distinct(n, [&] {
        const double x = sigma * rng.normal();
        const double y = sigma * rng.normal();
        return Point{x, y};
    });
}

} // namespace mwt
