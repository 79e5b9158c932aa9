#include "mwt/geom.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace mwt {

namespace {

// Error-free transformations (Knuth two-sum, FMA two-product).
inline void two_sum(double a, double b, double &sum, double &err) {
    sum = a + b;
    const double bv = sum - a;
    const double av = sum - bv;
    err = (a - av) + (b - bv);
}

inline void two_product(double a, double b, double &prod, double &err) {
    prod = a * b;
    err = std::fma(a, b, -prod);
}

// Adds b to a nonoverlapping expansion stored in increasing magnitude order.
// The result stays nonoverlapping, so its sign is the sign of the most
// significant nonzero component.
template<std::size_t N> struct Expansion {
    std::array<double, N> c{};
    std::size_t size = 0;

    void grow(double b) {
        double q = b;
        for(std::size_t i = 0; i < size; ++i) {
            double h;
            two_sum(q, c[i], q, h);
            c[i] = h;
        }
        c[size++] = q;
    }

    int sign() const {
        for(std::size_t i = size; i-- > 0;) {
            if(c[i] > 0.0)
                return 1;
            if(c[i] < 0.0)
                return -1;
        }
        return 0;
    }
};

int orient_exact(const Point &a, const Point &b, const Point &c) {
    // det = ax*by - ax*cy - ay*bx + ay*cx + bx*cy - by*cx, every product exact.
    const std::array<std::array<double, 2>, 6> terms{{{a.x, b.y},
                                                      {-a.x, c.y},
                                                      {-a.y, b.x},
                                                      {a.y, c.x},
                                                      {b.x, c.y},
                                                      {-b.y, c.x}}};
    Expansion<13> e;
    for(const auto &[u, v] : terms) {
        double p, err;
        two_product(u, v, p, err);
        e.grow(err);
        e.grow(p);
    }
    return e.sign();
}

constexpr double eps = 0x1p-53;
constexpr double ccw_err_bound = (3.0 + 16.0 * eps) * eps;

} // namespace

Orientation orient(const Point &a, const Point &b, const Point &c) {
    const double detleft = (b.x - a.x) * (c.y - a.y);
    const double detright = (b.y - a.y) * (c.x - a.x);
    const double det = detleft - detright;
    const double bound = ccw_err_bound * (std::fabs(detleft) + std::fabs(detright));
    if(det > bound)
        return Orientation::CCW;
    if(-det > bound)
        return Orientation::CW;
    if(detleft == 0.0 && detright == 0.0)
        return Orientation::Collinear;
    return static_cast<Orientation>(orient_exact(a, b, c));
}

double pseudo_angle(double dx, double dy) {
    if(dx == 0.0 && dy == 0.0)
        throw std::domain_error("pseudo_angle: zero vector has no direction");
    const double p = 1.0 - dx / (std::fabs(dx) + std::fabs(dy));
    return dy < 0.0 ? -p : p;
}

bool radial_less(const Point &origin, const Point &u, const Point &v) {
    // Upper half (angle in [0, pi)) comes first.
    auto half = [&](const Point &p) {
        const double dx = p.x - origin.x;
        const double dy = p.y - origin.y;
        return (dy > 0.0 || (dy == 0.0 && dx > 0.0)) ? 0 : 1;
    };
    const int hu = half(u);
    const int hv = half(v);
    if(hu != hv)
        return hu < hv;
    return orient(origin, u, v) == Orientation::CCW;
}

BaseAngleConfig::BaseAngleConfig(double alpha) : alpha_(alpha) {
    if(!(alpha > 0.0) || alpha > std::numbers::pi / 3.0 + 1e-15)
        throw std::invalid_argument("base angle must lie in (0, pi/3]");
    tan_alpha_ = std::tan(alpha);
    sin_alpha_ = std::sin(alpha);
    cos_alpha_ = std::cos(alpha);
    pseudo_width_ = pseudo_angle(cos_alpha_, sin_alpha_);
    const double half = std::tan(alpha / 2.0);
    max_pseudo_span_ = 2.0 * half / (1.0 + half);
    // sup over 0 < delta < alpha of sin(alpha + delta) / sin(alpha)
    const double ratio = (2.0 * alpha <= std::numbers::pi / 2.0) ? 2.0 * cos_alpha_ : 1.0 / sin_alpha_;
    activation_factor_ = ratio * ratio * (1.0 + 1e-12);
}

namespace {

// Is p within angle alpha of the ray v->o, on the requested rotational side?
inline bool inside_base_angle(const Point &v, const Point &o, const Point &p, bool ccw, double tan_alpha) {
    const double ax = o.x - v.x;
    const double ay = o.y - v.y;
    const double bx = p.x - v.x;
    const double by = p.y - v.y;
    double cross = ax * by - ay * bx;
    if(!ccw)
        cross = -cross;
    const double dot = ax * bx + ay * by;
    return cross < tan_alpha * dot;
}

} // namespace

bool in_diamond_triangle(const Point &s, const Point &t, const Point &p, Side side, const BaseAngleConfig &cfg) {
    const Orientation o = orient(s, t, p);
    if(side == Side::Left) {
        if(o != Orientation::CCW)
            return false;
        return inside_base_angle(s, t, p, true, cfg.tan_alpha()) && inside_base_angle(t, s, p, false, cfg.tan_alpha());
    }
    if(o != Orientation::CW)
        return false;
    return inside_base_angle(s, t, p, false, cfg.tan_alpha()) && inside_base_angle(t, s, p, true, cfg.tan_alpha());
}

bool on_open_segment(const Point &s, const Point &t, const Point &p) {
    if(orient(s, t, p) != Orientation::Collinear)
        return false;
    if(s.x != t.x)
        return (std::min(s.x, t.x) < p.x) && (p.x < std::max(s.x, t.x));
    return (std::min(s.y, t.y) < p.y) && (p.y < std::max(s.y, t.y));
}

Point diamond_apex(const Point &s, const Point &t, Side side, const BaseAngleConfig &cfg) {
    const double dx = t.x - s.x;
    const double dy = t.y - s.y;
    const double h = 0.5 * cfg.tan_alpha();
    const double sign = side == Side::Left ? 1.0 : -1.0;
    return {0.5 * (s.x + t.x) - sign * dy * h, 0.5 * (s.y + t.y) + sign * dx * h};
}

bool diamond_test_bruteforce(std::uint32_t s, std::uint32_t t, std::span<const Point> points,
                             const BaseAngleConfig &cfg) {
    const Point &ps = points[s];
    const Point &pt = points[t];
    bool left = false;
    bool right = false;
    for(std::uint32_t q = 0; q < points.size(); ++q) {
        if(q == s || q == t)
            continue;
        const Point &pq = points[q];
        if(on_open_segment(ps, pt, pq))
            return false;
        if(!left && in_diamond_triangle(ps, pt, pq, Side::Left, cfg))
            left = true;
        else if(!right && in_diamond_triangle(ps, pt, pq, Side::Right, cfg))
            right = true;
        if(left && right)
            return false;
    }
    return true;
}

bool segments_properly_intersect(const Point &a, const Point &b, const Point &c, const Point &d) {
    const auto o1 = orient(a, b, c);
    const auto o2 = orient(a, b, d);
    const auto o3 = orient(c, d, a);
    const auto o4 = orient(c, d, b);
    if(o1 == Orientation::Collinear && o2 == Orientation::Collinear) {
        // Collinear: overlap of positive length along the common line.
        const bool use_x = a.x != b.x;
        auto coord = [use_x](const Point &p) { return use_x ? p.x : p.y; };
        const double lo1 = std::min(coord(a), coord(b));
        const double hi1 = std::max(coord(a), coord(b));
        const double lo2 = std::min(coord(c), coord(d));
        const double hi2 = std::max(coord(c), coord(d));
        return std::max(lo1, lo2) < std::min(hi1, hi2);
    }
    return o1 != Orientation::Collinear && o2 != Orientation::Collinear && o1 != o2 &&
           o3 != Orientation::Collinear && o4 != Orientation::Collinear && o3 != o4;
}

bool strictly_inside_triangle(const Point &a, const Point &b, const Point &c, const Point &p) {
    const auto o1 = orient(a, b, p);
    if(o1 == Orientation::Collinear)
        return false;
    return orient(b, c, p) == o1 && orient(c, a, p) == o1;
}

} // namespace mwt
