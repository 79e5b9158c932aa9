#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>

namespace mwt {

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point &, const Point &) = default;
};

/// Lexicographic (x, then y) order. Used wherever the pipeline needs "s < t".
inline bool lex_less(const Point &a, const Point &b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
}

inline double squared_distance(const Point &a, const Point &b) {
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    return dx * dx + dy * dy;
}

inline double distance(const Point &a, const Point &b) { return std::sqrt(squared_distance(a, b)); }

enum class Orientation : std::int8_t { CW = -1, Collinear = 0, CCW = 1 };

/// Exact sign of det(b - a, c - a). A floating-point filter answers most
/// calls; the rest are resolved with exact expansion arithmetic.
Orientation orient(const Point &a, const Point &b, const Point &c);

inline bool left_turn(const Point &a, const Point &b, const Point &c) {
    return orient(a, b, c) == Orientation::CCW;
}

inline bool right_turn(const Point &a, const Point &b, const Point &c) {
    return orient(a, b, c) == Orientation::CW;
}

/// sign(dy) * (1 - dx / (|dx| + |dy|)) with sign(0) = +1. Range (-2, 2],
/// monotone in the polar angle on [0, pi] and on (pi, 2 pi).
/// Throws std::domain_error for the zero vector.
double pseudo_angle(double dx, double dy);

/// Pseudo-angle shifted into [0, 4) so that it is monotone over the whole
/// polar range [0, 2 pi). The discontinuity moves from pi to 0.
/// No zero-vector check; callers guarantee a nonzero direction.
inline double angle_key(double dx, double dy) {
    const double p = 1.0 - dx / (std::fabs(dx) + std::fabs(dy));
    return dy < 0.0 ? 4.0 - p : p;
}

inline double angle_key(const Point &from, const Point &to) { return angle_key(to.x - from.x, to.y - from.y); }

/// Counter-clockwise distance from key a to key b on the [0, 4) circle.
inline double key_ccw_distance(double a, double b) {
    const double d = b - a;
    return d < 0.0 ? d + 4.0 : d;
}

/// Exact radial order of two nonzero directions, starting at angle 0 and
/// rotating counter-clockwise. Returns true if u comes strictly before v.
bool radial_less(const Point &origin, const Point &u, const Point &v);

/// Base-angle configuration for the diamond property.
class BaseAngleConfig {
  public:
    static constexpr double default_alpha = std::numbers::pi / 4.6;

    explicit BaseAngleConfig(double alpha = default_alpha);

    double alpha() const { return alpha_; }
    double tan_alpha() const { return tan_alpha_; }
    double sin_alpha() const { return sin_alpha_; }
    double cos_alpha() const { return cos_alpha_; }
    /// Pseudo-angle of the direction at polar angle alpha.
    double pseudo_width() const { return pseudo_width_; }
    /// Largest pseudo-angle difference between two directions alpha apart.
    double max_pseudo_span() const { return max_pseudo_span_; }
    /// Squared ratio between the activation radius of a dead sector and the
    /// larger of its two generating distances.
    double activation_factor() const { return activation_factor_; }

  private:
    double alpha_;
    double tan_alpha_;
    double sin_alpha_;
    double cos_alpha_;
    double pseudo_width_;
    double max_pseudo_span_;
    double activation_factor_;
};

enum class Side : std::uint8_t { Left, Right };

/// True iff p lies strictly inside the isosceles triangle with base st and
/// base angle alpha on the given side of the directed line s->t.
bool in_diamond_triangle(const Point &s, const Point &t, const Point &p, Side side, const BaseAngleConfig &cfg);

/// True iff p is collinear with s and t and strictly between them.
bool on_open_segment(const Point &s, const Point &t, const Point &p);

/// Apex of the isosceles triangle on the given side (inexact; used for
/// bounding boxes only).
Point diamond_apex(const Point &s, const Point &t, Side side, const BaseAngleConfig &cfg);

/// O(n) reference test: st passes iff no point lies on the open segment st
/// and at least one of the two isosceles triangles is empty.
bool diamond_test_bruteforce(std::uint32_t s, std::uint32_t t, std::span<const Point> points,
                             const BaseAngleConfig &cfg);

/// True iff the open segments ab and cd share a point interior to both.
bool segments_properly_intersect(const Point &a, const Point &b, const Point &c, const Point &d);

/// True iff p lies strictly inside the triangle abc (either orientation).
bool strictly_inside_triangle(const Point &a, const Point &b, const Point &c, const Point &p);

} // namespace mwt
