#pragma once

// Exact geometric predicates and constructions on rational points and
// segments. Everything here is a pure function of its arguments; there is no
// tolerance anywhere. Constructed points (segment crossings, ray hits) are
// exact and can safely be fed back into further predicates.

#include <compare>
#include <cstdint>
#include <string>

#include "core/rational.hpp"

namespace lenv {

struct Point {
    Rational x;
    Rational y;

    bool operator==(const Point& o) const { return x == o.x && y == o.y; }
};

// Lexicographic (x, y) order; handy for canonical endpoint ordering.
inline bool point_less(const Point& a, const Point& b) {
    if (auto c = a.x <=> b.x; c != 0) return c < 0;
    return a.y < b.y;
}

// A segment in canonical orientation: a.x < b.x, or a.x == b.x and a.y < b.y.
// id is the source identifier carried onto envelope edges (-1 = unlabeled).
struct Segment {
    Point a;
    Point b;
    std::int64_t id = -1;

    Segment(Point p, Point q, std::int64_t id_ = -1);

    bool vertical() const { return a.x == b.x; }
};

// Sign of the cross product (b-a) x (c-a): +1 counterclockwise, 0 collinear.
int orientation(const Point& a, const Point& b, const Point& c);

struct IntersectionResult {
    enum class Kind { none, point, overlap };
    Kind kind = Kind::none;
    Point point;        // the point, or the overlap's canonical lower end
    Point overlap_end;  // the overlap's canonical upper end

    static IntersectionResult none() { return {}; }
    static IntersectionResult at(Point p) {
        return {Kind::point, std::move(p), {}};
    }
    static IntersectionResult over(Point p, Point q) {
        return {Kind::overlap, std::move(p), std::move(q)};
    }

    bool empty() const { return kind == Kind::none; }
    bool is_point() const { return kind == Kind::point; }
    bool is_overlap() const { return kind == Kind::overlap; }
};

// Closed-segment intersection: shared endpoints count. Collinear segments
// with a common sub-segment of positive length yield an overlap.
IntersectionResult segment_intersection(const Segment& s, const Segment& t);

// Intersection of the vertical upward ray from origin with closed segment s.
// A vertical s collinear with the ray can yield an overlap.
IntersectionResult ray_up_intersection(const Point& origin, const Segment& s);

// Total order on segment direction, vertical treated as +infinity slope.
std::strong_ordering compare_slopes(const Segment& s, const Segment& t);

// Exact y-value of the supporting line of s at x.
// Throws std::invalid_argument for vertical s or x outside [s.a.x, s.b.x].
Rational eval_at(const Segment& s, const Rational& x);

std::string point_str(const Point& p);

}  // namespace lenv
