#include "core/geometry.hpp"

#include <stdexcept>
#include <utility>

namespace lenv {

Segment::Segment(Point p, Point q, std::int64_t id_) : a(std::move(p)), b(std::move(q)), id(id_) {
    if (a == b) throw std::invalid_argument("zero-length segment");
    if (!point_less(a, b)) std::swap(a, b);
}

int orientation(const Point& a, const Point& b, const Point& c) {
    Rational cross = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    return cross.sign();
}

namespace {

IntersectionResult collinear_overlap(const Segment& s, const Segment& t) {
    // Both on one line; order endpoints along the line and intersect ranges.
    const Point& lo = point_less(s.a, t.a) ? t.a : s.a;
    const Point& hi = point_less(s.b, t.b) ? s.b : t.b;
    if (point_less(hi, lo)) return IntersectionResult::none();
    if (lo == hi) return IntersectionResult::at(lo);
    return IntersectionResult::over(lo, hi);
}

}  // namespace

IntersectionResult segment_intersection(const Segment& s, const Segment& t) {
    Rational d1x = s.b.x - s.a.x, d1y = s.b.y - s.a.y;
    Rational d2x = t.b.x - t.a.x, d2y = t.b.y - t.a.y;
    Rational denom = d1x * d2y - d1y * d2x;
    Rational ex = t.a.x - s.a.x, ey = t.a.y - s.a.y;

    if (denom.is_zero()) {
        // Parallel; collinear iff t.a lies on s's supporting line.
        if (!(ex * d1y - ey * d1x).is_zero()) return IntersectionResult::none();
        return collinear_overlap(s, t);
    }

    Rational tp = (ex * d2y - ey * d2x) / denom;  // along s
    Rational up = (ex * d1y - ey * d1x) / denom;  // along t
    Rational zero(0), one(1);
    if (tp < zero || tp > one || up < zero || up > one) return IntersectionResult::none();
    return IntersectionResult::at(Point{s.a.x + tp * d1x, s.a.y + tp * d1y});
}

IntersectionResult ray_up_intersection(const Point& origin, const Segment& s) {
    if (s.vertical()) {
        if (!(origin.x == s.a.x)) return IntersectionResult::none();
        if (s.b.y < origin.y) return IntersectionResult::none();
        Point lo{origin.x, s.a.y < origin.y ? origin.y : s.a.y};
        if (lo.y == s.b.y) return IntersectionResult::at(lo);
        return IntersectionResult::over(lo, s.b);
    }
    if (origin.x < s.a.x || origin.x > s.b.x) return IntersectionResult::none();
    Rational y = eval_at(s, origin.x);
    if (y < origin.y) return IntersectionResult::none();
    return IntersectionResult::at(Point{origin.x, y});
}

std::strong_ordering compare_slopes(const Segment& s, const Segment& t) {
    bool sv = s.vertical(), tv = t.vertical();
    if (sv && tv) return std::strong_ordering::equal;
    if (sv) return std::strong_ordering::greater;
    if (tv) return std::strong_ordering::less;
    // dx > 0 on both sides, so cross-multiplying preserves order.
    Rational lhs = (s.b.y - s.a.y) * (t.b.x - t.a.x);
    Rational rhs = (t.b.y - t.a.y) * (s.b.x - s.a.x);
    return lhs <=> rhs;
}

Rational eval_at(const Segment& s, const Rational& x) {
    if (s.vertical()) throw std::invalid_argument("eval_at on vertical segment");
    if (x < s.a.x || x > s.b.x) throw std::invalid_argument("eval_at outside segment span");
    return s.a.y + (x - s.a.x) * (s.b.y - s.a.y) / (s.b.x - s.a.x);
}

std::string point_str(const Point& p) {
    return "(" + rational_compact_str(p.x) + ", " + rational_compact_str(p.y) + ")";
}

}  // namespace lenv
