#include "l1sp/geom.hpp"

#include "l1sp/error.hpp"

#include <algorithm>

namespace l1sp {

Point RPoint::to_point() const {
    if (!is_integral()) throw Error(ErrorCode::ArithmeticOverflow, "non-integral point " + l1sp::to_string(*this));
    return {static_cast<std::int64_t>(x.num()), static_cast<std::int64_t>(y.num())};
}

std::string to_string(const Point& p) { return "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")"; }

std::string to_string(const RPoint& p) { return "(" + p.x.to_string() + "," + p.y.to_string() + ")"; }

const Point& Polygon::vertex(std::ptrdiff_t i) const {
    const auto n = static_cast<std::ptrdiff_t>(vertices.size());
    return vertices[static_cast<std::size_t>(((i % n) + n) % n)];
}

Rational l1_length(const RPoint& a, const RPoint& b) { return abs(a.x - b.x) + abs(a.y - b.y); }

Int128 l1_length(const Point& a, const Point& b) {
    const Int128 dx = Int128(a.x) - b.x;
    const Int128 dy = Int128(a.y) - b.y;
    return (dx < 0 ? -dx : dx) + (dy < 0 ? -dy : dy);
}

Int128 cross(const Point& a, const Point& b, const Point& c) {
    return (Int128(b.x) - a.x) * (Int128(c.y) - a.y) - (Int128(b.y) - a.y) * (Int128(c.x) - a.x);
}

Orientation orientation(const Point& a, const Point& b, const Point& c) {
    const Int128 v = cross(a, b, c);
    return v > 0 ? Orientation::Left : (v < 0 ? Orientation::Right : Orientation::Collinear);
}

bool on_segment(const Point& p, const Segment& s) {
    if (cross(s.a, s.b, p) != 0) return false;
    return std::min(s.a.x, s.b.x) <= p.x && p.x <= std::max(s.a.x, s.b.x) && std::min(s.a.y, s.b.y) <= p.y &&
           p.y <= std::max(s.a.y, s.b.y);
}

bool on_segment(const RPoint& p, const Segment& s) {
    if (p.is_integral()) return on_segment(p.to_point(), s);
    const Rational lhs = Rational(s.b.x - s.a.x) * (p.y - s.a.y);
    const Rational rhs = Rational(s.b.y - s.a.y) * (p.x - s.a.x);
    if (lhs != rhs) return false;
    return Rational(std::min(s.a.x, s.b.x)) <= p.x && p.x <= Rational(std::max(s.a.x, s.b.x)) &&
           Rational(std::min(s.a.y, s.b.y)) <= p.y && p.y <= Rational(std::max(s.a.y, s.b.y));
}

namespace {

int sgn(Int128 v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

SegmentIntersection single(const RPoint& p) {
    SegmentIntersection r;
    r.kind = SegmentIntersection::Kind::Point;
    r.first = p;
    r.second = p;
    return r;
}

}  // namespace

SegmentIntersection segments_intersect(const Segment& s1, const Segment& s2) {
    const Point& a = s1.a;
    const Point& b = s1.b;
    const Point& c = s2.a;
    const Point& d = s2.b;
    if (a == b) return on_segment(a, s2) ? single(a) : SegmentIntersection{};
    if (c == d) return on_segment(c, s1) ? single(c) : SegmentIntersection{};

    const int o1 = sgn(cross(c, d, a));
    const int o2 = sgn(cross(c, d, b));
    const int o3 = sgn(cross(a, b, c));
    const int o4 = sgn(cross(a, b, d));

    if (o1 == 0 && o2 == 0) {
        // Collinear: intersect the two lexicographic intervals.
        const Point lo1 = std::min(a, b), hi1 = std::max(a, b);
        const Point lo2 = std::min(c, d), hi2 = std::max(c, d);
        const Point lo = std::max(lo1, lo2);
        const Point hi = std::min(hi1, hi2);
        if (hi < lo) return {};
        if (lo == hi) return single(lo);
        SegmentIntersection r;
        r.kind = SegmentIntersection::Kind::Overlap;
        r.first = lo;
        r.second = hi;
        return r;
    }
    if (o1 * o2 > 0 || o3 * o4 > 0) return {};
    if (o1 == 0) return single(a);
    if (o2 == 0) return single(b);
    if (o3 == 0) return single(c);
    if (o4 == 0) return single(d);

    // Proper crossing: a + t (b - a) with t = ((c - a) x (d - c)) / ((b - a) x (d - c)).
    const Int128 num = (Int128(c.x) - a.x) * (Int128(d.y) - c.y) - (Int128(c.y) - a.y) * (Int128(d.x) - c.x);
    const Int128 den = (Int128(b.x) - a.x) * (Int128(d.y) - c.y) - (Int128(b.y) - a.y) * (Int128(d.x) - c.x);
    const Rational t = Rational::from_fraction(num, den);
    return single(RPoint(Rational(a.x) + t * Rational(b.x - a.x), Rational(a.y) + t * Rational(b.y - a.y)));
}

PointLocation point_in_polygon(const Point& p, const Polygon& poly) {
    bool inside = false;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point& a = poly.vertices[i];
        const Point& b = poly.vertices[(i + 1) % n];
        if (on_segment(p, Segment{a, b})) return PointLocation::Boundary;
        if ((a.y > p.y) != (b.y > p.y)) {
            const Int128 o = cross(a, b, p);
            if ((b.y > a.y && o > 0) || (b.y < a.y && o < 0)) inside = !inside;
        }
    }
    return inside ? PointLocation::Interior : PointLocation::Exterior;
}

PointLocation point_in_polygon(const RPoint& p, const Polygon& poly) {
    if (p.is_integral()) return point_in_polygon(p.to_point(), poly);
    bool inside = false;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point& a = poly.vertices[i];
        const Point& b = poly.vertices[(i + 1) % n];
        if (on_segment(p, Segment{a, b})) return PointLocation::Boundary;
        const Rational ay(a.y), by(b.y);
        if ((ay > p.y) != (by > p.y)) {
            const Rational o = Rational(b.x - a.x) * (p.y - ay) - Rational(b.y - a.y) * (p.x - Rational(a.x));
            if ((b.y > a.y && o.sign() > 0) || (b.y < a.y && o.sign() < 0)) inside = !inside;
        }
    }
    return inside ? PointLocation::Interior : PointLocation::Exterior;
}

Int128 signed_area2(const Polygon& poly) {
    Int128 area = 0;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point& a = poly.vertices[i];
        const Point& b = poly.vertices[(i + 1) % n];
        area += Int128(a.x) * b.y - Int128(b.x) * a.y;
    }
    return area;
}

Box bounding_box(const Polygon& poly) {
    Box box{poly[0].x, poly[0].y, poly[0].x, poly[0].y};
    for (const Point& p : poly.vertices) {
        box.x0 = std::min(box.x0, p.x);
        box.y0 = std::min(box.y0, p.y);
        box.x1 = std::max(box.x1, p.x);
        box.y1 = std::max(box.y1, p.y);
    }
    return box;
}

}  // namespace l1sp
