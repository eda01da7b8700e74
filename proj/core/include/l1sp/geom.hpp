#pragma once

#include "l1sp/rational.hpp"

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace l1sp {

struct Point {
    std::int64_t x = 0;
    std::int64_t y = 0;

    friend constexpr auto operator<=>(const Point&, const Point&) = default;
};

/// Point with exact rational coordinates. Ray hits on sloped edges have one
/// non-integer coordinate; everything else stays integral.
struct RPoint {
    Rational x;
    Rational y;

    RPoint() = default;
    RPoint(Rational x_, Rational y_) : x(std::move(x_)), y(std::move(y_)) {}
    RPoint(const Point& p) : x(p.x), y(p.y) {}  // NOLINT(implicit)

    bool is_integral() const { return x.is_integer() && y.is_integer(); }
    /// Requires is_integral().
    Point to_point() const;

    friend bool operator==(const RPoint&, const RPoint&) = default;
    friend std::strong_ordering operator<=>(const RPoint& a, const RPoint& b) {
        if (auto c = a.x <=> b.x; c != 0) return c;
        return a.y <=> b.y;
    }
};

std::string to_string(const Point& p);
std::string to_string(const RPoint& p);

struct Segment {
    Point a;
    Point b;
};

/// Simple polygon, counterclockwise.
struct Polygon {
    std::vector<Point> vertices;

    std::size_t size() const { return vertices.size(); }
    const Point& operator[](std::size_t i) const { return vertices[i]; }
    const Point& vertex(std::ptrdiff_t i) const;  // cyclic index
};

/// Closed axis-parallel rectangle.
struct Box {
    std::int64_t x0 = 0;
    std::int64_t y0 = 0;
    std::int64_t x1 = 0;
    std::int64_t y1 = 0;

    bool contains(const Point& p) const { return x0 <= p.x && p.x <= x1 && y0 <= p.y && p.y <= y1; }
    bool strictly_contains(const Point& p) const { return x0 < p.x && p.x < x1 && y0 < p.y && p.y < y1; }
    bool on_boundary(const Point& p) const { return contains(p) && !strictly_contains(p); }

    friend bool operator==(const Box&, const Box&) = default;
};

enum class Orientation { Right = -1, Collinear = 0, Left = 1 };

Rational l1_length(const RPoint& a, const RPoint& b);
Int128 l1_length(const Point& a, const Point& b);

/// Exact cross product (b - a) x (c - a).
Int128 cross(const Point& a, const Point& b, const Point& c);
Orientation orientation(const Point& a, const Point& b, const Point& c);

/// True when p lies on the closed segment s.
bool on_segment(const Point& p, const Segment& s);
bool on_segment(const RPoint& p, const Segment& s);

struct SegmentIntersection {
    enum class Kind { Disjoint, Point, Overlap };
    Kind kind = Kind::Disjoint;
    RPoint first;   // the intersection point, or one end of the overlap
    RPoint second;  // other end of the overlap (== first for Kind::Point)

    explicit operator bool() const { return kind != Kind::Disjoint; }
};

SegmentIntersection segments_intersect(const Segment& s1, const Segment& s2);

enum class PointLocation { Interior, Boundary, Exterior };

PointLocation point_in_polygon(const RPoint& p, const Polygon& poly);
PointLocation point_in_polygon(const Point& p, const Polygon& poly);

/// Twice the signed area; positive for counterclockwise polygons.
Int128 signed_area2(const Polygon& poly);

Box bounding_box(const Polygon& poly);

struct PointHash {
    std::size_t operator()(const Point& p) const noexcept {
        const auto h = static_cast<std::uint64_t>(p.x) * 0x9E3779B97F4A7C15ULL;
        return static_cast<std::size_t>(h ^ (static_cast<std::uint64_t>(p.y) + 0x7F4A7C159E3779B9ULL + (h << 6) + (h >> 2)));
    }
};

}  // namespace l1sp
