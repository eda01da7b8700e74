#include "l1sp/error.hpp"
#include "l1sp/geom.hpp"
#include "l1sp/rational.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace l1sp;

namespace {

Polygon scene_a_polygon() { return Polygon{{{2, 1}, {5, 2}, {4, 6}, {1, 5}}}; }

// Winding number reference used to cross-check the crossing-count classifier.
int winding_number(const Point& p, const Polygon& poly) {
    int wn = 0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Point& a = poly[i];
        const Point& b = poly[(i + 1) % poly.size()];
        const Int128 is_left = cross(a, b, p);
        if (a.y <= p.y) {
            if (b.y > p.y && is_left > 0) ++wn;
        } else if (b.y <= p.y && is_left < 0) {
            --wn;
        }
    }
    return wn;
}

Polygon random_star(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> count(3, 12);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (;;) {
        const int k = count(rng);
        std::vector<double> angles(k);
        for (double& a : angles) a = unit(rng) * 2 * M_PI;
        std::sort(angles.begin(), angles.end());
        Polygon poly;
        for (double a : angles) {
            const double r = 5 + 15 * unit(rng);
            poly.vertices.push_back({std::llround(r * std::cos(a)), std::llround(r * std::sin(a))});
        }
        if (signed_area2(poly) <= 0) continue;
        bool simple = true;
        for (std::size_t i = 0; i < poly.size() && simple; ++i) {
            for (std::size_t j = i + 1; j < poly.size() && simple; ++j) {
                const Segment e{poly[i], poly[(i + 1) % poly.size()]};
                const Segment f{poly[j], poly[(j + 1) % poly.size()]};
                const bool adjacent = j == i + 1 || (i == 0 && j + 1 == poly.size());
                const auto hit = segments_intersect(e, f);
                if (!adjacent && hit) simple = false;
                if (adjacent && hit.kind == SegmentIntersection::Kind::Overlap) simple = false;
                if (e.a == e.b) simple = false;
            }
        }
        if (simple) return poly;
    }
}

}  // namespace

TEST(Rational, ArithmeticAndOrdering) {
    const Rational a = Rational::from_fraction(3, 6);
    EXPECT_EQ(a.num(), 1);
    EXPECT_EQ(a.den(), 2);
    EXPECT_EQ((a + Rational(1)).to_string(), "3/2");
    EXPECT_EQ((a * Rational(4)).to_string(), "2");
    EXPECT_EQ((Rational(1) / Rational(-3)).to_string(), "-1/3");
    EXPECT_LT(Rational::from_fraction(1, 3), Rational::from_fraction(1, 2));
    EXPECT_EQ(Rational::parse("19/4"), Rational::from_fraction(19, 4));
    EXPECT_EQ(Rational::parse("-7"), Rational(-7));
    EXPECT_THROW(Rational::parse("1/0"), Error);
    EXPECT_THROW(Rational::parse("x"), Error);
}

TEST(Rational, InfinityAbsorbs) {
    const Rational inf = Rational::infinite();
    EXPECT_TRUE((inf + Rational(5)).is_infinite());
    EXPECT_TRUE((inf * Rational::from_fraction(1, 2)).is_infinite());
    EXPECT_EQ(inf * Rational(0), Rational(0));
    EXPECT_GT(inf, Rational(std::int64_t{1} << 62));
    EXPECT_EQ(inf.to_string(), "inf");
    EXPECT_EQ(Rational::parse("inf"), inf);
}

TEST(Rational, OverflowThrows) {
    const Int128 big = Int128(1) << 100;
    EXPECT_THROW(Rational::from_fraction(big, 1) * Rational::from_fraction(big, 1), Error);
}

TEST(Rational, LargeComparisonFallsBackExactly) {
    const Int128 big = (Int128(1) << 100) + 1;
    const Rational a = Rational::from_fraction(big, big - 2);
    const Rational b = Rational::from_fraction(big + 2, big);
    // (big)/(big-2) > (big+2)/big since big^2 > big^2 - 4.
    EXPECT_GT(a, b);
    EXPECT_LT(b, a);
}

TEST(Geom, L1LengthExamples) {
    EXPECT_EQ(l1_length(Point{0, 0}, Point{3, 4}), 7);
    EXPECT_EQ(l1_length(Point{5, 5}, Point{5, 5}), 0);
    EXPECT_EQ(l1_length(Point{-2, 3}, Point{4, -1}), 10);
}

TEST(Geom, OrientationExamples) {
    EXPECT_EQ(orientation({0, 0}, {1, 0}, {0, 1}), Orientation::Left);
    EXPECT_EQ(orientation({0, 0}, {1, 1}, {2, 2}), Orientation::Collinear);
    EXPECT_EQ(orientation({0, 0}, {0, 1}, {1, 0}), Orientation::Right);
}

TEST(Geom, SegmentIntersectionExamples) {
    const auto cross_hit = segments_intersect({{0, 0}, {4, 0}}, {{2, -1}, {2, 1}});
    ASSERT_EQ(cross_hit.kind, SegmentIntersection::Kind::Point);
    EXPECT_EQ(cross_hit.first, RPoint(Point{2, 0}));
    EXPECT_TRUE(cross_hit.first.is_integral());

    EXPECT_EQ(segments_intersect({{0, 0}, {1, 0}}, {{2, 0}, {3, 0}}).kind, SegmentIntersection::Kind::Disjoint);

    const auto overlap = segments_intersect({{0, 0}, {2, 2}}, {{1, 1}, {3, 3}});
    ASSERT_EQ(overlap.kind, SegmentIntersection::Kind::Overlap);
    EXPECT_EQ(overlap.first, RPoint(Point{1, 1}));
    EXPECT_EQ(overlap.second, RPoint(Point{2, 2}));

    const auto touching = segments_intersect({{0, 0}, {2, 0}}, {{2, 0}, {2, 5}});
    ASSERT_EQ(touching.kind, SegmentIntersection::Kind::Point);
    EXPECT_EQ(touching.first, RPoint(Point{2, 0}));

    const auto proper = segments_intersect({{0, 0}, {3, 1}}, {{0, 1}, {3, 0}});
    ASSERT_EQ(proper.kind, SegmentIntersection::Kind::Point);
    EXPECT_EQ(proper.first, RPoint(Rational::from_fraction(3, 2), Rational::from_fraction(1, 2)));
}

TEST(Geom, PointInPolygonSceneA) {
    const Polygon poly = scene_a_polygon();
    EXPECT_GT(signed_area2(poly), 0);
    EXPECT_EQ(point_in_polygon(Point{0, 0}, poly), PointLocation::Exterior);
    EXPECT_EQ(point_in_polygon(Point{2, 1}, poly), PointLocation::Boundary);
    EXPECT_EQ(point_in_polygon(Point{3, 3}, poly), PointLocation::Interior);
    EXPECT_EQ(point_in_polygon(RPoint(Rational::from_fraction(3, 2), Rational(3)), poly), PointLocation::Boundary);
    EXPECT_EQ(point_in_polygon(RPoint(Rational::from_fraction(7, 4), Rational(3)), poly), PointLocation::Interior);
    EXPECT_EQ(bounding_box(poly), (Box{1, 1, 5, 6}));
}

TEST(GeomProperty, L1SymmetricAndTriangle) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::int64_t> coord(-1000000, 1000000);
    for (int i = 0; i < 20000; ++i) {
        const Point a{coord(rng), coord(rng)}, b{coord(rng), coord(rng)}, c{coord(rng), coord(rng)};
        ASSERT_EQ(l1_length(a, b), l1_length(b, a));
        ASSERT_LE(l1_length(a, c), l1_length(a, b) + l1_length(b, c));
    }
}

TEST(GeomProperty, OrientationAntisymmetric) {
    std::mt19937_64 rng(12);
    std::uniform_int_distribution<std::int64_t> coord(-50, 50);
    for (int i = 0; i < 20000; ++i) {
        const Point a{coord(rng), coord(rng)}, b{coord(rng), coord(rng)}, c{coord(rng), coord(rng)};
        ASSERT_EQ(static_cast<int>(orientation(a, b, c)), -static_cast<int>(orientation(a, c, b)));
    }
}

TEST(GeomProperty, IntersectionSymmetric) {
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<std::int64_t> coord(-6, 6);
    for (int i = 0; i < 20000; ++i) {
        const Segment s{{coord(rng), coord(rng)}, {coord(rng), coord(rng)}};
        const Segment t{{coord(rng), coord(rng)}, {coord(rng), coord(rng)}};
        const auto st = segments_intersect(s, t);
        const auto ts = segments_intersect(t, s);
        ASSERT_EQ(st.kind, ts.kind);
        if (st.kind == SegmentIntersection::Kind::Point) ASSERT_EQ(st.first, ts.first);
        if (st.kind == SegmentIntersection::Kind::Overlap) {
            ASSERT_EQ(std::min(st.first, st.second), std::min(ts.first, ts.second));
            ASSERT_EQ(std::max(st.first, st.second), std::max(ts.first, ts.second));
        }
        if (st.kind == SegmentIntersection::Kind::Point) {
            ASSERT_TRUE(on_segment(st.first, s));
            ASSERT_TRUE(on_segment(st.first, t));
        }
    }
}

TEST(GeomProperty, PointInPolygonMatchesWindingNumber) {
    std::mt19937_64 rng(14);
    std::uniform_int_distribution<std::int64_t> coord(-22, 22);
    Polygon poly = random_star(rng);
    for (int i = 0; i < 100000; ++i) {
        if (i % 100 == 0) poly = random_star(rng);
        const Point p{coord(rng), coord(rng)};
        const PointLocation loc = point_in_polygon(p, poly);
        bool on_boundary = false;
        for (std::size_t k = 0; k < poly.size(); ++k) {
            on_boundary = on_boundary || on_segment(p, Segment{poly[k], poly[(k + 1) % poly.size()]});
        }
        if (on_boundary) {
            ASSERT_EQ(loc, PointLocation::Boundary);
        } else {
            ASSERT_EQ(loc == PointLocation::Interior, winding_number(p, poly) != 0);
        }
    }
}
