#pragma once

#include "l1sp/geom.hpp"
#include "l1sp/rational.hpp"
#include "l1sp/scene.hpp"

#include <cstdint>
#include <vector>

namespace l1sp {

struct OraclePath {
    Rational length;
    std::vector<RPoint> polyline;
};

/// Brute-force L1 distances among polygonal obstacles: Dijkstra over the
/// visibility graph of the obstacle vertices plus the two query points.
/// Vertex-to-vertex visibility is computed once on construction.
class UnweightedOracle {
public:
    explicit UnweightedOracle(const Scene& scene);

    /// Throws POINT_INSIDE_OBSTACLE / OUT_OF_BBOX for bad query points.
    OraclePath shortest_path(const Point& s, const Point& t) const;
    /// Distance between obstacle vertices i and j (global vertex ids).
    Int128 vertex_distance(std::size_t i, std::size_t j) const;
    /// All distances from vertex i.
    std::vector<Int128> vertex_distances(std::size_t i) const;

    /// True when the closed segment ab avoids every obstacle interior.
    bool segment_free(const Point& a, const Point& b) const;

    std::size_t vertex_count() const { return vertices_.size(); }
    const Point& vertex(std::size_t i) const { return vertices_[i]; }

private:
    Scene scene_;
    std::vector<Point> vertices_;
    std::vector<Polygon> doubled_;
    std::vector<Box> boxes_;
    std::vector<std::vector<std::int32_t>> visible_;  // vertex visibility lists

    void check_query_point(const Point& p) const;
};

OraclePath oracle_unweighted(const Scene& scene, const Point& s, const Point& t);

/// Weighted rectilinear distances by Dijkstra on the Hanan grid through the
/// obstacle vertices, the bbox and the query points. Internal projections of
/// rectilinear obstacles already lie on these lines.
/// `refine` adds a midpoint line between every pair of consecutive grid lines.
class WeightedOracle {
public:
    explicit WeightedOracle(const Scene& scene);

    OraclePath shortest_path(const Point& s, const Point& t, bool refine = false) const;

    /// Weighted cost of an axis-parallel segment, priced independently of the
    /// engine: interior pieces at (1 + w), free and boundary pieces at 1.
    Rational segment_cost(const RPoint& a, const RPoint& b) const;

private:
    Scene scene_;
    std::vector<std::int64_t> base_xs_;
    std::vector<std::int64_t> base_ys_;
    std::vector<std::int32_t> regions_;  // per interleaved (line/gap) cell

    /// -1 for free space or boundary, otherwise the obstacle index.
    std::int32_t region(const Rational& x, const Rational& y) const;
};

OraclePath oracle_weighted(const Scene& scene, const Point& s, const Point& t);

}  // namespace l1sp
