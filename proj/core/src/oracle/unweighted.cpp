#include "l1sp/error.hpp"
#include "l1sp/oracle.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace l1sp {

namespace {

constexpr Int128 kUnreached = std::numeric_limits<Int128>::max();

Polygon doubled(const Polygon& poly) {
    Polygon out;
    for (const Point& p : poly.vertices) out.vertices.push_back({2 * p.x, 2 * p.y});
    return out;
}

bool properly_cross(const Point& a, const Point& b, const Point& c, const Point& d) {
    const Int128 d1 = cross(a, b, c), d2 = cross(a, b, d), d3 = cross(c, d, a), d4 = cross(c, d, b);
    return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
}

}  // namespace

UnweightedOracle::UnweightedOracle(const Scene& scene) : scene_(scene) {
    for (const Polygon& poly : scene_.obstacles) {
        vertices_.insert(vertices_.end(), poly.vertices.begin(), poly.vertices.end());
        doubled_.push_back(doubled(poly));
        boxes_.push_back(bounding_box(poly));
    }
    visible_.resize(vertices_.size());
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        for (std::size_t j = i + 1; j < vertices_.size(); ++j) {
            if (segment_free(vertices_[i], vertices_[j])) {
                visible_[i].push_back(static_cast<std::int32_t>(j));
                visible_[j].push_back(static_cast<std::int32_t>(i));
            }
        }
    }
}

bool UnweightedOracle::segment_free(const Point& a, const Point& b) const {
    const Box seg_box{std::min(a.x, b.x), std::min(a.y, b.y), std::max(a.x, b.x), std::max(a.y, b.y)};
    // Cut points along ab where it touches some boundary without crossing it.
    std::vector<Point> cuts{a, b};
    for (std::size_t o = 0; o < scene_.obstacles.size(); ++o) {
        const Box& box = boxes_[o];
        if (box.x1 < seg_box.x0 || seg_box.x1 < box.x0 || box.y1 < seg_box.y0 || seg_box.y1 < box.y0) continue;
        const Polygon& poly = scene_.obstacles[o];
        for (std::size_t i = 0; i < poly.size(); ++i) {
            const Point& c = poly[i];
            const Point& d = poly[(i + 1) % poly.size()];
            if (a != b && properly_cross(a, b, c, d)) return false;
            if (on_segment(c, Segment{a, b})) cuts.push_back(c);
            if (on_segment(a, Segment{c, d})) cuts.push_back(a);
        }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    // Points on ab sorted lexicographically are sorted along ab; test each
    // piece at its midpoint (doubled coordinates keep it integral).
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const Point mid{cuts[i].x + cuts[i + 1].x, cuts[i].y + cuts[i + 1].y};
        for (std::size_t o = 0; o < doubled_.size(); ++o) {
            const Box& box = boxes_[o];
            if (mid.x <= 2 * box.x0 || mid.x >= 2 * box.x1 || mid.y <= 2 * box.y0 || mid.y >= 2 * box.y1) continue;
            if (point_in_polygon(mid, doubled_[o]) == PointLocation::Interior) return false;
        }
    }
    if (cuts.size() == 1) {
        for (const Polygon& poly : scene_.obstacles) {
            if (point_in_polygon(a, poly) == PointLocation::Interior) return false;
        }
    }
    return true;
}

void UnweightedOracle::check_query_point(const Point& p) const {
    if (!scene_.bbox.contains(p)) throw Error(ErrorCode::OutOfBbox, to_string(p) + " is outside the bbox");
    for (std::size_t o = 0; o < scene_.obstacles.size(); ++o) {
        if (point_in_polygon(p, scene_.obstacles[o]) == PointLocation::Interior) {
            throw Error(ErrorCode::PointInsideObstacle, to_string(p) + " is inside obstacle " + std::to_string(o));
        }
    }
}

OraclePath UnweightedOracle::shortest_path(const Point& s, const Point& t) const {
    check_query_point(s);
    check_query_point(t);
    const std::size_t n = vertices_.size();
    // Nodes: vertices 0..n-1, s = n, t = n+1.
    const std::size_t sid = n, tid = n + 1;
    std::vector<std::int32_t> from_s, from_t;
    for (std::size_t i = 0; i < n; ++i) {
        if (segment_free(s, vertices_[i])) from_s.push_back(static_cast<std::int32_t>(i));
        if (segment_free(t, vertices_[i])) from_t.push_back(static_cast<std::int32_t>(i));
    }
    std::vector<bool> sees_t(n, false);
    for (std::int32_t v : from_t) sees_t[static_cast<std::size_t>(v)] = true;
    auto point_of = [&](std::size_t id) { return id == sid ? s : (id == tid ? t : vertices_[id]); };

    std::vector<Int128> dist(n + 2, kUnreached);
    std::vector<std::int32_t> pred(n + 2, -1);
    using Item = std::pair<Int128, std::int32_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[sid] = 0;
    heap.emplace(0, static_cast<std::int32_t>(sid));
    auto relax = [&](std::size_t u, std::size_t v) {
        const Int128 nd = dist[u] + l1_length(point_of(u), point_of(v));
        if (nd < dist[v]) {
            dist[v] = nd;
            pred[v] = static_cast<std::int32_t>(u);
            heap.emplace(nd, static_cast<std::int32_t>(v));
        }
    };
    while (!heap.empty()) {
        const auto [d, u32] = heap.top();
        heap.pop();
        const auto u = static_cast<std::size_t>(u32);
        if (d != dist[u]) continue;
        if (u == tid) break;
        if (u == sid) {
            if (segment_free(s, t)) relax(sid, tid);
            for (std::int32_t v : from_s) relax(sid, static_cast<std::size_t>(v));
            continue;
        }
        for (std::int32_t v : visible_[u]) relax(u, static_cast<std::size_t>(v));
        if (sees_t[u]) relax(u, tid);
    }
    if (dist[tid] == kUnreached) throw Error(ErrorCode::InfeasibleParameters, "query points are disconnected");
    OraclePath path;
    path.length = Rational::from_fraction(dist[tid], 1);
    for (std::int32_t v = static_cast<std::int32_t>(tid); v >= 0; v = pred[static_cast<std::size_t>(v)]) {
        path.polyline.push_back(point_of(static_cast<std::size_t>(v)));
    }
    std::reverse(path.polyline.begin(), path.polyline.end());
    return path;
}

std::vector<Int128> UnweightedOracle::vertex_distances(std::size_t i) const {
    const std::size_t n = vertices_.size();
    std::vector<Int128> dist(n, kUnreached);
    using Item = std::pair<Int128, std::int32_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[i] = 0;
    heap.emplace(0, static_cast<std::int32_t>(i));
    while (!heap.empty()) {
        const auto [d, u32] = heap.top();
        heap.pop();
        const auto u = static_cast<std::size_t>(u32);
        if (d != dist[u]) continue;
        for (std::int32_t v32 : visible_[u]) {
            const auto v = static_cast<std::size_t>(v32);
            const Int128 nd = d + l1_length(vertices_[u], vertices_[v]);
            if (nd < dist[v]) {
                dist[v] = nd;
                heap.emplace(nd, v32);
            }
        }
    }
    return dist;
}

Int128 UnweightedOracle::vertex_distance(std::size_t i, std::size_t j) const { return vertex_distances(i)[j]; }

OraclePath oracle_unweighted(const Scene& scene, const Point& s, const Point& t) {
    return UnweightedOracle(scene).shortest_path(s, t);
}

}  // namespace l1sp
