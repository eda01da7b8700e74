#include "l1sp/error.hpp"
#include "l1sp/oracle.hpp"

#include <algorithm>
#include <map>
#include <queue>

namespace l1sp {

namespace {

void sort_unique(std::vector<std::int64_t>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

// Interleaved index of a coordinate among sorted lines: line i -> 2i+1,
// open gap before line i -> 2i, past the last line -> 2m.
std::size_t interleaved(const std::vector<std::int64_t>& lines, const Rational& c) {
    const auto it = std::lower_bound(lines.begin(), lines.end(), c,
                                     [](std::int64_t line, const Rational& v) { return Rational(line) < v; });
    const auto i = static_cast<std::size_t>(it - lines.begin());
    if (it != lines.end() && Rational(*it) == c) return 2 * i + 1;
    return 2 * i;
}

// Representative doubled coordinate for interleaved slot k.
std::int64_t representative2(const std::vector<std::int64_t>& lines, std::size_t k) {
    if (k % 2 == 1) return 2 * lines[k / 2];
    if (k == 0) return 2 * lines.front() - 1;
    if (k == 2 * lines.size()) return 2 * lines.back() + 1;
    return lines[k / 2 - 1] + lines[k / 2];
}

}  // namespace

WeightedOracle::WeightedOracle(const Scene& scene) : scene_(scene) {
    if (!scene_.weighted()) throw Error(ErrorCode::WrongMode, "weighted oracle needs a weighted scene");
    base_xs_ = {scene_.bbox.x0, scene_.bbox.x1};
    base_ys_ = {scene_.bbox.y0, scene_.bbox.y1};
    for (const Polygon& poly : scene_.obstacles) {
        for (const Point& p : poly.vertices) {
            base_xs_.push_back(p.x);
            base_ys_.push_back(p.y);
        }
    }
    sort_unique(base_xs_);
    sort_unique(base_ys_);

    const std::size_t w = 2 * base_xs_.size() + 1, h = 2 * base_ys_.size() + 1;
    std::vector<Polygon> doubled;
    for (const Polygon& poly : scene_.obstacles) {
        Polygon d;
        for (const Point& p : poly.vertices) d.vertices.push_back({2 * p.x, 2 * p.y});
        doubled.push_back(std::move(d));
    }
    regions_.assign(w * h, -1);
    for (std::size_t i = 0; i < w; ++i) {
        for (std::size_t j = 0; j < h; ++j) {
            const Point p{representative2(base_xs_, i), representative2(base_ys_, j)};
            for (std::size_t o = 0; o < doubled.size(); ++o) {
                if (point_in_polygon(p, doubled[o]) == PointLocation::Interior) {
                    regions_[i * h + j] = static_cast<std::int32_t>(o);
                    break;
                }
            }
        }
    }
}

std::int32_t WeightedOracle::region(const Rational& x, const Rational& y) const {
    const std::size_t h = 2 * base_ys_.size() + 1;
    return regions_[interleaved(base_xs_, x) * h + interleaved(base_ys_, y)];
}

Rational WeightedOracle::segment_cost(const RPoint& a, const RPoint& b) const {
    if (a.x != b.x && a.y != b.y) throw Error(ErrorCode::NonRectilinearEdge, "segment is not axis-parallel");
    const bool horizontal = a.y == b.y;
    const Rational lo = horizontal ? std::min(a.x, b.x) : std::min(a.y, b.y);
    const Rational hi = horizontal ? std::max(a.x, b.x) : std::max(a.y, b.y);
    const auto& lines = horizontal ? base_xs_ : base_ys_;
    std::vector<Rational> cuts{lo};
    for (std::int64_t line : lines) {
        if (Rational(line) > lo && Rational(line) < hi) cuts.emplace_back(line);
    }
    cuts.push_back(hi);
    Rational total(0);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const Rational len = cuts[i + 1] - cuts[i];
        if (len == Rational(0)) continue;
        const Rational mid = (cuts[i] + cuts[i + 1]) / Rational(2);
        const std::int32_t r = horizontal ? region(mid, a.y) : region(a.x, mid);
        total = total + (r < 0 ? len : (Rational(1) + scene_.weights[static_cast<std::size_t>(r)]) * len);
    }
    return total;
}

OraclePath WeightedOracle::shortest_path(const Point& s, const Point& t, bool refine) const {
    for (const Point& p : {s, t}) {
        if (!scene_.bbox.contains(p)) throw Error(ErrorCode::OutOfBbox, to_string(p) + " is outside the bbox");
        const std::int32_t r = region(p.x, p.y);
        if (r >= 0) throw Error(ErrorCode::PointInsideObstacle, to_string(p) + " is inside obstacle " + std::to_string(r));
    }
    // Grid lines in doubled coordinates.
    std::vector<std::int64_t> xs, ys;
    for (std::int64_t x : base_xs_) xs.push_back(2 * x);
    for (std::int64_t y : base_ys_) ys.push_back(2 * y);
    for (const Point& p : {s, t}) {
        xs.push_back(2 * p.x);
        ys.push_back(2 * p.y);
    }
    sort_unique(xs);
    sort_unique(ys);
    if (refine) {
        for (auto* lines : {&xs, &ys}) {
            const std::size_t count = lines->size();
            for (std::size_t i = 0; i + 1 < count; ++i) {
                // Lines are even, so the midpoint of doubled values stays integral.
                lines->push_back(((*lines)[i] + (*lines)[i + 1]) / 2);
            }
            sort_unique(*lines);
        }
    }
    const std::size_t m = xs.size(), k = ys.size();
    auto coord = [](std::int64_t v2) { return Rational::from_fraction(v2, 2); };
    auto id_of = [&](std::size_t i, std::size_t j) { return i * k + j; };

    // Edge costs: horizontal edge (i,j)-(i+1,j) and vertical edge (i,j)-(i,j+1).
    auto edge_cost = [&](std::size_t i, std::size_t j, bool horizontal) {
        const Rational len = horizontal ? coord(xs[i + 1] - xs[i]) : coord(ys[j + 1] - ys[j]);
        const Rational mx = horizontal ? coord(xs[i] + xs[i + 1]) / Rational(2) : coord(xs[i]);
        const Rational my = horizontal ? coord(ys[j]) : coord(ys[j] + ys[j + 1]) / Rational(2);
        const std::int32_t r = region(mx, my);
        return r < 0 ? len : (Rational(1) + scene_.weights[static_cast<std::size_t>(r)]) * len;
    };

    const std::size_t source = id_of(static_cast<std::size_t>(std::lower_bound(xs.begin(), xs.end(), 2 * s.x) - xs.begin()),
                                     static_cast<std::size_t>(std::lower_bound(ys.begin(), ys.end(), 2 * s.y) - ys.begin()));
    const std::size_t target = id_of(static_cast<std::size_t>(std::lower_bound(xs.begin(), xs.end(), 2 * t.x) - xs.begin()),
                                     static_cast<std::size_t>(std::lower_bound(ys.begin(), ys.end(), 2 * t.y) - ys.begin()));
    std::vector<Rational> dist(m * k, Rational::infinite());
    std::vector<std::int64_t> pred(m * k, -1);
    using Item = std::pair<Rational, std::size_t>;
    auto cmp = [](const Item& a, const Item& b) { return a.first > b.first || (a.first == b.first && a.second > b.second); };
    std::priority_queue<Item, std::vector<Item>, decltype(cmp)> heap(cmp);
    dist[source] = Rational(0);
    heap.emplace(Rational(0), source);
    while (!heap.empty()) {
        const auto [d, u] = heap.top();
        heap.pop();
        if (d != dist[u]) continue;
        if (u == target) break;
        const std::size_t i = u / k, j = u % k;
        auto relax = [&](std::size_t v, const Rational& w) {
            if (w.is_infinite()) return;
            const Rational nd = d + w;
            if (nd < dist[v]) {
                dist[v] = nd;
                pred[v] = static_cast<std::int64_t>(u);
                heap.emplace(nd, v);
            }
        };
        if (i + 1 < m) relax(id_of(i + 1, j), edge_cost(i, j, true));
        if (i > 0) relax(id_of(i - 1, j), edge_cost(i - 1, j, true));
        if (j + 1 < k) relax(id_of(i, j + 1), edge_cost(i, j, false));
        if (j > 0) relax(id_of(i, j - 1), edge_cost(i, j - 1, false));
    }
    if (dist[target].is_infinite()) throw Error(ErrorCode::InfeasibleParameters, "query points are disconnected");
    OraclePath path;
    path.length = dist[target];
    for (std::int64_t v = static_cast<std::int64_t>(target); v >= 0; v = pred[static_cast<std::size_t>(v)]) {
        const auto u = static_cast<std::size_t>(v);
        path.polyline.emplace_back(coord(xs[u / k]), coord(ys[u % k]));
    }
    std::reverse(path.polyline.begin(), path.polyline.end());
    return path;
}

OraclePath oracle_weighted(const Scene& scene, const Point& s, const Point& t) {
    return WeightedOracle(scene).shortest_path(s, t);
}

}  // namespace l1sp
