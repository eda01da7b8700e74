#include "l1sp/visibility.hpp"

#include "l1sp/error.hpp"

#include <algorithm>
#include <set>

namespace l1sp {

Point direction_vector(Direction d) {
    switch (d) {
        case Direction::Left: return {-1, 0};
        case Direction::Right: return {1, 0};
        case Direction::Up: return {0, 1};
        case Direction::Down: return {0, -1};
    }
    return {0, 0};
}

Direction opposite(Direction d) {
    switch (d) {
        case Direction::Left: return Direction::Right;
        case Direction::Right: return Direction::Left;
        case Direction::Up: return Direction::Down;
        case Direction::Down: return Direction::Up;
    }
    return d;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

Int128 cross_vec(const Point& a, const Point& b) { return Int128(a.x) * b.y - Int128(a.y) * b.x; }
Int128 dot_vec(const Point& a, const Point& b) { return Int128(a.x) * b.x + Int128(a.y) * b.y; }
Point sub(const Point& a, const Point& b) { return {a.x - b.x, a.y - b.y}; }

bool same_direction(const Point& v, const Point& d) { return cross_vec(v, d) == 0 && dot_vec(v, d) > 0; }

}  // namespace

// ---------------------------------------------------------------------------
// SceneGeometry

SceneGeometry::SceneGeometry(const Scene& scene) {
    for (std::size_t o = 0; o < scene.obstacles.size(); ++o) {
        const Polygon& poly = scene.obstacles[o];
        const auto base = static_cast<std::int32_t>(vertices_.size());
        const auto k = static_cast<std::int32_t>(poly.size());
        first_.push_back(base);
        for (std::int32_t i = 0; i < k; ++i) {
            vertices_.push_back(poly[static_cast<std::size_t>(i)]);
            obstacle_.push_back(static_cast<std::int32_t>(o));
            next_.push_back(base + (i + 1) % k);
            prev_.push_back(base + (i + k - 1) % k);
            index_.emplace(poly[static_cast<std::size_t>(i)], base + i);
        }
    }
}

std::int32_t SceneGeometry::vertex_at(const Point& p) const {
    const auto it = index_.find(p);
    return it == index_.end() ? -1 : it->second;
}

// ---------------------------------------------------------------------------
// VisibilityDecomposition

VisibilityDecomposition::VisibilityDecomposition(const SceneGeometry& geometry, const Box& bbox, Axis axis)
    : geometry_(&geometry), axis_(axis) {
    frame_bbox_ = axis == Axis::Vertical ? bbox : Box{-bbox.y1, bbox.x0, -bbox.y0, bbox.x1};
    const auto n = static_cast<std::int32_t>(geometry.vertex_count());
    frame_edges_.reserve(static_cast<std::size_t>(n));

    std::vector<std::int64_t> xs;
    xs.reserve(static_cast<std::size_t>(n));
    for (std::int32_t v = 0; v < n; ++v) {
        const Segment e = geometry.edge(v);
        frame_edges_.push_back({to_frame(e.a), to_frame(e.b)});
        xs.push_back(to_frame(geometry.vertex(v)).x);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    events_.resize(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) events_[i].x = xs[i];

    auto index_of = [&](std::int64_t x) {
        return static_cast<std::size_t>(std::lower_bound(xs.begin(), xs.end(), x) - xs.begin());
    };
    std::vector<std::vector<std::int32_t>> inserts(xs.size()), erases(xs.size());
    for (std::int32_t v = 0; v < n; ++v) {
        const Point p = to_frame(geometry.vertex(v));
        events_[index_of(p.x)].vertices.emplace_back(p.y, v);
        const Segment& e = frame_edges_[static_cast<std::size_t>(v)];
        if (e.a.x == e.b.x) {
            events_[index_of(e.a.x)].vertical.push_back({std::min(e.a.y, e.b.y), std::max(e.a.y, e.b.y), v});
        } else {
            inserts[index_of(std::min(e.a.x, e.b.x))].push_back(v);
            erases[index_of(std::max(e.a.x, e.b.x))].push_back(v);
        }
    }
    for (Event& ev : events_) {
        std::sort(ev.vertices.begin(), ev.vertices.end());
        std::sort(ev.vertical.begin(), ev.vertical.end(),
                  [](const VerticalEdge& a, const VerticalEdge& b) { return a.lo < b.lo; });
    }

    auto add_cell = [&](std::int32_t bottom, std::int32_t top, std::int64_t x) {
        const auto id = static_cast<std::int32_t>(cells_.size());
        cells_.push_back({bottom, top, x});
        cells_by_pair_[{bottom, top}].emplace_back(x, id);
    };
    add_cell(kBboxBottom, kBboxTop, frame_bbox_.x0);

    std::int32_t root = -1;
    versions_.resize(events_.size());
    for (std::size_t k = 0; k < events_.size(); ++k) {
        const std::int64_t x = events_[k].x;
        for (std::int32_t e : erases[k]) root = erase(root, e, x);
        for (std::int32_t e : inserts[k]) root = insert(root, e, x);
        versions_[k] = root;

        // Gaps touching a vertex at x start new cells.
        std::set<std::pair<std::int32_t, std::int32_t>> started;
        const std::int32_t m = size(root);
        for (const auto& [y, vid] : events_[k].vertices) {
            const std::int32_t lo = count_below(root, x, y, false);
            const std::int32_t hi = count_below(root, x, y, true);
            for (std::int32_t g = lo; g <= hi; ++g) {
                const std::int32_t bottom = g == 0 ? kBboxBottom : kth(root, g - 1);
                const std::int32_t top = g == m ? kBboxTop : kth(root, g);
                if (!is_free_gap_bottom(bottom)) continue;
                if (started.insert({bottom, top}).second) add_cell(bottom, top, x);
            }
        }
    }
}

std::int32_t VisibilityDecomposition::make_node(std::int32_t edge, std::int32_t left, std::int32_t right) {
    nodes_.push_back({edge, left, right, size(left) + size(right) + 1,
                      splitmix64(static_cast<std::uint64_t>(edge) * 2 + (axis_ == Axis::Vertical ? 1 : 0))});
    return static_cast<std::int32_t>(nodes_.size() - 1);
}

std::int32_t VisibilityDecomposition::copy_with(std::int32_t node, std::int32_t left, std::int32_t right) {
    Node copy = nodes_[static_cast<std::size_t>(node)];
    copy.left = left;
    copy.right = right;
    copy.size = size(left) + size(right) + 1;
    nodes_.push_back(copy);
    return static_cast<std::int32_t>(nodes_.size() - 1);
}

std::int32_t VisibilityDecomposition::merge(std::int32_t a, std::int32_t b) {
    if (a < 0) return b;
    if (b < 0) return a;
    const Node na = nodes_[static_cast<std::size_t>(a)];
    const Node nb = nodes_[static_cast<std::size_t>(b)];
    if (na.priority > nb.priority) return copy_with(a, na.left, merge(na.right, b));
    return copy_with(b, merge(a, nb.left), nb.right);
}

std::pair<std::int32_t, std::int32_t> VisibilityDecomposition::split_insert(std::int32_t root, std::int32_t edge,
                                                                            std::int64_t x) {
    if (root < 0) return {-1, -1};
    const Node node = nodes_[static_cast<std::size_t>(root)];
    if (below_after(node.edge, edge, x)) {
        const auto [l, r] = split_insert(node.right, edge, x);
        return {copy_with(root, node.left, l), r};
    }
    const auto [l, r] = split_insert(node.left, edge, x);
    return {l, copy_with(root, r, node.right)};
}

std::int32_t VisibilityDecomposition::insert(std::int32_t root, std::int32_t edge, std::int64_t x) {
    const auto [l, r] = split_insert(root, edge, x);
    return merge(merge(l, make_node(edge, -1, -1)), r);
}

std::int32_t VisibilityDecomposition::erase(std::int32_t root, std::int32_t edge, std::int64_t x) {
    if (root < 0) throw std::logic_error("sweep status lost an edge");
    const Node node = nodes_[static_cast<std::size_t>(root)];
    if (node.edge == edge) return merge(node.left, node.right);
    if (below_before(edge, node.edge, x)) return copy_with(root, erase(node.left, edge, x), node.right);
    return copy_with(root, node.left, erase(node.right, edge, x));
}

Rational VisibilityDecomposition::value_at(std::int32_t edge, std::int64_t x) const {
    const Segment& e = frame_edges_[static_cast<std::size_t>(edge)];
    const Int128 dx = Int128(e.b.x) - e.a.x;
    return Rational::from_fraction(Int128(e.a.y) * dx + (Int128(x) - e.a.x) * (Int128(e.b.y) - e.a.y), dx);
}

int VisibilityDecomposition::compare_value(std::int32_t edge, std::int64_t x, std::int64_t y) const {
    const Segment& e = frame_edges_[static_cast<std::size_t>(edge)];
    const Int128 dx = Int128(e.b.x) - e.a.x;
    const Int128 num = (Int128(e.a.y) - y) * dx + (Int128(x) - e.a.x) * (Int128(e.b.y) - e.a.y);
    const int s = num > 0 ? 1 : (num < 0 ? -1 : 0);
    return dx > 0 ? s : -s;
}

namespace {

// Compares slopes of two non-vertical frame edges: negative when a is flatter-or-lower.
int compare_slope(const Segment& a, const Segment& b) {
    Int128 adx = Int128(a.b.x) - a.a.x, ady = Int128(a.b.y) - a.a.y;
    Int128 bdx = Int128(b.b.x) - b.a.x, bdy = Int128(b.b.y) - b.a.y;
    if (adx < 0) {
        adx = -adx;
        ady = -ady;
    }
    if (bdx < 0) {
        bdx = -bdx;
        bdy = -bdy;
    }
    const Int128 lhs = ady * bdx;
    const Int128 rhs = bdy * adx;
    return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

}  // namespace

bool VisibilityDecomposition::below_after(std::int32_t e, std::int32_t f, std::int64_t x) const {
    const Rational ve = value_at(e, x);
    const Rational vf = value_at(f, x);
    if (ve != vf) return ve < vf;
    return compare_slope(frame_edges_[static_cast<std::size_t>(e)], frame_edges_[static_cast<std::size_t>(f)]) < 0;
}

bool VisibilityDecomposition::below_before(std::int32_t e, std::int32_t f, std::int64_t x) const {
    const Rational ve = value_at(e, x);
    const Rational vf = value_at(f, x);
    if (ve != vf) return ve < vf;
    return compare_slope(frame_edges_[static_cast<std::size_t>(e)], frame_edges_[static_cast<std::size_t>(f)]) > 0;
}

std::int32_t VisibilityDecomposition::count_below(std::int32_t root, std::int64_t x, std::int64_t y,
                                                  bool inclusive) const {
    std::int32_t count = 0;
    while (root >= 0) {
        const Node& node = nodes_[static_cast<std::size_t>(root)];
        const int c = compare_value(node.edge, x, y);
        if (c < 0 || (inclusive && c == 0)) {
            count += size(node.left) + 1;
            root = node.right;
        } else {
            root = node.left;
        }
    }
    return count;
}

std::int32_t VisibilityDecomposition::kth(std::int32_t root, std::int32_t k) const {
    while (root >= 0) {
        const Node& node = nodes_[static_cast<std::size_t>(root)];
        const std::int32_t ls = size(node.left);
        if (k < ls) {
            root = node.left;
        } else if (k == ls) {
            return node.edge;
        } else {
            k -= ls + 1;
            root = node.right;
        }
    }
    throw std::logic_error("rank out of range");
}

bool VisibilityDecomposition::is_free_gap_bottom(std::int32_t edge) const {
    if (edge == kBboxBottom) return true;
    const Segment& e = frame_edges_[static_cast<std::size_t>(edge)];
    return e.b.x < e.a.x;
}

std::int32_t VisibilityDecomposition::event_index(std::int64_t x) const {
    const auto it = std::lower_bound(events_.begin(), events_.end(), x,
                                     [](const Event& e, std::int64_t v) { return e.x < v; });
    if (it == events_.end() || it->x != x) return -1;
    return static_cast<std::int32_t>(it - events_.begin());
}

std::int32_t VisibilityDecomposition::slab_root(std::int64_t x, bool right_of_event) const {
    const auto it = std::lower_bound(events_.begin(), events_.end(), x,
                                     [](const Event& e, std::int64_t v) { return e.x < v; });
    auto k = static_cast<std::int32_t>(it - events_.begin());  // events before x
    if (right_of_event && it != events_.end() && it->x == x) ++k;
    return k == 0 ? -1 : versions_[static_cast<std::size_t>(k - 1)];
}

VisibilityDecomposition::FrameHit VisibilityDecomposition::first_hit(const Point& p, bool up) const {
    FrameHit hit;
    const std::int32_t root = slab_root(p.x, false);
    const std::int32_t m = size(root);
    if (up) {
        const std::int32_t r = count_below(root, p.x, p.y, true);
        if (r < m) {
            const std::int32_t e = kth(root, r);
            hit.found = true;
            hit.y = value_at(e, p.x);
            hit.contact = {BoundaryContact::Kind::Edge, e, geometry_->obstacle_of(e)};
        }
    } else {
        const std::int32_t r = count_below(root, p.x, p.y, false);
        if (r > 0) {
            const std::int32_t e = kth(root, r - 1);
            hit.found = true;
            hit.y = value_at(e, p.x);
            hit.contact = {BoundaryContact::Kind::Edge, e, geometry_->obstacle_of(e)};
        }
    }
    const std::int32_t k = event_index(p.x);
    if (k >= 0) {
        const auto& vs = events_[static_cast<std::size_t>(k)].vertices;
        const std::pair<std::int64_t, std::int32_t> probe{p.y, up ? INT32_MAX : INT32_MIN};
        const auto it = std::upper_bound(vs.begin(), vs.end(), probe);
        const std::pair<std::int64_t, std::int32_t>* vertex = nullptr;
        if (up) {
            if (it != vs.end()) vertex = &*it;
        } else {
            auto lo = std::lower_bound(vs.begin(), vs.end(), std::make_pair(p.y, INT32_MIN));
            if (lo != vs.begin()) vertex = &*(lo - 1);
        }
        if (vertex != nullptr) {
            const Rational vy(vertex->first);
            const bool better = !hit.found || (up ? vy <= hit.y : vy >= hit.y);
            if (better) {
                hit.found = true;
                hit.y = vy;
                hit.contact = {BoundaryContact::Kind::Vertex, vertex->second, geometry_->obstacle_of(vertex->second)};
            }
        }
    }
    return hit;
}

std::int32_t VisibilityDecomposition::edge_through(const Point& p) const {
    const std::int32_t root = slab_root(p.x, false);
    const std::int32_t r = count_below(root, p.x, p.y, false);
    if (r < size(root)) {
        const std::int32_t e = kth(root, r);
        const Segment& s = frame_edges_[static_cast<std::size_t>(e)];
        if (compare_value(e, p.x, p.y) == 0 && std::min(s.a.x, s.b.x) < p.x && p.x < std::max(s.a.x, s.b.x)) return e;
    }
    const std::int32_t k = event_index(p.x);
    if (k >= 0) {
        for (const VerticalEdge& v : events_[static_cast<std::size_t>(k)].vertical) {
            if (v.lo > p.y) break;
            if (v.lo < p.y && p.y < v.hi) return v.edge;
        }
    }
    return -1;
}

std::int32_t VisibilityDecomposition::cell_of(const Point& p) const {
    const std::int32_t root = slab_root(p.x, true);
    const std::int32_t g = count_below(root, p.x, p.y, false);
    const std::int32_t bottom = g == 0 ? kBboxBottom : kth(root, g - 1);
    const std::int32_t top = g == size(root) ? kBboxTop : kth(root, g);
    const auto it = cells_by_pair_.find({bottom, top});
    if (it == cells_by_pair_.end()) return -1;
    const auto& list = it->second;
    const auto pos = std::upper_bound(list.begin(), list.end(), std::make_pair(p.x, INT32_MAX));
    if (pos == list.begin()) return -1;
    return (pos - 1)->second;
}

// ---------------------------------------------------------------------------
// Visibility

Visibility::Visibility(const Scene& scene)
    : scene_(scene),
      geometry_(scene_),
      vertical_(geometry_, scene_.bbox, Axis::Vertical),
      horizontal_(geometry_, scene_.bbox, Axis::Horizontal) {}

const VisibilityDecomposition& Visibility::decomposition_for(Direction d) const {
    return d == Direction::Up || d == Direction::Down ? vertical_ : horizontal_;
}

BoundaryContact Visibility::contact(const Point& p) const {
    const std::int32_t v = geometry_.vertex_at(p);
    if (v >= 0) return {BoundaryContact::Kind::Vertex, v, geometry_.obstacle_of(v)};
    const std::int32_t e = vertical_.edge_through(p);
    if (e >= 0) return {BoundaryContact::Kind::Edge, e, geometry_.obstacle_of(e)};
    return {};
}

RayStart Visibility::classify(const BoundaryContact& c, Direction dir) const {
    const Point d = direction_vector(dir);
    if (c.kind == BoundaryContact::Kind::Edge) {
        const Segment e = geometry_.edge(c.id);
        const Int128 cr = cross_vec(sub(e.b, e.a), d);
        return cr > 0 ? RayStart::Interior : (cr == 0 ? RayStart::Along : RayStart::Free);
    }
    const Point& v = geometry_.vertex(c.id);
    const Point to_prev = sub(geometry_.vertex(geometry_.prev(c.id)), v);
    const Point to_next = sub(geometry_.vertex(geometry_.next(c.id)), v);
    if (same_direction(to_prev, d) || same_direction(to_next, d)) return RayStart::Along;
    const Int128 turn = cross_vec(Point{-to_prev.x, -to_prev.y}, to_next);
    bool interior;
    if (turn > 0) {
        interior = cross_vec(to_next, d) > 0 && cross_vec(d, to_prev) > 0;
    } else if (turn < 0) {
        interior = !(cross_vec(to_prev, d) > 0 && cross_vec(d, to_next) > 0);
    } else {
        interior = cross_vec(to_next, d) > 0;
    }
    return interior ? RayStart::Interior : RayStart::Free;
}

RayHit Visibility::walk_along(const BoundaryContact& c, Direction dir) const {
    const Point d = direction_vector(dir);
    std::int32_t cur;
    bool forward;
    if (c.kind == BoundaryContact::Kind::Edge) {
        const Segment e = geometry_.edge(c.id);
        forward = same_direction(sub(e.b, e.a), d);
        cur = forward ? geometry_.next(c.id) : c.id;
    } else {
        const Point& v = geometry_.vertex(c.id);
        forward = same_direction(sub(geometry_.vertex(geometry_.next(c.id)), v), d);
        cur = forward ? geometry_.next(c.id) : geometry_.prev(c.id);
    }
    for (;;) {
        const std::int32_t nxt = forward ? geometry_.next(cur) : geometry_.prev(cur);
        if (!same_direction(sub(geometry_.vertex(nxt), geometry_.vertex(cur)), d)) break;
        cur = nxt;
    }
    RayHit hit;
    hit.point = geometry_.vertex(cur);
    hit.kind = RayHit::Kind::Obstacle;
    hit.contact = {BoundaryContact::Kind::Vertex, cur, geometry_.obstacle_of(cur)};
    return hit;
}

RayHit Visibility::first_boundary_beyond(const Point& p, Direction d) const {
    const VisibilityDecomposition& dec = decomposition_for(d);
    const bool up = d == Direction::Up || d == Direction::Right;
    const Point fp = dec.to_frame(p);
    const auto h = dec.first_hit(fp, up);
    RayHit hit;
    if (h.found) {
        hit.point = dec.from_frame(RPoint(Rational(fp.x), h.y));
        hit.kind = RayHit::Kind::Obstacle;
        hit.contact = h.contact;
    } else {
        const std::int64_t y = up ? dec.frame_bbox().y1 : dec.frame_bbox().y0;
        hit.point = dec.from_frame(RPoint(Point{fp.x, y}));
        hit.kind = RayHit::Kind::Bbox;
    }
    return hit;
}

Location Visibility::locate(const Point& p) const {
    if (!scene_.bbox.contains(p)) throw Error(ErrorCode::OutOfBbox, to_string(p) + " is outside the bbox");
    const BoundaryContact c = contact(p);
    if (c) return {Location::Kind::Boundary, c.obstacle};
    const auto above = vertical_.first_hit(p, true);
    if (above.found && classify(above.contact, Direction::Down) == RayStart::Interior) {
        return {Location::Kind::Interior, above.contact.obstacle};
    }
    return {Location::Kind::Free, vertical_.cell_of(p)};
}

RayHit Visibility::ray_shoot(const Point& p, Direction d) const {
    if (!scene_.bbox.contains(p)) throw Error(ErrorCode::OutOfBbox, to_string(p) + " is outside the bbox");
    const BoundaryContact c = contact(p);
    if (c) {
        switch (classify(c, d)) {
            case RayStart::Interior: {
                RayHit hit;
                hit.point = p;
                hit.kind = RayHit::Kind::Blocked;
                hit.contact = c;
                return hit;
            }
            case RayStart::Along: return walk_along(c, d);
            case RayStart::Free: break;
        }
    } else {
        const auto above = vertical_.first_hit(p, true);
        if (above.found && classify(above.contact, Direction::Down) == RayStart::Interior) {
            throw Error(ErrorCode::PointInsideObstacle, to_string(p) + " is inside obstacle " +
                                                            std::to_string(above.contact.obstacle));
        }
    }
    return first_boundary_beyond(p, d);
}

ProjectionQuad Visibility::projections(const Point& p) const {
    ProjectionQuad quad;
    for (Direction d : kDirections) quad[d] = ray_shoot(p, d);
    return quad;
}

RPoint Visibility::free_extent(const Point& p, Direction d) const {
    Point cur = p;
    for (;;) {
        const RayHit hit = ray_shoot(cur, d);
        if (hit.kind == RayHit::Kind::Blocked) return cur;
        if (hit.kind == RayHit::Kind::Bbox || !hit.point.is_integral()) return hit.point;
        cur = hit.point.to_point();
    }
}

std::vector<InternalProjection> Visibility::internal_projections() const {
    if (!scene_.weighted()) throw Error(ErrorCode::WrongMode, "internal projections need a weighted scene");
    std::vector<InternalProjection> out;
    auto direction_of = [](const Point& v) {
        if (v.x > 0) return Direction::Right;
        if (v.x < 0) return Direction::Left;
        return v.y > 0 ? Direction::Up : Direction::Down;
    };
    for (std::int32_t v = 0; v < static_cast<std::int32_t>(geometry_.vertex_count()); ++v) {
        const Point& p = geometry_.vertex(v);
        const Point& u = geometry_.vertex(geometry_.prev(v));
        const Point& w = geometry_.vertex(geometry_.next(v));
        if (cross(u, p, w) >= 0) continue;  // not reflex
        for (const Point& from : {u, w}) {
            const RayHit hit = first_boundary_beyond(p, direction_of(sub(p, from)));
            if (hit.kind != RayHit::Kind::Obstacle || !hit.point.is_integral()) continue;
            out.push_back({hit.point.to_point(), v, hit.contact});
        }
    }
    return out;
}

}  // namespace l1sp
