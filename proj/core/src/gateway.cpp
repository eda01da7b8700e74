#include "l1sp/gateway.hpp"

#include "l1sp/error.hpp"

#include <algorithm>
#include <limits>
#include <map>

namespace l1sp {

namespace {

constexpr std::int64_t kSentinel = std::numeric_limits<std::int64_t>::max();

}  // namespace

// ---------------------------------------------------------------------------
// FractionalCascade

FractionalCascade::FractionalCascade(const CutLineTree& tree, const std::vector<std::vector<CutlineEntry>>& lines)
    : tree_(&tree), augmented_(tree.nodes.size()) {
    if (tree.root >= 0) build_node(tree.root, lines);
}

void FractionalCascade::build_node(std::int32_t id, const std::vector<std::vector<CutlineEntry>>& lines) {
    const CutNode& node = tree_->node(id);
    const std::int32_t kids[2] = {node.left, node.right};
    for (std::int32_t kid : kids) {
        if (kid >= 0) build_node(kid, lines);
    }
    const auto& own = lines[static_cast<std::size_t>(id)];
    std::vector<std::int64_t> keys;
    keys.reserve(own.size());
    for (const CutlineEntry& e : own) keys.push_back(e.key);
    std::vector<std::int64_t> merged = keys;
    for (std::int32_t kid : kids) {
        if (kid < 0) continue;
        const auto& child = augmented_[static_cast<std::size_t>(kid)];
        for (std::size_t i = 1; i + 1 < child.size(); i += 2) merged.push_back(child[i].key);
    }
    std::sort(merged.begin(), merged.end());
    merged.push_back(kSentinel);

    auto& aug = augmented_[static_cast<std::size_t>(id)];
    aug.resize(merged.size());
    for (std::size_t i = 0; i < merged.size(); ++i) {
        Entry& e = aug[i];
        e.key = merged[i];
        e.own = static_cast<std::int32_t>(std::lower_bound(keys.begin(), keys.end(), e.key) - keys.begin());
        for (int c = 0; c < 2; ++c) {
            e.child[c] = 0;
            if (kids[c] < 0) continue;
            const auto& child = augmented_[static_cast<std::size_t>(kids[c])];
            e.child[c] = static_cast<std::int32_t>(
                std::lower_bound(child.begin(), child.end(), e.key,
                                 [](const Entry& x, std::int64_t k) { return x.key < k; }) -
                child.begin());
        }
    }
}

std::vector<FractionalCascade::PathHit> FractionalCascade::search(std::int64_t path_key, std::int64_t probe) const {
    std::vector<PathHit> out;
    if (tree_ == nullptr || tree_->root < 0) return out;
    std::int32_t id = tree_->root;
    const auto& root = augmented_[static_cast<std::size_t>(id)];
    auto pos = static_cast<std::size_t>(
        std::lower_bound(root.begin(), root.end(), probe, [](const Entry& x, std::int64_t k) { return x.key < k; }) -
        root.begin());
    for (;;) {
        const Entry& e = augmented_[static_cast<std::size_t>(id)][pos];
        out.push_back({id, e.own});
        const CutNode& node = tree_->node(id);
        if (path_key == node.coord) break;
        const int c = path_key < node.coord ? 0 : 1;
        const std::int32_t kid = c == 0 ? node.left : node.right;
        if (kid < 0) break;
        const auto& child = augmented_[static_cast<std::size_t>(kid)];
        auto idx = static_cast<std::size_t>(e.child[c]);
        while (idx > 0 && child[idx - 1].key >= probe) --idx;
        pos = idx;
        id = kid;
    }
    return out;
}

std::size_t FractionalCascade::size() const {
    std::size_t total = 0;
    for (const auto& list : augmented_) total += list.size();
    return total;
}

// ---------------------------------------------------------------------------
// Gateways

namespace {

void add_gateway(std::map<std::int32_t, GatewayEntry>& best, GatewayEntry entry) {
    auto it = best.find(entry.node);
    if (it == best.end()) {
        best.emplace(entry.node, std::move(entry));
    } else if (entry.length < it->second.length) {
        it->second = std::move(entry);
    }
}

std::vector<RPoint> make_polyline(std::initializer_list<RPoint> pts) {
    std::vector<RPoint> out;
    for (const RPoint& p : pts) {
        if (out.empty() || out.back() != p) out.push_back(p);
    }
    return out;
}

Rational polyline_length(const std::vector<RPoint>& pts) {
    Rational total(0);
    for (std::size_t i = 1; i < pts.size(); ++i) total = total + l1_length(pts[i - 1], pts[i]);
    return total;
}

}  // namespace

GatewaySet compute_gateways(const Point& q, const GatewayContext& ctx, GatewayStrategy strategy) {
    const Visibility& vis = *ctx.vis;
    const PathGraph& graph = *ctx.graph;
    const CutLineTree& tree = *ctx.tree;
    const Location loc = vis.locate(q);
    if (loc.kind == Location::Kind::Interior) {
        throw Error(ErrorCode::PointInsideObstacle, to_string(q) + " is inside obstacle " + std::to_string(loc.id));
    }

    GatewaySet set;
    set.source = q;
    std::map<std::int32_t, GatewayEntry> v1, v2;
    const RPoint rq(q);

    for (Direction d : kDirections) {
        const RayHit hit = vis.ray_shoot(q, d);
        if (hit.kind == RayHit::Kind::Bbox) {
            set.bbox_hit = true;
            continue;
        }
        if (hit.kind == RayHit::Kind::Blocked) continue;
        const std::int32_t at = graph.find(hit.point);
        if (at >= 0) {
            auto poly = make_polyline({rq, hit.point});
            add_gateway(v1, {at, polyline_length(poly), std::move(poly), GatewayEntry::Part::V1});
            continue;
        }
        if (hit.contact.kind != BoundaryContact::Kind::Edge) continue;
        const auto& on_edge = graph.edge_nodes[static_cast<std::size_t>(hit.contact.id)];
        // Lists are sorted by id, i.e. by location, i.e. along the edge.
        const auto it = std::lower_bound(on_edge.begin(), on_edge.end(), hit.point, [&](std::int32_t id, const RPoint& p) {
            return graph.nodes[static_cast<std::size_t>(id)].location < p;
        });
        for (auto nb : {it == on_edge.begin() ? on_edge.end() : it - 1, it}) {
            if (nb == on_edge.end()) continue;
            auto poly = make_polyline({rq, hit.point, graph.nodes[static_cast<std::size_t>(*nb)].location});
            add_gateway(v1, {*nb, polyline_length(poly), std::move(poly), GatewayEntry::Part::V1});
        }
    }

    // A query point on an obstacle edge also reaches its neighbours along that edge.
    if (const BoundaryContact own = vis.contact(q); own.kind == BoundaryContact::Kind::Edge && graph.find(rq) < 0) {
        const auto& on_edge = graph.edge_nodes[static_cast<std::size_t>(own.id)];
        const auto it = std::lower_bound(on_edge.begin(), on_edge.end(), rq, [&](std::int32_t id, const RPoint& p) {
            return graph.nodes[static_cast<std::size_t>(id)].location < p;
        });
        for (auto nb : {it == on_edge.begin() ? on_edge.end() : it - 1, it}) {
            if (nb == on_edge.end()) continue;
            auto poly = make_polyline({rq, graph.nodes[static_cast<std::size_t>(*nb)].location});
            add_gateway(v1, {*nb, polyline_length(poly), std::move(poly), GatewayEntry::Part::V1});
        }
    }

    if (!tree.empty()) {
        const AxisReach reach = axis_reach(q, tree, vis);
        const std::vector<std::int32_t> lines = graph.variant == GraphVariant::GOld
                                                    ? projection_cutlines(reach, tree)
                                                    : relevant_projection_cutlines(reach, tree);
        std::vector<std::int32_t> lower(lines.size());
        if (strategy == GatewayStrategy::Cascade && ctx.cascade != nullptr) {
            const auto hits = ctx.cascade->search(q.x, q.y);
            for (std::size_t i = 0; i < lines.size(); ++i) {
                const auto hit = std::find_if(hits.begin(), hits.end(),
                                              [&](const FractionalCascade::PathHit& h) { return h.node == lines[i]; });
                lower[i] = hit->lower_bound;
            }
        } else {
            for (std::size_t i = 0; i < lines.size(); ++i) {
                const auto& list = graph.vertical_lines[static_cast<std::size_t>(lines[i])];
                lower[i] = static_cast<std::int32_t>(
                    std::lower_bound(list.begin(), list.end(), q.y,
                                     [](const CutlineEntry& e, std::int64_t y) { return e.key < y; }) -
                    list.begin());
            }
        }
        for (std::size_t i = 0; i < lines.size(); ++i) {
            const auto& list = graph.vertical_lines[static_cast<std::size_t>(lines[i])];
            const RPoint foot(Point{tree.node(lines[i]).coord, q.y});
            const auto lb = static_cast<std::size_t>(lower[i]);
            auto add = [&](const CutlineEntry& e) {
                auto poly = make_polyline({rq, foot, graph.nodes[static_cast<std::size_t>(e.node)].location});
                add_gateway(v2, {e.node, polyline_length(poly), std::move(poly), GatewayEntry::Part::V2});
            };
            if (lb < list.size() && list[lb].key == q.y) {
                add(list[lb]);
                continue;
            }
            if (lb < list.size() && list[lb].reach_low <= Rational(q.y)) add(list[lb]);
            if (lb > 0 && list[lb - 1].reach_high >= Rational(q.y)) add(list[lb - 1]);
        }
    }

    set.v1_count = v1.size();
    set.v2_count = v2.size();
    std::map<std::int32_t, GatewayEntry> all = std::move(v1);
    for (auto& [id, entry] : v2) add_gateway(all, std::move(entry));
    if (const std::int32_t self = graph.find(rq); self >= 0) {
        add_gateway(all, {self, Rational(0), {rq}, GatewayEntry::Part::Self});
    }
    for (auto& [id, entry] : all) set.entries.push_back(std::move(entry));
    return set;
}

// ---------------------------------------------------------------------------
// Trivial paths

std::optional<TrivialPath> detect_trivial_path(const Point& s, const Point& t, const Visibility& vis) {
    if (s == t) {
        vis.ray_shoot(s, Direction::Up);  // validates s
        return TrivialPath{Rational(0), {RPoint(s)}};
    }
    const ProjectionQuad ps = vis.projections(s);
    const ProjectionQuad pt = vis.projections(t);
    const auto& g = vis.geometry();

    auto edges_of = [&](const RayHit& hit) {
        std::vector<std::int32_t> out;
        if (hit.kind == RayHit::Kind::Bbox) return out;
        if (hit.contact.kind == BoundaryContact::Kind::Edge) out.push_back(hit.contact.id);
        if (hit.contact.kind == BoundaryContact::Kind::Vertex) {
            out.push_back(hit.contact.id);
            out.push_back(g.prev(hit.contact.id));
        }
        return out;
    };
    // Projection segments end at rational points; intersect them exactly.
    auto axis_intersection = [](const RPoint& a0, const RPoint& a1, const RPoint& b0,
                                const RPoint& b1) -> std::optional<std::pair<RPoint, bool>> {
        auto lo = [](const Rational& x, const Rational& y) { return std::min(x, y); };
        auto hi = [](const Rational& x, const Rational& y) { return std::max(x, y); };
        const bool a_h = a0.y == a1.y, b_h = b0.y == b1.y;
        const bool a_v = a0.x == a1.x, b_v = b0.x == b1.x;
        // Candidate crossing of a horizontal-ish and vertical-ish segment.
        for (int flip = 0; flip < 2; ++flip) {
            const RPoint& h0 = flip ? b0 : a0;
            const RPoint& h1 = flip ? b1 : a1;
            const RPoint& v0 = flip ? a0 : b0;
            const RPoint& v1 = flip ? a1 : b1;
            const bool horizontal = flip ? b_h : a_h;
            const bool vertical = flip ? a_v : b_v;
            if (!horizontal || !vertical) continue;
            const RPoint x(v0.x, h0.y);
            if (lo(h0.x, h1.x) <= x.x && x.x <= hi(h0.x, h1.x) && lo(v0.y, v1.y) <= x.y && x.y <= hi(v0.y, v1.y)) {
                return std::make_pair(x, false);
            }
        }
        // Collinear overlap on a common line.
        if (a_h && b_h && a0.y == b0.y && lo(a0.x, a1.x) <= hi(b0.x, b1.x) && lo(b0.x, b1.x) <= hi(a0.x, a1.x)) {
            return std::make_pair(a0, true);
        }
        if (a_v && b_v && a0.x == b0.x && lo(a0.y, a1.y) <= hi(b0.y, b1.y) && lo(b0.y, b1.y) <= hi(a0.y, a1.y)) {
            return std::make_pair(a0, true);
        }
        return std::nullopt;
    };

    std::optional<TrivialPath> best;
    auto offer = [&](std::vector<RPoint> poly) {
        const Rational len = polyline_length(poly);
        if (!best || len < best->length) best = TrivialPath{len, std::move(poly)};
    };
    const RPoint rs(s), rt(t);
    for (Direction a : kDirections) {
        for (Direction b : kDirections) {
            const RayHit& hs = ps[a];
            const RayHit& ht = pt[b];
            if (auto x = axis_intersection(rs, hs.point, rt, ht.point)) {
                if (x->second) {
                    offer(make_polyline({rs, rt}));
                } else {
                    offer(make_polyline({rs, x->first, rt}));
                }
            }
            const auto es = edges_of(hs);
            const auto et = edges_of(ht);
            const bool shared = std::any_of(es.begin(), es.end(), [&](std::int32_t e) {
                return std::find(et.begin(), et.end(), e) != et.end();
            });
            if (shared) offer(make_polyline({rs, hs.point, ht.point, rt}));
        }
    }
    return best;
}

}  // namespace l1sp
