#include "l1sp/weighted.hpp"

#include "l1sp/error.hpp"

#include "gateway_search.hpp"
#include "graph_builder.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>

namespace l1sp {

std::string_view weighted_source_name(WeightedPoint::Source source) {
    switch (source) {
        case WeightedPoint::Source::Vertex: return "vertex";
        case WeightedPoint::Source::InternalProjection: return "internal_projection";
        case WeightedPoint::Source::Projection: return "projection";
    }
    return "?";
}

namespace {

constexpr std::int64_t kNone = std::numeric_limits<std::int64_t>::min();

void require_weighted(const Scene& scene) {
    if (!scene.weighted()) throw Error(ErrorCode::WrongMode, "operation needs a rectilinear weighted scene");
}

Rational interior_rate(const Rational& w) { return w.is_infinite() ? Rational::infinite() : Rational(1) + w; }

}  // namespace

// ---------------------------------------------------------------------------
// Node set

WeightedNodeSet collect_v_set(const Scene& scene, const Visibility& vis) {
    require_weighted(scene);
    const SceneGeometry& g = vis.geometry();
    std::map<Point, WeightedPoint> found;
    auto add = [&](const Point& p, WeightedPoint::Source source, std::int32_t vertex) {
        auto [it, inserted] = found.try_emplace(p, WeightedPoint{p, source, vertex});
        if (!inserted && source < it->second.source) it->second = {p, source, vertex};
    };
    const auto n = static_cast<std::int32_t>(g.vertex_count());
    for (std::int32_t v = 0; v < n; ++v) add(g.vertex(v), WeightedPoint::Source::Vertex, v);
    for (const InternalProjection& ip : vis.internal_projections()) {
        add(ip.point, WeightedPoint::Source::InternalProjection, ip.vertex);
    }
    for (std::int32_t v = 0; v < n; ++v) {
        for (Direction d : kDirections) {
            const RayHit hit = vis.ray_shoot(g.vertex(v), d);
            if (hit.kind == RayHit::Kind::Blocked || !hit.point.is_integral()) continue;
            add(hit.point.to_point(), WeightedPoint::Source::Projection, v);
        }
    }
    WeightedNodeSet out;
    out.points.reserve(found.size());
    for (auto& [p, wp] : found) out.points.push_back(wp);
    return out;
}

WeightedNodeSet collect_v_set(const Scene& scene) {
    require_weighted(scene);
    const Visibility vis(scene);
    return collect_v_set(scene, vis);
}

// ---------------------------------------------------------------------------
// LineProfile

LineProfile::LineProfile(const Scene& scene, Axis axis, std::int64_t coord) : axis_(axis), coord_(coord) {
    const bool vertical = axis == Axis::Vertical;
    auto along = [&](const Point& p) { return vertical ? p.y : p.x; };
    auto across = [&](const Point& p) { return vertical ? p.x : p.y; };
    const std::int64_t lo = vertical ? scene.bbox.y0 : scene.bbox.x0;
    const std::int64_t hi = vertical ? scene.bbox.y1 : scene.bbox.x1;

    struct Touching {
        std::int32_t obstacle;
        std::int64_t lo;
        std::int64_t hi;
    };
    std::vector<Touching> touching;
    breakpoints_ = {lo, hi};
    for (std::size_t i = 0; i < scene.obstacles.size(); ++i) {
        const Polygon& poly = scene.obstacles[i];
        std::int64_t amin = across(poly[0]), amax = amin, bmin = along(poly[0]), bmax = bmin;
        for (const Point& p : poly.vertices) {
            amin = std::min(amin, across(p));
            amax = std::max(amax, across(p));
            bmin = std::min(bmin, along(p));
            bmax = std::max(bmax, along(p));
        }
        if (coord < amin || coord > amax) continue;
        touching.push_back({static_cast<std::int32_t>(i), bmin, bmax});
        for (std::size_t k = 0; k < poly.size(); ++k) {
            const Point& a = poly[k];
            const Point& b = poly.vertex(static_cast<std::ptrdiff_t>(k) + 1);
            if (across(a) == across(b)) {
                if (across(a) == coord) {
                    breakpoints_.push_back(along(a));
                    breakpoints_.push_back(along(b));
                }
            } else if (along(a) == along(b)) {
                if (std::min(across(a), across(b)) <= coord && coord <= std::max(across(a), across(b))) {
                    breakpoints_.push_back(along(a));
                }
            } else {
                throw Error(ErrorCode::NonRectilinearEdge,
                            "edge " + to_string(a) + "-" + to_string(b) + " of obstacle " + std::to_string(i));
            }
        }
    }
    std::sort(breakpoints_.begin(), breakpoints_.end());
    breakpoints_.erase(std::unique(breakpoints_.begin(), breakpoints_.end()), breakpoints_.end());
    breakpoints_.erase(std::remove_if(breakpoints_.begin(), breakpoints_.end(),
                                      [&](std::int64_t b) { return b < lo || b > hi; }),
                       breakpoints_.end());

    gaps_.resize(breakpoints_.size() - 1);
    for (std::size_t g = 0; g + 1 < breakpoints_.size(); ++g) {
        Gap& gap = gaps_[g];
        gap.lo = breakpoints_[g];
        gap.hi = breakpoints_[g + 1];
        gap.rate = Rational(1);
        const Rational mid = Rational::from_fraction(gap.lo + gap.hi, 2);
        const RPoint m = vertical ? RPoint(Rational(coord), mid) : RPoint(mid, Rational(coord));
        for (const Touching& t : touching) {
            if (gap.hi <= t.lo || gap.lo >= t.hi) continue;
            const PointLocation loc = point_in_polygon(m, scene.obstacles[static_cast<std::size_t>(t.obstacle)]);
            if (loc == PointLocation::Exterior) continue;
            gap.obstacle = t.obstacle;
            if (loc == PointLocation::Interior) {
                gap.kind = GapKind::Interior;
                gap.rate = interior_rate(scene.weight(static_cast<std::size_t>(t.obstacle)));
            } else {
                gap.kind = GapKind::Boundary;
            }
            break;
        }
    }

    prefix_.assign(gaps_.size() + 1, Rational(0));
    inf_prefix_.assign(gaps_.size() + 1, 0);
    for (std::size_t g = 0; g < gaps_.size(); ++g) {
        const bool inf = gaps_[g].rate.is_infinite();
        prefix_[g + 1] = prefix_[g] + (inf ? Rational(0) : gaps_[g].rate * Rational(gaps_[g].hi - gaps_[g].lo));
        inf_prefix_[g + 1] = inf_prefix_[g] + (inf ? 1 : 0);
    }

    // Maximal runs of gaps inside the closed free space / one closed obstacle.
    const std::size_t k = gaps_.size();
    free_lo_.assign(k, kNone);
    free_hi_.assign(k, kNone);
    obst_lo_.assign(k, kNone);
    obst_hi_.assign(k, kNone);
    auto is_free = [&](std::size_t g) { return gaps_[g].kind != GapKind::Interior; };
    auto owner = [&](std::size_t g) { return gaps_[g].kind == GapKind::Free ? -1 : gaps_[g].obstacle; };
    for (std::size_t g = 0; g < k;) {
        if (!is_free(g)) {
            ++g;
            continue;
        }
        std::size_t e = g;
        while (e + 1 < k && is_free(e + 1)) ++e;
        for (std::size_t i = g; i <= e; ++i) {
            free_lo_[i] = gaps_[g].lo;
            free_hi_[i] = gaps_[e].hi;
        }
        g = e + 1;
    }
    for (std::size_t g = 0; g < k;) {
        const std::int32_t o = owner(g);
        if (o < 0) {
            ++g;
            continue;
        }
        std::size_t e = g;
        while (e + 1 < k && owner(e + 1) == o) ++e;
        for (std::size_t i = g; i <= e; ++i) {
            obst_lo_[i] = gaps_[g].lo;
            obst_hi_[i] = gaps_[e].hi;
        }
        g = e + 1;
    }
}

std::size_t LineProfile::gap_above(std::int64_t pos) const {
    const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), pos);
    return static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
}

std::size_t LineProfile::gap_below(std::int64_t pos) const {
    const auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), pos);
    return static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
}

std::pair<Rational, int> LineProfile::split_cost(std::int64_t a, std::int64_t b) const {
    if (a > b) std::swap(a, b);
    if (a == b) return {Rational(0), 0};
    if (a < low() || b > high()) throw Error(ErrorCode::OutOfBbox, "segment leaves the bbox");
    const std::size_t ga = gap_above(a);
    const std::size_t gb = gap_below(b);
    auto finite_rate = [&](std::size_t g) { return gaps_[g].rate.is_infinite() ? Rational(0) : gaps_[g].rate; };
    const int inf = inf_prefix_[gb + 1] - inf_prefix_[ga];
    const Rational fin = prefix_[gb + 1] - prefix_[ga] - finite_rate(ga) * Rational(a - gaps_[ga].lo) -
                         finite_rate(gb) * Rational(gaps_[gb].hi - b);
    return {fin, inf};
}

Rational LineProfile::cost(std::int64_t a, std::int64_t b) const {
    const auto [fin, inf] = split_cost(a, b);
    return inf > 0 ? Rational::infinite() : fin;
}

std::pair<std::int64_t, std::int64_t> LineProfile::reach(std::int64_t pos) const {
    std::int64_t lo = pos, hi = pos;
    if (pos > low()) {
        const std::size_t g = gap_below(pos);
        for (std::int64_t c : {free_lo_[g], obst_lo_[g]}) {
            if (c != kNone) lo = std::min(lo, c);
        }
    }
    if (pos < high()) {
        const std::size_t g = gap_above(pos);
        for (std::int64_t c : {free_hi_[g], obst_hi_[g]}) {
            if (c != kNone) hi = std::max(hi, c);
        }
    }
    return {lo, hi};
}

bool LineProfile::visible(std::int64_t a, std::int64_t b) const {
    if (a > b) std::swap(a, b);
    if (a == b) return true;
    const std::size_t g = gap_above(a);
    return (free_hi_[g] != kNone && free_hi_[g] >= b) || (obst_hi_[g] != kNone && obst_hi_[g] >= b);
}

Rational segment_weighted_length(const Segment& seg, const Scene& scene) {
    require_weighted(scene);
    if (seg.a.y == seg.b.y) return LineProfile(scene, Axis::Horizontal, seg.a.y).cost(seg.a.x, seg.b.x);
    if (seg.a.x == seg.b.x) return LineProfile(scene, Axis::Vertical, seg.a.x).cost(seg.a.y, seg.b.y);
    throw Error(ErrorCode::NonRectilinearEdge, "segment " + to_string(seg.a) + "-" + to_string(seg.b));
}

Rational segment_weighted_length(const RPoint& a, const RPoint& b, const Scene& scene) {
    if (!a.is_integral() || !b.is_integral()) {
        throw Error(ErrorCode::NonRectilinearEdge, "weighted segments need integral endpoints");
    }
    return segment_weighted_length(Segment{a.to_point(), b.to_point()}, scene);
}

// ---------------------------------------------------------------------------
// ProfileCache

void ProfileCache::build(Axis axis, std::int64_t coord) {
    const auto key = std::make_pair(static_cast<int>(axis), coord);
    if (profiles_.find(key) == profiles_.end()) profiles_.emplace(key, LineProfile(*scene_, axis, coord));
}

const LineProfile* ProfileCache::find(Axis axis, std::int64_t coord) const {
    const auto it = profiles_.find(std::make_pair(static_cast<int>(axis), coord));
    return it == profiles_.end() ? nullptr : &it->second;
}

const LineProfile& ProfileCache::get(Axis axis, std::int64_t coord, LineProfile& scratch) const {
    if (const LineProfile* p = find(axis, coord)) return *p;
    scratch = LineProfile(*scene_, axis, coord);
    return scratch;
}

// ---------------------------------------------------------------------------
// CutLineWeightIndex

CutLineWeightIndex::CutLineWeightIndex(const CutLineTree& tree, const std::vector<std::vector<CutlineEntry>>& steiner,
                                       const ProfileCache& profiles)
    : lists_(tree.nodes.size()), steiner_pos_(tree.nodes.size()) {
    std::vector<std::vector<CutlineEntry>> keys(tree.nodes.size());
    for (std::size_t u = 0; u < tree.nodes.size(); ++u) {
        LineProfile scratch;
        const LineProfile& prof = profiles.get(tree.axis, tree.nodes[u].coord, scratch);
        std::vector<std::int64_t> inf_lo;
        for (const auto& gap : prof.gaps()) {
            if (gap.rate.is_infinite()) inf_lo.push_back(gap.lo);
        }
        std::map<std::int64_t, bool> merged;
        for (std::int64_t b : prof.breakpoints()) merged.emplace(b, false);
        for (const CutlineEntry& e : steiner[u]) merged[e.key] = true;
        auto& list = lists_[u];
        list.reserve(merged.size());
        for (const auto& [key, is_steiner] : merged) {
            Entry e;
            e.key = key;
            e.steiner = is_steiner;
            e.d_top = prof.split_cost(key, prof.high()).first;
            e.inf_above = static_cast<int>(inf_lo.end() - std::lower_bound(inf_lo.begin(), inf_lo.end(), key));
            if (key < prof.high()) {
                const auto& gap = prof.gaps()[prof.gap_above(key)];
                e.inside_inf = gap.rate.is_infinite() && gap.lo < key;
            }
            e.w_below = Rational(0);
            if (key > prof.low()) {
                const auto& gap = prof.gaps()[prof.gap_below(key)];
                if (gap.kind == LineProfile::GapKind::Interior) e.w_below = gap.rate - Rational(1);
                if (gap.rate.is_infinite()) e.w_below = Rational::infinite();
            }
            list.push_back(e);
            keys[u].push_back({-1, key, Rational(0), Rational(0)});
        }
        for (const CutlineEntry& s : steiner[u]) {
            const auto it = std::lower_bound(list.begin(), list.end(), s.key,
                                             [](const Entry& e, std::int64_t k) { return e.key < k; });
            steiner_pos_[u].push_back(static_cast<std::int32_t>(it - list.begin()));
        }
    }
    cascade_ = FractionalCascade(tree, keys);
}

Rational CutLineWeightIndex::distance(std::int32_t node, std::int64_t pos, std::int32_t lower_bound,
                                      std::size_t steiner_index) const {
    const auto& list = lists_[static_cast<std::size_t>(node)];
    const Entry& p = list[static_cast<std::size_t>(lower_bound)];
    // Position codes: 2 * (infinite gaps above) + (inside an infinite gap).
    Rational fin = p.d_top;
    int code = 2 * p.inf_above + (p.inside_inf ? 1 : 0);
    if (p.key != pos) {
        if (p.w_below.is_infinite()) {
            code = 2 * p.inf_above + 1;
        } else {
            fin = fin + (Rational(1) + p.w_below) * Rational(p.key - pos);
        }
    }
    const Entry& e =
        list[static_cast<std::size_t>(steiner_pos_[static_cast<std::size_t>(node)][steiner_index])];
    const int target = 2 * e.inf_above + (e.inside_inf ? 1 : 0);
    if (code != target || (code % 2 == 1 && e.key != pos)) return Rational::infinite();
    return fin < e.d_top ? e.d_top - fin : fin - e.d_top;
}

// ---------------------------------------------------------------------------
// Graph

namespace {

void super_level_subtree(const CutLineTree& tree, std::int32_t id, int max_level, std::vector<std::int32_t>& out) {
    if (id < 0 || tree.node(id).level > max_level) return;
    super_level_subtree(tree, tree.node(id).left, max_level, out);
    out.push_back(id);
    super_level_subtree(tree, tree.node(id).right, max_level, out);
}

Axis other(Axis a) { return a == Axis::Vertical ? Axis::Horizontal : Axis::Vertical; }

// Cost of an axis-parallel segment between integral points.
Rational line_cost(const ProfileCache& profiles, const Point& a, const Point& b) {
    LineProfile scratch;
    if (a.y == b.y) return profiles.get(Axis::Horizontal, a.y, scratch).cost(a.x, b.x);
    return profiles.get(Axis::Vertical, a.x, scratch).cost(a.y, b.y);
}

}  // namespace

PathGraph build_weighted_graph(const Scene& scene, const Visibility& vis, const WeightedNodeSet& vset,
                               const CutLineTree& vertical, const CutLineTree& horizontal,
                               const ProfileCache& profiles) {
    require_weighted(scene);
    const SceneGeometry& g = vis.geometry();
    const auto n = static_cast<std::int32_t>(g.vertex_count());
    detail::GraphBuilder b(GraphVariant::Weighted, vertical.nodes.size(), horizontal.nodes.size(),
                           static_cast<std::size_t>(n));

    std::set<std::int32_t> registered;
    auto add = [&](const Point& p, NodeKind kind, std::int32_t vertex) {
        const std::int32_t id = b.add_node(p, kind, vertex);
        if (registered.insert(id).second) {
            const BoundaryContact c = vis.contact(p);
            if (c.kind == BoundaryContact::Kind::Edge) b.add_to_edge(c.id, id);
            if (c.kind == BoundaryContact::Kind::Vertex) {
                b.add_to_edge(c.id, id);
                b.add_to_edge(g.prev(c.id), id);
            }
        }
        return id;
    };

    std::map<Point, std::int32_t> v_node;
    for (const WeightedPoint& wp : vset.points) {
        const NodeKind kind = wp.source == WeightedPoint::Source::Vertex ? NodeKind::Vertex : NodeKind::Type1;
        v_node[wp.point] = add(wp.point, kind, wp.vertex);
    }
    for (std::int32_t v = 0; v < n; ++v) {
        const Point& p = g.vertex(v);
        for (Direction d : kDirections) {
            const RayHit hit = vis.ray_shoot(p, d);
            if (hit.kind == RayHit::Kind::Blocked || !hit.point.is_integral()) continue;
            b.add_edge(v_node.at(p), v_node.at(hit.point.to_point()), l1_length(RPoint(p), hit.point));
        }
    }
    for (const InternalProjection& ip : vis.internal_projections()) {
        const Point& p = g.vertex(ip.vertex);
        b.add_edge(v_node.at(p), v_node.at(ip.point), line_cost(profiles, p, ip.point));
    }

    // Steiner points of both trees. For a vertical tree the projection runs
    // along the horizontal line through the point, and vice versa.
    for (const CutLineTree* tree : {&vertical, &horizontal}) {
        const bool vert = tree->axis == Axis::Vertical;
        auto project = [&](std::int32_t m, std::int32_t line, NodeKind kind) -> std::int32_t {
            const Point& p = tree->points[static_cast<std::size_t>(m)];
            const std::int64_t c = tree->node(line).coord;
            const std::int64_t pos = vert ? p.x : p.y;
            LineProfile scratch;
            const LineProfile& prof = profiles.get(other(tree->axis), vert ? p.y : p.x, scratch);
            if (!prof.visible(pos, c)) return -1;
            const Point foot = vert ? Point{c, p.y} : Point{p.x, c};
            const std::int32_t id = c == pos ? v_node.at(p) : add(foot, kind, m);
            b.line(tree->axis, line).push_back({id, vert ? p.y : p.x, Rational(0), Rational(0)});
            return id;
        };
        for (std::int32_t u = 0; u < static_cast<std::int32_t>(tree->nodes.size()); ++u) {
            for (std::int32_t m : tree->node(u).members) {
                const Point& p = tree->points[static_cast<std::size_t>(m)];
                const std::int32_t id = project(m, u, NodeKind::Type2);
                if (id >= 0) b.add_edge(v_node.at(p), id, line_cost(profiles, p, b.location(id).to_point()));
            }
        }
        for (std::int32_t u = 0; u < static_cast<std::int32_t>(tree->nodes.size()); ++u) {
            const CutNode& top = tree->node(u);
            if (tree->super_level_top(top.level) != top.level) continue;
            std::vector<std::int32_t> lines;
            super_level_subtree(*tree, u, top.level + tree->super_level_size - 1, lines);
            for (std::int32_t m : top.members) {
                const Point& p = tree->points[static_cast<std::size_t>(m)];
                std::vector<std::pair<std::int64_t, std::int32_t>> chain{{vert ? p.x : p.y, v_node.at(p)}};
                for (std::int32_t line : lines) {
                    const std::int32_t id = project(m, line, NodeKind::Type3);
                    if (id >= 0) chain.emplace_back(tree->node(line).coord, id);
                }
                std::sort(chain.begin(), chain.end());
                for (std::size_t i = 1; i < chain.size(); ++i) {
                    b.add_edge(chain[i - 1].second, chain[i].second,
                               line_cost(profiles, b.location(chain[i - 1].second).to_point(),
                                         b.location(chain[i].second).to_point()));
                }
            }
        }
    }

    b.sort_lines();
    for (const CutLineTree* tree : {&vertical, &horizontal}) {
        for (std::size_t line = 0; line < b.line_count(tree->axis); ++line) {
            const auto& list = b.line(tree->axis, static_cast<std::int32_t>(line));
            for (std::size_t i = 1; i < list.size(); ++i) {
                b.add_edge(list[i - 1].node, list[i].node,
                           line_cost(profiles, b.location(list[i - 1].node).to_point(),
                                     b.location(list[i].node).to_point()));
            }
        }
    }

    for (std::int32_t e = 0; e < n; ++e) {
        std::vector<std::int32_t> on_edge = b.edge_list(e);
        std::sort(on_edge.begin(), on_edge.end(),
                  [&](std::int32_t x, std::int32_t y) { return b.location(x) < b.location(y); });
        on_edge.erase(std::unique(on_edge.begin(), on_edge.end()), on_edge.end());
        for (std::size_t i = 1; i < on_edge.size(); ++i) {
            b.add_edge(on_edge[i - 1], on_edge[i], l1_length(b.location(on_edge[i - 1]), b.location(on_edge[i])));
        }
    }

    const Box& box = scene.bbox;
    std::array<std::vector<std::int32_t>, 4> sides;
    for (std::int32_t id = 0; id < static_cast<std::int32_t>(b.node_count()); ++id) {
        const RPoint& p = b.location(id);
        if (p.y == Rational(box.y0)) sides[0].push_back(id);
        if (p.x == Rational(box.x1)) sides[1].push_back(id);
        if (p.y == Rational(box.y1)) sides[2].push_back(id);
        if (p.x == Rational(box.x0)) sides[3].push_back(id);
    }
    for (auto& side : sides) {
        std::sort(side.begin(), side.end(), [&](std::int32_t x, std::int32_t y) { return b.location(x) < b.location(y); });
        for (std::size_t i = 1; i < side.size(); ++i) {
            b.add_edge(side[i - 1], side[i], line_cost(profiles, b.location(side[i - 1]).to_point(),
                                                       b.location(side[i]).to_point()));
        }
    }
    return b.finish();
}

// ---------------------------------------------------------------------------
// Index

WeightedIndex::WeightedIndex(const Scene& scene, const IndexOptions& options) : options_(options) {
    require_weighted(scene);
    validate_scene(scene);
    vis_ = std::make_unique<Visibility>(scene);
    vset_ = collect_v_set(scene, *vis_);
    std::vector<Point> points;
    for (const WeightedPoint& wp : vset_.points) points.push_back(wp.point);
    if (!points.empty()) {
        vtree_ = build_cutline_tree(points, Axis::Vertical);
        htree_ = build_cutline_tree(points, Axis::Horizontal);
    } else {
        htree_.axis = Axis::Horizontal;
    }
    profiles_ = ProfileCache(&vis_->scene());
    for (const Point& p : points) {
        profiles_.build(Axis::Vertical, p.x);
        profiles_.build(Axis::Horizontal, p.y);
    }
    graph_ = build_weighted_graph(vis_->scene(), *vis_, vset_, vtree_, htree_, profiles_);
    vweights_ = CutLineWeightIndex(vtree_, graph_.vertical_lines, profiles_);
    hweights_ = CutLineWeightIndex(htree_, graph_.horizontal_lines, profiles_);
    vcascade_ = FractionalCascade(vtree_, graph_.vertical_lines);
    hcascade_ = FractionalCascade(htree_, graph_.horizontal_lines);

    const Box& box = vis_->scene().bbox;
    for (std::int32_t id = 0; id < static_cast<std::int32_t>(graph_.node_count()); ++id) {
        const RPoint& p = graph_.nodes[static_cast<std::size_t>(id)].location;
        if (p.y == Rational(box.y0)) bbox_sides_[0].push_back(id);
        if (p.x == Rational(box.x1)) bbox_sides_[1].push_back(id);
        if (p.y == Rational(box.y1)) bbox_sides_[2].push_back(id);
        if (p.x == Rational(box.x0)) bbox_sides_[3].push_back(id);
    }
    for (const Point& p : points) v_nodes_.push_back(graph_.find(RPoint(p)));
    std::sort(v_nodes_.begin(), v_nodes_.end());
    if (options.policy == ApspPolicy::Full) detail::fill_full_table(graph_, options.memory_budget, table_, preds_);
}

std::unique_ptr<WeightedIndex> preprocess_weighted(const Scene& scene, const IndexOptions& options) {
    return std::make_unique<WeightedIndex>(scene, options);
}

// ---------------------------------------------------------------------------
// Gateways and queries

namespace {

void add_gateway(std::map<std::int32_t, GatewayEntry>& best, GatewayEntry entry) {
    if (entry.length.is_infinite()) return;
    auto it = best.find(entry.node);
    if (it == best.end()) {
        best.emplace(entry.node, std::move(entry));
    } else if (entry.length < it->second.length) {
        it->second = std::move(entry);
    }
}

std::vector<RPoint> make_polyline(std::initializer_list<RPoint> pts) {
    std::vector<RPoint> out;
    detail::append_points(out, std::vector<RPoint>(pts));
    return out;
}

void check_query_point(const Visibility& vis, const Point& p) {
    const Location loc = vis.locate(p);
    if (loc.kind == Location::Kind::Interior) {
        throw Error(ErrorCode::PointInsideObstacle, to_string(p) + " is inside obstacle " + std::to_string(loc.id));
    }
}

// Cut-line gateways of q merged into `out`, each edge prefixed by `prefix`
// (the connector from the query point to q) at cost `base`.
void cutline_gateways(const Point& q, const WeightedIndex& index, GatewayStrategy strategy,
                      const std::vector<RPoint>& prefix, const Rational& base,
                      std::map<std::int32_t, GatewayEntry>& out) {
    const PathGraph& graph = index.graph();
    for (Axis axis : {Axis::Vertical, Axis::Horizontal}) {
        const CutLineTree& tree = index.tree(axis);
        if (tree.empty()) continue;
        const bool vert = axis == Axis::Vertical;
        const std::int64_t pos = vert ? q.x : q.y;
        const std::int64_t probe = vert ? q.y : q.x;
        LineProfile scratch;
        const LineProfile& prof = index.profiles().get(other(axis), probe, scratch);
        const auto [lo, hi] = prof.reach(pos);
        const AxisReach reach{q, Rational(lo), Rational(hi)};
        const std::vector<std::int32_t> lines = relevant_projection_cutlines(reach, tree);
        if (lines.empty()) continue;

        const auto& steiner = vert ? graph.vertical_lines : graph.horizontal_lines;
        const CutLineWeightIndex& weights = index.weights(axis);
        std::vector<std::int32_t> lb(lines.size()), wlb(lines.size());
        if (strategy == GatewayStrategy::Cascade) {
            const auto hits = index.steiner_cascade(axis).search(pos, probe);
            const auto whits = weights.cascade().search(pos, probe);
            for (std::size_t i = 0; i < lines.size(); ++i) {
                for (const auto& h : hits) {
                    if (h.node == lines[i]) lb[i] = h.lower_bound;
                }
                for (const auto& h : whits) {
                    if (h.node == lines[i]) wlb[i] = h.lower_bound;
                }
            }
        } else {
            for (std::size_t i = 0; i < lines.size(); ++i) {
                const auto& list = steiner[static_cast<std::size_t>(lines[i])];
                lb[i] = static_cast<std::int32_t>(
                    std::lower_bound(list.begin(), list.end(), probe,
                                     [](const CutlineEntry& e, std::int64_t k) { return e.key < k; }) -
                    list.begin());
                const auto& wlist = weights.list(lines[i]);
                wlb[i] = static_cast<std::int32_t>(
                    std::lower_bound(wlist.begin(), wlist.end(), probe,
                                     [](const CutLineWeightIndex::Entry& e, std::int64_t k) { return e.key < k; }) -
                    wlist.begin());
            }
        }
        for (std::size_t i = 0; i < lines.size(); ++i) {
            const std::int32_t u = lines[i];
            const std::int64_t c = tree.node(u).coord;
            const Point foot = vert ? Point{c, q.y} : Point{q.x, c};
            const Rational across = prof.cost(pos, c);
            if (across.is_infinite()) continue;
            const auto& list = steiner[static_cast<std::size_t>(u)];
            const auto at = static_cast<std::size_t>(lb[i]);
            auto add = [&](std::size_t idx) {
                const CutlineEntry& e = list[idx];
                const Rational along = weights.distance(u, probe, wlb[i], idx);
                if (along.is_infinite()) return;
                std::vector<RPoint> poly = prefix;
                detail::append_points(poly, {RPoint(q), RPoint(foot), graph.nodes[static_cast<std::size_t>(e.node)].location});
                add_gateway(out, {e.node, base + across + along, std::move(poly), GatewayEntry::Part::V2});
            };
            if (at < list.size() && list[at].key == probe) {
                add(at);
                continue;
            }
            if (at < list.size()) add(at);
            if (at > 0) add(at - 1);
        }
    }
}

// Gateways of the fan Y(p): p and its four boundary projections, each with
// its own node, boundary neighbours and cut-line gateways.
std::vector<GatewayEntry> fan_gateways(const Point& s, const WeightedIndex& index, GatewayStrategy strategy) {
    const Visibility& vis = index.visibility();
    const PathGraph& graph = index.graph();
    const Box& box = index.scene().bbox;
    std::map<std::int32_t, GatewayEntry> best;

    std::vector<Point> fan{s};
    for (Direction d : kDirections) {
        const RayHit hit = vis.ray_shoot(s, d);
        if (hit.kind == RayHit::Kind::Blocked || !hit.point.is_integral()) continue;
        fan.push_back(hit.point.to_point());
    }
    std::sort(fan.begin() + 1, fan.end());
    fan.erase(std::unique(fan.begin() + 1, fan.end()), fan.end());

    for (const Point& p : fan) {
        const RPoint rp(p);
        const std::vector<RPoint> prefix = make_polyline({RPoint(s), rp});
        const Rational base = l1_length(RPoint(s), rp);
        if (const std::int32_t self = graph.find(rp); self >= 0) {
            add_gateway(best, {self, base, prefix, p == s ? GatewayEntry::Part::Self : GatewayEntry::Part::V1});
        }
        auto neighbours = [&](const std::vector<std::int32_t>& sorted) {
            const auto it = std::lower_bound(sorted.begin(), sorted.end(), rp, [&](std::int32_t id, const RPoint& x) {
                return graph.nodes[static_cast<std::size_t>(id)].location < x;
            });
            for (auto nb : {it == sorted.begin() ? sorted.end() : it - 1, it}) {
                if (nb == sorted.end()) continue;
                const RPoint& loc = graph.nodes[static_cast<std::size_t>(*nb)].location;
                std::vector<RPoint> poly = prefix;
                detail::append_points(poly, {loc});
                add_gateway(best, {*nb, base + l1_length(rp, loc), std::move(poly), GatewayEntry::Part::V1});
            }
        };
        const BoundaryContact c = vis.contact(p);
        if (c.kind == BoundaryContact::Kind::Edge) neighbours(graph.edge_nodes[static_cast<std::size_t>(c.id)]);
        const auto& sides = index.bbox_sides();
        if (p.y == box.y0) neighbours(sides[0]);
        if (p.x == box.x1) neighbours(sides[1]);
        if (p.y == box.y1) neighbours(sides[2]);
        if (p.x == box.x0) neighbours(sides[3]);
        cutline_gateways(p, index, strategy, prefix, base, best);
    }
    std::vector<GatewayEntry> out;
    out.reserve(best.size());
    for (auto& [id, e] : best) out.push_back(std::move(e));
    return out;
}

}  // namespace

GatewaySet weighted_gateways(const Point& q, const WeightedIndex& index, GatewayStrategy strategy) {
    check_query_point(index.visibility(), q);
    std::map<std::int32_t, GatewayEntry> best;
    cutline_gateways(q, index, strategy, {}, Rational(0), best);
    GatewaySet set;
    set.source = q;
    for (auto& [id, e] : best) set.entries.push_back(std::move(e));
    set.v2_count = set.entries.size();
    return set;
}

QueryResult weighted_query(const WeightedIndex& index, const Point& s, const Point& t, bool want_path) {
    const Visibility& vis = index.visibility();
    check_query_point(vis, s);
    check_query_point(vis, t);

    QueryResult result;
    result.length = Rational::infinite();
    result.kind = QueryResult::Kind::Trivial;
    auto offer = [&](const Rational& len, std::vector<RPoint> path) {
        if (len < result.length) {
            result.length = len;
            result.path = std::move(path);
        }
    };
    if (s == t) {
        offer(Rational(0), {RPoint(s)});
        return result;
    }
    for (const Point& corner : {Point{t.x, s.y}, Point{s.x, t.y}}) {
        const Rational len = line_cost(index.profiles(), s, corner) + line_cost(index.profiles(), corner, t);
        if (!len.is_infinite()) offer(len, make_polyline({RPoint(s), RPoint(corner), RPoint(t)}));
    }
    if (auto trivial = detect_trivial_path(s, t, vis)) offer(trivial->length, std::move(trivial->polyline));

    const std::vector<GatewayEntry> gs = fan_gateways(s, index, index.options().strategy);
    const std::vector<GatewayEntry> gt = fan_gateways(t, index, index.options().strategy);
    result.gateway_count = gs.size() + gt.size();
    const detail::TableView table{index.table_data(), index.predecessor_data(), index.graph().node_count()};
    const detail::GatewaySearch found = detail::search_gateway_graph(index.graph(), gs, gt, result.length,
                                                                     index.has_table() ? &table : nullptr, want_path);
    if (found.source != nullptr) {
        result.length = found.length;
        result.kind = QueryResult::Kind::ViaGateways;
        result.path.clear();
        if (want_path) result.path = detail::assemble_path(index.graph(), found);
    }
    if (result.length.is_infinite()) {
        throw std::logic_error("no path found between " + to_string(s) + " and " + to_string(t));
    }
    if (!want_path) result.path.clear();
    return result;
}

std::vector<BatchResult> weighted_batch_query(const WeightedIndex& index, const std::vector<QueryPair>& pairs,
                                              bool want_path, unsigned threads) {
    return run_batch(pairs, threads, [&](const QueryPair& p) { return weighted_query(index, p.s, p.t, want_path); });
}

}  // namespace l1sp
