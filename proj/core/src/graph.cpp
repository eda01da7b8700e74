#include "l1sp/graph.hpp"

#include "graph_builder.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

namespace l1sp {

std::string_view node_kind_name(NodeKind kind) {
    switch (kind) {
        case NodeKind::Vertex: return "vertex";
        case NodeKind::Type1: return "type1";
        case NodeKind::Type2: return "type2";
        case NodeKind::Type3: return "type3";
    }
    return "?";
}

std::string_view graph_variant_name(GraphVariant variant) {
    switch (variant) {
        case GraphVariant::GOld: return "g_old";
        case GraphVariant::GEnhanced: return "g_e";
        case GraphVariant::Weighted: return "weighted";
    }
    return "?";
}

std::size_t PathGraph::edge_count() const {
    std::size_t total = 0;
    for (const auto& adj : adjacency) total += adj.size();
    return total / 2;
}

std::int32_t PathGraph::find(const RPoint& p) const {
    const auto it = std::lower_bound(nodes.begin(), nodes.end(), p,
                                     [](const GraphNode& n, const RPoint& q) { return n.location < q; });
    if (it == nodes.end() || it->location != p) return -1;
    return static_cast<std::int32_t>(it - nodes.begin());
}

PathGraph dedupe_and_index(const PathGraph& raw) {
    const std::size_t n = raw.nodes.size();
    std::vector<std::int32_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::int32_t a, std::int32_t b) {
        return raw.nodes[static_cast<std::size_t>(a)].location < raw.nodes[static_cast<std::size_t>(b)].location;
    });

    PathGraph out;
    out.variant = raw.variant;
    std::vector<std::int32_t> remap(n, -1);
    for (std::int32_t old : order) {
        const GraphNode& node = raw.nodes[static_cast<std::size_t>(old)];
        if (out.nodes.empty() || out.nodes.back().location != node.location) {
            out.nodes.push_back(node);
        } else if (node.kind < out.nodes.back().kind) {
            out.nodes.back().kind = node.kind;
            out.nodes.back().vertex = node.vertex;
        }
        remap[static_cast<std::size_t>(old)] = static_cast<std::int32_t>(out.nodes.size() - 1);
    }

    struct FlatEdge {
        std::int32_t a, b;
        Rational length;
    };
    std::vector<FlatEdge> edges;
    for (std::size_t u = 0; u < raw.adjacency.size(); ++u) {
        for (const GraphEdge& e : raw.adjacency[u]) {
            std::int32_t a = remap[u], b = remap[static_cast<std::size_t>(e.to)];
            if (a == b) continue;
            if (a > b) std::swap(a, b);
            edges.push_back({a, b, e.length});
        }
    }
    std::sort(edges.begin(), edges.end(), [](const FlatEdge& x, const FlatEdge& y) {
        if (x.a != y.a) return x.a < y.a;
        if (x.b != y.b) return x.b < y.b;
        return x.length < y.length;
    });
    out.adjacency.assign(out.nodes.size(), {});
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (i > 0 && edges[i].a == edges[i - 1].a && edges[i].b == edges[i - 1].b) continue;
        out.adjacency[static_cast<std::size_t>(edges[i].a)].push_back({edges[i].b, edges[i].length});
        out.adjacency[static_cast<std::size_t>(edges[i].b)].push_back({edges[i].a, edges[i].length});
    }
    for (auto& adj : out.adjacency) {
        std::sort(adj.begin(), adj.end(), [](const GraphEdge& x, const GraphEdge& y) { return x.to < y.to; });
    }

    auto remap_lines = [&](const std::vector<std::vector<CutlineEntry>>& lines) {
        std::vector<std::vector<CutlineEntry>> result(lines.size());
        for (std::size_t i = 0; i < lines.size(); ++i) {
            auto& list = result[i];
            for (CutlineEntry entry : lines[i]) {
                entry.node = remap[static_cast<std::size_t>(entry.node)];
                list.push_back(entry);
            }
            std::sort(list.begin(), list.end(),
                      [](const CutlineEntry& x, const CutlineEntry& y) { return x.node < y.node; });
            list.erase(std::unique(list.begin(), list.end(),
                                   [](const CutlineEntry& x, const CutlineEntry& y) { return x.node == y.node; }),
                       list.end());
        }
        return result;
    };
    out.vertical_lines = remap_lines(raw.vertical_lines);
    out.horizontal_lines = remap_lines(raw.horizontal_lines);

    out.edge_nodes.resize(raw.edge_nodes.size());
    for (std::size_t e = 0; e < raw.edge_nodes.size(); ++e) {
        auto& list = out.edge_nodes[e];
        for (std::int32_t id : raw.edge_nodes[e]) list.push_back(remap[static_cast<std::size_t>(id)]);
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
    }
    return out;
}

CutLineTree vertex_cutline_tree(const Scene& scene, Axis axis) {
    std::vector<Point> points;
    for (const Polygon& poly : scene.obstacles) points.insert(points.end(), poly.vertices.begin(), poly.vertices.end());
    if (points.empty()) {
        CutLineTree empty;
        empty.axis = axis;
        return empty;
    }
    return build_cutline_tree(points, axis);
}

namespace {

// Nodes of T_u: the part of u's subtree inside u's super-level, in order.
void super_level_subtree(const CutLineTree& tree, std::int32_t id, int max_level, std::vector<std::int32_t>& out) {
    if (id < 0 || tree.node(id).level > max_level) return;
    super_level_subtree(tree, tree.node(id).left, max_level, out);
    out.push_back(id);
    super_level_subtree(tree, tree.node(id).right, max_level, out);
}

PathGraph build_unweighted(const Scene& scene, const CutLineTree& tree, const Visibility& vis, bool enhanced) {
    (void)scene;
    const SceneGeometry& g = vis.geometry();
    const auto n = static_cast<std::int32_t>(g.vertex_count());
    detail::GraphBuilder b(enhanced ? GraphVariant::GEnhanced : GraphVariant::GOld, tree.nodes.size(), 0,
                           static_cast<std::size_t>(n));

    std::vector<std::int32_t> vertex_node(static_cast<std::size_t>(n));
    for (std::int32_t v = 0; v < n; ++v) {
        const std::int32_t id = b.add_node(g.vertex(v), NodeKind::Vertex, v);
        vertex_node[static_cast<std::size_t>(v)] = id;
        b.add_to_edge(v, id);
        b.add_to_edge(g.prev(v), id);
    }
    for (std::int32_t v = 0; v < n; ++v) {
        for (Direction d : kDirections) {
            const RayHit hit = vis.ray_shoot(g.vertex(v), d);
            if (hit.kind != RayHit::Kind::Obstacle) continue;
            const std::int32_t id = b.add_node(hit.point, NodeKind::Type1, v);
            b.add_edge(vertex_node[static_cast<std::size_t>(v)], id, l1_length(RPoint(g.vertex(v)), hit.point));
            if (hit.contact.kind == BoundaryContact::Kind::Edge) b.add_to_edge(hit.contact.id, id);
        }
    }

    std::vector<Rational> reach_left(static_cast<std::size_t>(n)), reach_right(static_cast<std::size_t>(n));
    for (std::int32_t v = 0; v < n; ++v) {
        reach_left[static_cast<std::size_t>(v)] = vis.free_extent(g.vertex(v), Direction::Left).x;
        reach_right[static_cast<std::size_t>(v)] = vis.free_extent(g.vertex(v), Direction::Right).x;
    }

    // Projection of vertex v onto the cut-line of tree node `line`, or -1.
    std::unordered_map<std::int32_t, std::pair<Rational, Rational>> vertical_reach;
    auto project = [&](std::int32_t v, std::int32_t line, NodeKind kind) -> std::int32_t {
        const Point& p = g.vertex(v);
        const std::int64_t c = tree.node(line).coord;
        const Rational rc(c);
        const bool visible = c == p.x || (c > p.x ? reach_right[static_cast<std::size_t>(v)] >= rc
                                                  : reach_left[static_cast<std::size_t>(v)] <= rc);
        if (!visible) return -1;
        const Point q{c, p.y};
        const std::int32_t id = c == p.x ? vertex_node[static_cast<std::size_t>(v)] : b.add_node(q, kind, v);
        auto it = vertical_reach.find(id);
        if (it == vertical_reach.end()) {
            it = vertical_reach
                     .emplace(id, std::make_pair(vis.free_extent(q, Direction::Down).y,
                                                 vis.free_extent(q, Direction::Up).y))
                     .first;
            const BoundaryContact contact = vis.contact(q);
            if (contact.kind == BoundaryContact::Kind::Edge) b.add_to_edge(contact.id, id);
        }
        b.line(Axis::Vertical, line).push_back({id, q.y, it->second.first, it->second.second});
        return id;
    };

    for (std::int32_t u = 0; u < static_cast<std::int32_t>(tree.nodes.size()); ++u) {
        for (std::int32_t m : tree.node(u).members) {
            const std::int32_t id = project(m, u, NodeKind::Type2);
            if (id < 0) continue;
            b.add_edge(vertex_node[static_cast<std::size_t>(m)], id,
                       Rational(std::abs(tree.node(u).coord - g.vertex(m).x)));
        }
    }

    if (enhanced) {
        for (std::int32_t u = 0; u < static_cast<std::int32_t>(tree.nodes.size()); ++u) {
            const CutNode& top = tree.node(u);
            if (tree.super_level_top(top.level) != top.level) continue;
            std::vector<std::int32_t> lines;
            super_level_subtree(tree, u, top.level + tree.super_level_size - 1, lines);
            for (std::int32_t m : top.members) {
                std::vector<std::pair<std::int64_t, std::int32_t>> chain{{g.vertex(m).x,
                                                                          vertex_node[static_cast<std::size_t>(m)]}};
                for (std::int32_t line : lines) {
                    const std::int32_t id = project(m, line, NodeKind::Type3);
                    if (id >= 0) chain.emplace_back(tree.node(line).coord, id);
                }
                std::sort(chain.begin(), chain.end());
                for (std::size_t i = 1; i < chain.size(); ++i) {
                    b.add_edge(chain[i - 1].second, chain[i].second, Rational(chain[i].first - chain[i - 1].first));
                }
            }
        }
    }

    b.sort_lines();
    for (std::size_t line = 0; line < b.line_count(Axis::Vertical); ++line) {
        const auto& list = b.line(Axis::Vertical, static_cast<std::int32_t>(line));
        for (std::size_t i = 1; i < list.size(); ++i) {
            if (list[i - 1].reach_high >= Rational(list[i].key)) {
                b.add_edge(list[i - 1].node, list[i].node, Rational(list[i].key - list[i - 1].key));
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
    return b.finish();
}

}  // namespace

PathGraph build_g_old(const Scene& scene, const CutLineTree& tree, const Visibility& vis) {
    return build_unweighted(scene, tree, vis, false);
}

PathGraph build_g_e(const Scene& scene, const CutLineTree& tree, const Visibility& vis) {
    return build_unweighted(scene, tree, vis, true);
}

}  // namespace l1sp
