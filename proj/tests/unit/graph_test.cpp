#include "fixtures.hpp"

#include "l1sp/graph.hpp"
#include "l1sp/oracle.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <queue>

using namespace l1sp;

namespace {

// Plain Dijkstra over a PathGraph; kept here so the engine's own search is
// not what checks the graph.
std::vector<Rational> graph_distances(const PathGraph& g, std::int32_t source) {
    std::vector<Rational> dist(g.node_count(), Rational::infinite());
    using Item = std::pair<Rational, std::int32_t>;
    auto cmp = [](const Item& a, const Item& b) { return a.first > b.first; };
    std::priority_queue<Item, std::vector<Item>, decltype(cmp)> heap(cmp);
    dist[static_cast<std::size_t>(source)] = Rational(0);
    heap.emplace(Rational(0), source);
    while (!heap.empty()) {
        const auto [d, u] = heap.top();
        heap.pop();
        if (d != dist[static_cast<std::size_t>(u)]) continue;
        for (const GraphEdge& e : g.adjacency[static_cast<std::size_t>(u)]) {
            const Rational nd = d + e.length;
            if (nd < dist[static_cast<std::size_t>(e.to)]) {
                dist[static_cast<std::size_t>(e.to)] = nd;
                heap.emplace(nd, e.to);
            }
        }
    }
    return dist;
}

struct Built {
    Scene scene;
    std::unique_ptr<Visibility> vis;
    CutLineTree tree;
    PathGraph g_old;
    PathGraph g_e;
};

Built build_all(const Scene& scene) {
    Built b;
    b.scene = scene;
    b.vis = std::make_unique<Visibility>(scene);
    b.tree = vertex_cutline_tree(scene);
    b.g_old = build_g_old(scene, b.tree, *b.vis);
    b.g_e = build_g_e(scene, b.tree, *b.vis);
    return b;
}

bool graphs_equal(const PathGraph& a, const PathGraph& b) {
    if (a.node_count() != b.node_count()) return false;
    for (std::size_t i = 0; i < a.node_count(); ++i) {
        if (a.nodes[i].location != b.nodes[i].location || a.nodes[i].kind != b.nodes[i].kind) return false;
        if (a.adjacency[i].size() != b.adjacency[i].size()) return false;
        for (std::size_t j = 0; j < a.adjacency[i].size(); ++j) {
            if (a.adjacency[i][j].to != b.adjacency[i][j].to) return false;
            if (a.adjacency[i][j].length != b.adjacency[i][j].length) return false;
        }
    }
    return a.edge_nodes == b.edge_nodes && a.vertical_lines.size() == b.vertical_lines.size();
}

}  // namespace

TEST(Graph, SceneAGOld) {
    const Built b = build_all(fixtures::scene_a());
    const PathGraph& g = b.g_old;
    const std::int32_t v21 = g.find(RPoint(Point{2, 1}));
    const std::int32_t v52 = g.find(RPoint(Point{5, 2}));
    ASSERT_GE(v21, 0);
    ASSERT_GE(v52, 0);
    EXPECT_EQ(g.nodes[static_cast<std::size_t>(v21)].kind, NodeKind::Vertex);
    EXPECT_EQ(graph_distances(g, v21)[static_cast<std::size_t>(v52)], Rational(4));
    // (2,1) sits on the root cut-line x=2: it is its own type-2 point.
    const auto& root_line = g.vertical_lines[static_cast<std::size_t>(b.tree.root)];
    bool found = false;
    for (const auto& entry : root_line) found = found || entry.node == v21;
    EXPECT_TRUE(found);
    // Vertex (5,2) shoots left into the obstacle edge (2,1)-(5,2)? No: left of
    // (5,2) is the interior, so its left projection is absent.
    EXPECT_LE(g.node_count(), 4u + 16u + 4u * 3u);
}

TEST(Graph, SceneAGEContainsGOld) {
    const Built b = build_all(fixtures::scene_a());
    for (const GraphNode& node : b.g_old.nodes) EXPECT_GE(b.g_e.find(node.location), 0);
    EXPECT_GE(b.g_e.node_count(), b.g_old.node_count());
}

TEST(Graph, DedupeIsIdempotent) {
    const Built b = build_all(generate_scene(30, 3, SceneMode::Polygonal, 9));
    EXPECT_TRUE(graphs_equal(dedupe_and_index(b.g_e), b.g_e));
    PathGraph doubled = b.g_old;
    // Duplicate every node; merging must give back the same graph.
    const std::size_t n = doubled.node_count();
    for (std::size_t i = 0; i < n; ++i) {
        doubled.nodes.push_back(doubled.nodes[i]);
        doubled.adjacency.push_back({{static_cast<std::int32_t>(i), Rational(0)}});
    }
    EXPECT_TRUE(graphs_equal(dedupe_and_index(doubled), b.g_old));
}

TEST(GraphProperty, StructuralInvariants) {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        const Built b = build_all(generate_scene(20 + seed * 3, 1 + seed % 5, SceneMode::Polygonal, seed));
        const UnweightedOracle oracle(b.scene);
        for (const PathGraph* g : {&b.g_old, &b.g_e}) {
            for (std::size_t i = 1; i < g->node_count(); ++i) ASSERT_LT(g->nodes[i - 1].location, g->nodes[i].location);
            for (std::size_t u = 0; u < g->node_count(); ++u) {
                for (const GraphEdge& e : g->adjacency[u]) {
                    const RPoint& a = g->nodes[u].location;
                    const RPoint& c = g->nodes[static_cast<std::size_t>(e.to)].location;
                    ASSERT_EQ(e.length, l1_length(a, c));
                    if (a.is_integral() && c.is_integral()) ASSERT_TRUE(oracle.segment_free(a.to_point(), c.to_point()));
                }
            }
            for (std::size_t line = 0; line < g->vertical_lines.size(); ++line) {
                const auto& list = g->vertical_lines[line];
                for (std::size_t i = 0; i < list.size(); ++i) {
                    const RPoint& p = g->nodes[static_cast<std::size_t>(list[i].node)].location;
                    ASSERT_EQ(p.x, Rational(b.tree.node(static_cast<std::int32_t>(line)).coord));
                    ASSERT_EQ(p.y, Rational(list[i].key));
                    if (i > 0) ASSERT_LT(list[i - 1].key, list[i].key);
                }
            }
            // Type-2/3 points see their defining vertex horizontally.
            for (const GraphNode& node : g->nodes) {
                if (node.kind != NodeKind::Type2 && node.kind != NodeKind::Type3) continue;
                ASSERT_TRUE(node.location.is_integral());
                const Point& v = b.vis->geometry().vertex(node.vertex);
                ASSERT_EQ(node.location.y, Rational(v.y));
                ASSERT_TRUE(oracle.segment_free(v, node.location.to_point()));
            }
        }
    }
}

TEST(GraphProperty, VertexPairDistancesMatchOracle) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const Built b = build_all(generate_scene(8 + (seed * 5) % 33, 1 + seed % 6, SceneMode::Polygonal, seed));
        const UnweightedOracle oracle(b.scene);
        const auto& geo = b.vis->geometry();
        for (std::size_t i = 0; i < oracle.vertex_count(); ++i) {
            const auto expected = oracle.vertex_distances(i);
            const auto d_old = graph_distances(b.g_old, b.g_old.find(RPoint(geo.vertex(static_cast<std::int32_t>(i)))));
            const auto d_e = graph_distances(b.g_e, b.g_e.find(RPoint(geo.vertex(static_cast<std::int32_t>(i)))));
            for (std::size_t j = 0; j < oracle.vertex_count(); ++j) {
                const RPoint pj(geo.vertex(static_cast<std::int32_t>(j)));
                const Rational want = Rational::from_fraction(expected[j], 1);
                ASSERT_EQ(d_old[static_cast<std::size_t>(b.g_old.find(pj))], want) << "seed " << seed << " " << i << "-" << j;
                ASSERT_EQ(d_e[static_cast<std::size_t>(b.g_e.find(pj))], want) << "seed " << seed << " " << i << "-" << j;
            }
        }
    }
}

TEST(GraphProperty, EnhancedNodeCountBound) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const std::size_t n = 64 * seed;
        const Built b = build_all(generate_scene(n, 4 + seed, SceneMode::Polygonal, seed));
        const double L = std::ceil(std::log2(static_cast<double>(n)));
        const double bound = 16.0 * static_cast<double>(n) * std::sqrt(L) * std::pow(2.0, std::ceil(std::sqrt(L)));
        EXPECT_LE(static_cast<double>(b.g_e.node_count()), bound);
    }
}
