#include "fixtures.hpp"

#include "l1sp/oracle.hpp"
#include "l1sp/query.hpp"
#include "l1sp/weighted.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace l1sp;

namespace {

Rational repriced(const std::vector<RPoint>& path, const Scene& scene) {
    Rational total(0);
    for (std::size_t i = 1; i < path.size(); ++i) total = total + segment_weighted_length(path[i - 1], path[i], scene);
    return total;
}

Scene weighted_scene(std::uint64_t seed, const GeneratorOptions& options = {}) {
    return generate_scene(4 * (8 + seed % 6), 1 + seed % 5, SceneMode::RectilinearWeighted, seed, options);
}

std::vector<QueryPair> fuzz_pairs(const Scene& scene, std::size_t count, std::uint64_t seed) {
    const auto pts = random_free_points(scene, 2 * count, seed);
    std::vector<QueryPair> pairs;
    for (std::size_t i = 0; i + 1 < pts.size(); i += 2) pairs.push_back({pts[i], pts[i + 1]});
    return pairs;
}

}  // namespace

TEST(SegmentWeightedLength, SceneW) {
    const Scene w = fixtures::scene_w();
    EXPECT_EQ(segment_weighted_length(Segment{{0, 2}, {4, 2}}, w), Rational(5));
    EXPECT_EQ(segment_weighted_length(Segment{{2, 0}, {2, 4}}, w), Rational(5));
    EXPECT_EQ(segment_weighted_length(Segment{{0, 1}, {4, 1}}, w), Rational(4));
    EXPECT_EQ(segment_weighted_length(Segment{{1, 0}, {1, 4}}, w), Rational(4));
    EXPECT_EQ(segment_weighted_length(Segment{{0, 2}, {4, 2}}, fixtures::scene_w(Rational::infinite())),
              Rational::infinite());
    EXPECT_EQ(segment_weighted_length(Segment{{0, 3}, {4, 3}}, fixtures::scene_w(Rational::infinite())), Rational(4));
}

TEST(SegmentWeightedLength, Errors) {
    try {
        segment_weighted_length(Segment{{0, 0}, {1, 1}}, fixtures::scene_w());
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NonRectilinearEdge);
    }
    try {
        segment_weighted_length(Segment{{0, 0}, {1, 0}}, fixtures::scene_a());
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::WrongMode);
    }
}

TEST(SegmentWeightedLength, MatchesOraclePricing) {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        const Scene scene = weighted_scene(seed);
        const WeightedOracle oracle(scene);
        const auto pts = random_free_points(scene, 60, seed);
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            const RPoint a(pts[i]);
            for (const RPoint b : {RPoint(Point{pts[i + 1].x, pts[i].y}), RPoint(Point{pts[i].x, pts[i + 1].y})}) {
                ASSERT_EQ(segment_weighted_length(a, b, scene), oracle.segment_cost(a, b))
                    << "seed " << seed << " " << to_string(a) << " -> " << to_string(b);
            }
        }
    }
}

TEST(LineProfile, ReachStopsAtBoundaryChanges) {
    const Scene w = fixtures::scene_w();
    const LineProfile row(w, Axis::Horizontal, 2);
    EXPECT_EQ(row.reach(0), std::make_pair(std::int64_t{-1}, std::int64_t{1}));
    EXPECT_EQ(row.reach(2), std::make_pair(std::int64_t{1}, std::int64_t{3}));
    EXPECT_EQ(row.reach(1), std::make_pair(std::int64_t{-1}, std::int64_t{3}));
    EXPECT_TRUE(row.visible(0, 1));
    EXPECT_FALSE(row.visible(0, 2));
    EXPECT_TRUE(row.visible(1, 3));
    const LineProfile edge(w, Axis::Horizontal, 1);
    EXPECT_TRUE(edge.visible(-1, 5));
    EXPECT_EQ(edge.cost(-1, 5), Rational(6));
}

TEST(VSet, SceneW) {
    const WeightedNodeSet v = collect_v_set(fixtures::scene_w());
    EXPECT_EQ(v.points.size(), 12u);
    std::size_t vertices = 0;
    for (const WeightedPoint& p : v.points) vertices += p.source == WeightedPoint::Source::Vertex ? 1 : 0;
    EXPECT_EQ(vertices, 4u);
    EXPECT_TRUE(std::is_sorted(v.points.begin(), v.points.end(),
                               [](const WeightedPoint& a, const WeightedPoint& b) { return a.point < b.point; }));
    EXPECT_THROW(collect_v_set(fixtures::scene_a()), Error);
}

TEST(VSet, LShapeInternalProjections) {
    const WeightedNodeSet v = collect_v_set(fixtures::l_shape());
    std::set<Point> internal;
    for (const WeightedPoint& p : v.points) {
        if (p.source == WeightedPoint::Source::InternalProjection) internal.insert(p.point);
    }
    EXPECT_TRUE(internal.count(Point{0, 2}));
    EXPECT_TRUE(internal.count(Point{2, 0}));
}

TEST(WeightedGraph, EdgesArePricedByTheWeightRule) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const Scene scene = weighted_scene(seed);
        const auto index = preprocess_weighted(scene);
        const WeightedOracle oracle(scene);
        const PathGraph& g = index->graph();
        ASSERT_EQ(g.variant, GraphVariant::Weighted);
        for (std::size_t u = 0; u < g.node_count(); ++u) {
            for (const GraphEdge& e : g.adjacency[u]) {
                const RPoint& a = g.nodes[u].location;
                const RPoint& b = g.nodes[static_cast<std::size_t>(e.to)].location;
                ASSERT_TRUE(a.x == b.x || a.y == b.y);
                ASSERT_EQ(e.length, oracle.segment_cost(a, b)) << "seed " << seed << " " << to_string(a) << " -> "
                                                               << to_string(b);
            }
        }
    }
}

TEST(WeightedGraph, ZeroWeightsGiveL1Edges) {
    GeneratorOptions zero;
    zero.weight_palette = {Rational(0)};
    const auto index = preprocess_weighted(weighted_scene(3, zero));
    const PathGraph& g = index->graph();
    for (std::size_t u = 0; u < g.node_count(); ++u) {
        for (const GraphEdge& e : g.adjacency[u]) {
            ASSERT_EQ(e.length, l1_length(g.nodes[u].location, g.nodes[static_cast<std::size_t>(e.to)].location));
        }
    }
}

TEST(CutLineWeightIndex, DistanceMatchesProfileCost) {
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        const Scene scene = weighted_scene(seed);
        const auto index = preprocess_weighted(scene);
        for (Axis axis : {Axis::Vertical, Axis::Horizontal}) {
            const CutLineTree& tree = index->tree(axis);
            const auto& steiner =
                axis == Axis::Vertical ? index->graph().vertical_lines : index->graph().horizontal_lines;
            const CutLineWeightIndex& weights = index->weights(axis);
            for (std::int32_t u = 0; u < static_cast<std::int32_t>(tree.nodes.size()); ++u) {
                const LineProfile prof(scene, axis, tree.node(u).coord);
                const auto& list = weights.list(u);
                const auto& line = steiner[static_cast<std::size_t>(u)];
                for (std::int64_t pos = prof.low(); pos <= prof.high(); pos += 1 + (prof.high() - prof.low()) / 40) {
                    const auto lb = static_cast<std::int32_t>(
                        std::lower_bound(list.begin(), list.end(), pos,
                                         [](const CutLineWeightIndex::Entry& e, std::int64_t k) { return e.key < k; }) -
                        list.begin());
                    for (std::size_t k = 0; k < line.size(); ++k) {
                        ASSERT_EQ(weights.distance(u, pos, lb, k), prof.cost(pos, line[k].key))
                            << "seed " << seed << " node " << u << " pos " << pos;
                    }
                }
            }
        }
    }
}

TEST(CutLineWeightIndex, SceneWThroughRectangle) {
    const Scene w = fixtures::scene_w();
    const auto index = preprocess_weighted(w);
    const CutLineTree& tree = index->tree(Axis::Vertical);
    for (std::int32_t u = 0; u < static_cast<std::int32_t>(tree.nodes.size()); ++u) {
        if (tree.node(u).coord != 2) continue;
        const auto& line = index->graph().vertical_lines[static_cast<std::size_t>(u)];
        const auto& list = index->weights(Axis::Vertical).list(u);
        const auto lb = static_cast<std::int32_t>(
            std::lower_bound(list.begin(), list.end(), std::int64_t{0},
                             [](const CutLineWeightIndex::Entry& e, std::int64_t k) { return e.key < k; }) -
            list.begin());
        for (std::size_t k = 0; k < line.size(); ++k) {
            if (line[k].key == 4) EXPECT_EQ(index->weights(Axis::Vertical).distance(u, 0, lb, k), Rational(5));
        }
    }
}

TEST(WeightedGateways, EmptySceneIsPlainL1) {
    Scene empty{SceneMode::RectilinearWeighted, {-5, -5, 5, 5}, {}, {}};
    const auto index = preprocess_weighted(empty);
    const GatewaySet set = weighted_gateways({0, 0}, *index);
    EXPECT_TRUE(set.entries.empty());
    EXPECT_EQ(weighted_query(*index, {-5, -5}, {5, 3}).length, Rational(18));
}

TEST(WeightedGateways, CascadeMatchesBinarySearchAndPricing) {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        const Scene scene = weighted_scene(seed);
        const auto index = preprocess_weighted(scene);
        const std::size_t cap =
            4u * static_cast<std::size_t>(index->tree(Axis::Vertical).super_levels +
                                          index->tree(Axis::Horizontal).super_levels);
        for (const Point& q : random_free_points(scene, 40, seed * 5)) {
            const GatewaySet fast = weighted_gateways(q, *index, GatewayStrategy::Cascade);
            const GatewaySet slow = weighted_gateways(q, *index, GatewayStrategy::BinarySearch);
            ASSERT_EQ(fast.entries.size(), slow.entries.size());
            ASSERT_LE(fast.entries.size(), cap);
            for (std::size_t i = 0; i < fast.entries.size(); ++i) {
                const GatewayEntry& e = fast.entries[i];
                ASSERT_EQ(e.node, slow.entries[i].node);
                ASSERT_EQ(e.length, slow.entries[i].length);
                ASSERT_EQ(e.polyline.front(), RPoint(q));
                ASSERT_EQ(e.polyline.back(), index->graph().nodes[static_cast<std::size_t>(e.node)].location);
                ASSERT_EQ(repriced(e.polyline, scene), e.length) << "seed " << seed << " q " << to_string(q);
            }
        }
    }
}

TEST(WeightedQuery, SceneWExamples) {
    for (ApspPolicy policy : {ApspPolicy::OnDemand, ApspPolicy::Full}) {
        IndexOptions opts;
        opts.policy = policy;
        const Scene half = fixtures::scene_w();
        const auto a = preprocess_weighted(half, opts);
        const QueryResult through = weighted_query(*a, {0, 2}, {4, 2});
        EXPECT_EQ(through.length, Rational(5));
        EXPECT_EQ(repriced(through.path, half), Rational(5));

        const Scene two = fixtures::scene_w(Rational(2));
        const auto b = preprocess_weighted(two, opts);
        const QueryResult around = weighted_query(*b, {0, 2}, {4, 2});
        EXPECT_EQ(around.length, Rational(6));
        EXPECT_EQ(repriced(around.path, two), Rational(6));
        EXPECT_EQ(weighted_query(*b, {0, 2}, {0, 2}).length, Rational(0));
    }
}

TEST(WeightedQuery, Errors) {
    const auto index = preprocess_weighted(fixtures::scene_w());
    try {
        weighted_query(*index, {2, 2}, {0, 0});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::PointInsideObstacle);
    }
    try {
        weighted_query(*index, {0, 0}, {9, 0});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::OutOfBbox);
    }
    try {
        preprocess_weighted(fixtures::scene_a());
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::WrongMode);
    }
}

TEST(WeightedQueryProperty, SoundAndCompleteAgainstOracle) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const Scene scene = weighted_scene(seed);
        const WeightedOracle oracle(scene);
        IndexOptions full;
        full.policy = ApspPolicy::Full;
        const auto on_demand = preprocess_weighted(scene);
        const auto table = preprocess_weighted(scene, full);
        std::set<Point> v;
        for (const WeightedPoint& p : on_demand->v_set().points) v.insert(p.point);
        for (const QueryPair& q : fuzz_pairs(scene, 20, seed * 17)) {
            const OraclePath expect = oracle.shortest_path(q.s, q.t);
            const QueryResult r = weighted_query(*on_demand, q.s, q.t);
            const std::string where = "seed " + std::to_string(seed) + " " + to_string(q.s) + " -> " + to_string(q.t);
            ASSERT_GE(r.length, expect.length) << where;
            ASSERT_EQ(r.path.front(), RPoint(q.s));
            ASSERT_EQ(r.path.back(), RPoint(q.t));
            ASSERT_EQ(repriced(r.path, scene), r.length) << where;
            bool through_v = false;
            for (const RPoint& p : expect.polyline) through_v = through_v || (p.is_integral() && v.count(p.to_point()));
            if (through_v) ASSERT_EQ(r.length, expect.length) << where;
            ASSERT_EQ(weighted_query(*table, q.s, q.t).length, r.length) << where;
            ASSERT_EQ(weighted_query(*on_demand, q.s, q.t, false).length, r.length) << where;
        }
    }
}

TEST(WeightedQueryProperty, ZeroWeightsGiveL1) {
    GeneratorOptions zero;
    zero.weight_palette = {Rational(0)};
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const Scene scene = weighted_scene(seed, zero);
        const auto index = preprocess_weighted(scene);
        for (const QueryPair& q : fuzz_pairs(scene, 20, seed)) {
            ASSERT_EQ(weighted_query(*index, q.s, q.t).length, Rational(l1_length(RPoint(q.s), RPoint(q.t))));
        }
    }
}

TEST(WeightedQueryProperty, InfiniteWeightsMatchUnweightedEngine) {
    GeneratorOptions inf;
    inf.weight_palette = {Rational::infinite()};
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const Scene scene = weighted_scene(seed, inf);
        const auto weighted = preprocess_weighted(scene);
        const auto plain = preprocess(scene);
        for (const QueryPair& q : fuzz_pairs(scene, 20, seed)) {
            ASSERT_EQ(weighted_query(*weighted, q.s, q.t).length, query(*plain, q.s, q.t).length)
                << "seed " << seed << " " << to_string(q.s) << " -> " << to_string(q.t);
        }
    }
}

TEST(WeightedQueryProperty, RaisingAWeightNeverShortens) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        Scene scene = weighted_scene(seed);
        const auto pairs = fuzz_pairs(scene, 15, seed * 3);
        std::vector<Rational> prev;
        for (const Rational& w : {Rational(0), Rational(1), Rational(3), Rational::infinite()}) {
            scene.weights[0] = w;
            const auto index = preprocess_weighted(scene);
            for (std::size_t i = 0; i < pairs.size(); ++i) {
                const Rational len = weighted_query(*index, pairs[i].s, pairs[i].t).length;
                if (prev.size() == pairs.size()) ASSERT_GE(len, prev[i]) << "seed " << seed << " pair " << i;
                if (prev.size() < pairs.size()) {
                    prev.push_back(len);
                } else {
                    prev[i] = len;
                }
            }
        }
    }
}

TEST(WeightedQueryProperty, BatchEqualsSequential) {
    const Scene scene = weighted_scene(4);
    const auto index = preprocess_weighted(scene);
    std::vector<QueryPair> pairs = fuzz_pairs(scene, 30, 9);
    pairs.push_back({{scene.bbox.x1 + 1, 0}, {0, 0}});
    const auto out = weighted_batch_query(*index, pairs, true, 3);
    for (std::size_t i = 0; i + 1 < pairs.size(); ++i) {
        ASSERT_TRUE(out[i].result.has_value());
        EXPECT_EQ(out[i].result->length, weighted_query(*index, pairs[i].s, pairs[i].t).length);
    }
    EXPECT_EQ(out.back().code, ErrorCode::OutOfBbox);
}
