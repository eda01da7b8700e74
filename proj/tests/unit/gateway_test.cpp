#include "fixtures.hpp"

#include "l1sp/gateway.hpp"
#include "l1sp/oracle.hpp"
#include "l1sp/query.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace l1sp;

namespace {

Rational polyline_length(const std::vector<RPoint>& pts) {
    Rational total(0);
    for (std::size_t i = 1; i < pts.size(); ++i) total = total + l1_length(pts[i - 1], pts[i]);
    return total;
}

bool xy_monotone(const std::vector<RPoint>& pts) {
    int sx = 0, sy = 0;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        const int dx = pts[i].x < pts[i - 1].x ? -1 : (pts[i - 1].x < pts[i].x ? 1 : 0);
        const int dy = pts[i].y < pts[i - 1].y ? -1 : (pts[i - 1].y < pts[i].y ? 1 : 0);
        if (dx != 0 && sx != 0 && dx != sx) return false;
        if (dy != 0 && sy != 0 && dy != sy) return false;
        if (dx != 0) sx = dx;
        if (dy != 0) sy = dy;
    }
    return true;
}

bool same_sets(const GatewaySet& a, const GatewaySet& b) {
    if (a.entries.size() != b.entries.size()) return false;
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        if (a.entries[i].node != b.entries[i].node || a.entries[i].length != b.entries[i].length) return false;
    }
    return true;
}

}  // namespace

TEST(FractionalCascade, MatchesBinarySearchOnRandomProbes) {
    const Scene scene = generate_scene(120, 8, SceneMode::Polygonal, 7);
    const auto index = preprocess(scene);
    const auto& tree = index->tree();
    const auto& lines = index->graph().vertical_lines;
    const FractionalCascade& fc = index->cascade();
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::int64_t> dx(scene.bbox.x0, scene.bbox.x1);
    std::uniform_int_distribution<std::int64_t> dy(scene.bbox.y0, scene.bbox.y1);
    for (int i = 0; i < 100000; ++i) {
        const std::int64_t x = dx(rng), y = dy(rng);
        const auto hits = fc.search(x, y);
        ASSERT_FALSE(hits.empty());
        ASSERT_EQ(hits.front().node, tree.root);
        for (const auto& h : hits) {
            const auto& list = lines[static_cast<std::size_t>(h.node)];
            const auto expect = std::lower_bound(list.begin(), list.end(), y,
                                                 [](const CutlineEntry& e, std::int64_t v) { return e.key < v; }) -
                                list.begin();
            ASSERT_EQ(h.lower_bound, expect) << "probe (" << x << "," << y << ") node " << h.node;
        }
    }
}

TEST(Gateway, EmptySceneHasNoGateways) {
    const Scene empty{SceneMode::Polygonal, {-5, -5, 5, 5}, {}, {}};
    const auto index = preprocess(empty);
    const GatewaySet set = compute_gateways({0, 0}, index->gateway_context());
    EXPECT_TRUE(set.entries.empty());
    EXPECT_TRUE(set.bbox_hit);
}

TEST(Gateway, SceneABounds) {
    for (GraphMode mode : {GraphMode::GOld, GraphMode::GEnhanced}) {
        IndexOptions opts;
        opts.mode = mode;
        const auto index = preprocess(fixtures::scene_a(), opts);
        const GatewaySet set = compute_gateways({0, 3}, index->gateway_context());
        EXPECT_LE(set.v1_count, 8u);
        EXPECT_LE(set.entries.size(), 8u + 4u * 2u);
        EXPECT_FALSE(set.entries.empty());
    }
}

TEST(Gateway, SceneAVisibleCutline) {
    const auto index = preprocess(fixtures::scene_a());
    const GatewaySet set = compute_gateways({6, 3}, index->gateway_context());
    const std::int32_t vertex = index->graph().find(RPoint(Point{5, 2}));
    ASSERT_GE(vertex, 0);
    bool found = false;
    for (const auto& e : set.entries) found = found || e.node == vertex;
    EXPECT_TRUE(found);
}

TEST(Gateway, InteriorPointThrows) {
    const auto index = preprocess(fixtures::scene_a());
    try {
        compute_gateways({3, 3}, index->gateway_context());
        FAIL() << "expected an error";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::PointInsideObstacle);
    }
    EXPECT_THROW(compute_gateways({9, 0}, index->gateway_context()), Error);
}

TEST(TrivialPath, SceneAExamples) {
    const Visibility vis(fixtures::scene_a());
    const auto diag = detect_trivial_path({0, 0}, {6, 6}, vis);
    ASSERT_TRUE(diag.has_value());
    EXPECT_EQ(diag->length, Rational(12));
    EXPECT_EQ(polyline_length(diag->polyline), Rational(12));
    EXPECT_FALSE(detect_trivial_path({0, 3}, {6, 3}, vis).has_value());
    const auto same = detect_trivial_path({0, 0}, {0, 0}, vis);
    ASSERT_TRUE(same.has_value());
    EXPECT_EQ(same->length, Rational(0));
}

TEST(GatewayProperty, CascadeEqualsBinarySearchAndBounds) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const Scene scene = generate_scene(60, 5, SceneMode::Polygonal, seed);
        for (GraphMode mode : {GraphMode::GOld, GraphMode::GEnhanced}) {
            IndexOptions opts;
            opts.mode = mode;
            const auto index = preprocess(scene, opts);
            const auto& tree = index->tree();
            const std::size_t cap = mode == GraphMode::GOld ? 8u + 4u * static_cast<std::size_t>(tree.levels)
                                                            : 8u + 4u * static_cast<std::size_t>(tree.super_levels);
            const UnweightedOracle oracle(scene);
            for (const Point& q : random_free_points(scene, 40, seed * 31)) {
                const GatewaySet fast = compute_gateways(q, index->gateway_context(), GatewayStrategy::Cascade);
                const GatewaySet slow = compute_gateways(q, index->gateway_context(), GatewayStrategy::BinarySearch);
                ASSERT_TRUE(same_sets(fast, slow)) << "seed " << seed << " q " << to_string(q);
                ASSERT_LE(fast.entries.size(), cap) << "seed " << seed << " q " << to_string(q);
                ASSERT_LE(fast.v1_count, 8u);
                for (const auto& e : fast.entries) {
                    ASSERT_EQ(e.polyline.front(), RPoint(q));
                    ASSERT_EQ(e.polyline.back(), index->graph().nodes[static_cast<std::size_t>(e.node)].location);
                    ASSERT_LE(e.polyline.size(), 4u);
                    ASSERT_EQ(polyline_length(e.polyline), e.length);
                    if (e.part == GatewayEntry::Part::V2) ASSERT_TRUE(xy_monotone(e.polyline));
                    for (std::size_t k = 1; k < e.polyline.size(); ++k) {
                        const RPoint& a = e.polyline[k - 1];
                        const RPoint& b = e.polyline[k];
                        if (a.is_integral() && b.is_integral()) {
                            ASSERT_TRUE(oracle.segment_free(a.to_point(), b.to_point()))
                                << "seed " << seed << " q " << to_string(q) << " node " << e.node;
                        }
                    }
                }
            }
        }
    }
}

TEST(GatewayProperty, GatewaysSufficeForShortestPaths) {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        const Scene scene = generate_scene(40, 4, SceneMode::Polygonal, seed);
        IndexOptions opts;
        opts.policy = ApspPolicy::Full;
        const auto index = preprocess(scene, opts);
        const UnweightedOracle oracle(scene);
        const auto pts = random_free_points(scene, 30, seed * 7);
        for (std::size_t i = 0; i + 1 < pts.size(); i += 2) {
            const Point s = pts[i], t = pts[i + 1];
            if (detect_trivial_path(s, t, index->visibility())) continue;
            const GatewaySet gs = compute_gateways(s, index->gateway_context());
            const GatewaySet gt = compute_gateways(t, index->gateway_context());
            Rational best = Rational::infinite();
            for (const auto& a : gs.entries) {
                for (const auto& b : gt.entries) {
                    const Rational& mid = index->distance(a.node, b.node);
                    if (!mid.is_infinite()) best = std::min(best, a.length + mid + b.length);
                }
            }
            ASSERT_EQ(best, oracle.shortest_path(s, t).length) << "seed " << seed << " " << to_string(s) << " -> "
                                                                << to_string(t);
        }
    }
}
