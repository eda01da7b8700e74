#include "l1sp/gateway.hpp"
#include "l1sp/oracle.hpp"
#include "l1sp/query.hpp"
#include "l1sp/scene.hpp"
#include "l1sp/weighted.hpp"
#include "l1sp_cli/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace l1sp;

namespace {

// Pinned corpus sizes and tolerances.
constexpr std::uint64_t kSeed = 20240611;
constexpr std::size_t kPolyScenes = 300;
constexpr std::size_t kPolyNMin = 8;
constexpr std::size_t kPolyNMax = 120;
constexpr std::size_t kHMax = 8;
constexpr std::size_t kPolyPairs = 50;
constexpr std::size_t kVertexScenes = 50;
constexpr std::size_t kVertexNMax = 40;
constexpr std::size_t kWeightedScenes = 200;
constexpr std::size_t kWeightedPairs = 30;
constexpr std::size_t kWeightedNMin = 8;
constexpr std::size_t kWeightedNMax = 120;
constexpr double kSizeConstant = 16.0;
constexpr std::size_t kLargeSceneN[] = {256, 512};
constexpr std::size_t kLargeScenesPerN = 3;
constexpr std::size_t kLargePairs = 100;
constexpr std::size_t kBenchNs[] = {256, 512, 1024, 2048, 4096, 8192};
constexpr std::size_t kBenchH = 8;
constexpr std::size_t kBenchQueries = 200;
constexpr std::size_t kFullBenchNs[] = {64, 128, 256, 512};  // FULL tables are quadratic in nodes
constexpr double kSublinearSlope = 1.0;  // log-log slope of median latency vs n must stay below this

struct Outcome {
    int id;
    std::string name;
    bool gating;
    bool pass;
    std::string detail;
};

std::vector<Outcome> outcomes;

void report(int id, const std::string& name, bool gating, bool pass, const std::string& detail) {
    outcomes.push_back({id, name, gating, pass, detail});
    std::cerr << "criterion " << id << " done" << std::endl;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t i) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (i + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::vector<QueryPair> make_pairs(const Scene& scene, std::size_t count, std::uint64_t seed) {
    const auto pts = random_free_points(scene, 2 * count, seed);
    std::vector<QueryPair> pairs;
    for (std::size_t k = 0; k + 1 < pts.size(); k += 2) pairs.push_back({pts[k], pts[k + 1]});
    return pairs;
}

struct CorpusScene {
    Scene scene;
    std::vector<QueryPair> pairs;
};

std::vector<CorpusScene> polygonal_corpus(std::size_t scenes, std::size_t n_min, std::size_t n_max,
                                          std::size_t pairs, std::uint64_t seed) {
    std::vector<CorpusScene> out;
    for (std::size_t i = 0; i < scenes; ++i) {
        const std::uint64_t s = mix_seed(seed, i);
        std::mt19937_64 rng(s);
        const std::size_t n = std::uniform_int_distribution<std::size_t>(n_min, n_max)(rng);
        const std::size_t h = std::uniform_int_distribution<std::size_t>(1, std::min(kHMax, n / 3))(rng);
        Scene scene = generate_scene(n, h, SceneMode::Polygonal, s);
        auto qp = make_pairs(scene, pairs, s + 1);
        out.push_back({std::move(scene), std::move(qp)});
    }
    return out;
}

std::vector<CorpusScene> weighted_corpus(std::uint64_t seed) {
    std::vector<CorpusScene> out;
    for (std::size_t i = 0; i < kWeightedScenes; ++i) {
        const std::uint64_t s = mix_seed(seed, i);
        std::mt19937_64 rng(s);
        const std::size_t h = std::uniform_int_distribution<std::size_t>(1, kHMax)(rng);
        std::size_t n = std::uniform_int_distribution<std::size_t>(std::max(kWeightedNMin, 4 * h), kWeightedNMax)(rng);
        n -= n % 2;
        Scene scene = generate_scene(n, h, SceneMode::RectilinearWeighted, s);
        auto qp = make_pairs(scene, kWeightedPairs, s + 1);
        out.push_back({std::move(scene), std::move(qp)});
    }
    return out;
}

std::string pair_text(const QueryPair& p) { return to_string(p.s) + " -> " + to_string(p.t); }

bool same_gateways(const GatewaySet& a, const GatewaySet& b) {
    if (a.entries.size() != b.entries.size()) return false;
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        if (a.entries[i].node != b.entries[i].node || a.entries[i].length != b.entries[i].length) return false;
    }
    return true;
}

std::string fmt_double(double v, int digits = 2) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

// Criteria 1, 3, 4 and 5 share the polygonal corpus.
void polygonal_criteria() {
    const auto corpus = polygonal_corpus(kPolyScenes, kPolyNMin, kPolyNMax, kPolyPairs, kSeed);
    std::size_t pairs = 0;
    std::size_t exact_bad = 0;
    std::size_t mode_bad = 0;
    std::size_t policy_bad = 0;
    std::size_t strategy_bad = 0;
    std::size_t bound_bad = 0;
    std::size_t size_bad = 0;
    double worst_size_ratio = 0;
    std::string first_exact, first_equiv, first_bound, first_size;

    for (const CorpusScene& c : corpus) {
        const UnweightedOracle oracle(c.scene);
        std::unique_ptr<PreprocessedIndex> idx[2][2];  // [mode][policy]
        for (int m = 0; m < 2; ++m) {
            for (int p = 0; p < 2; ++p) {
                IndexOptions opts;
                opts.mode = m == 0 ? GraphMode::GOld : GraphMode::GEnhanced;
                opts.policy = p == 0 ? ApspPolicy::OnDemand : ApspPolicy::Full;
                idx[m][p] = preprocess(c.scene, opts);
            }
        }

        const std::size_t n = c.scene.vertex_count();
        const double L = std::ceil(std::log2(static_cast<double>(std::max<std::size_t>(n, 2))));
        const double size_cap = kSizeConstant * static_cast<double>(n) * std::sqrt(L) * std::exp2(std::ceil(std::sqrt(L)));
        const double nodes = static_cast<double>(idx[1][0]->graph().node_count());
        worst_size_ratio = std::max(worst_size_ratio, nodes / size_cap);
        if (nodes > size_cap) {
            ++size_bad;
            if (first_size.empty()) first_size = "n=" + std::to_string(n) + " nodes=" + fmt_double(nodes, 0);
        }

        for (const QueryPair& q : c.pairs) {
            ++pairs;
            const Rational expect = oracle.shortest_path(q.s, q.t).length;
            const Rational got = query(*idx[1][0], q.s, q.t, false).length;
            if (got != expect) {
                ++exact_bad;
                if (first_exact.empty()) first_exact = pair_text(q) + " got " + got.to_string() + " want " + expect.to_string();
            }
            const Rational old_od = query(*idx[0][0], q.s, q.t, false).length;
            if (old_od != got) {
                ++mode_bad;
                if (first_equiv.empty()) first_equiv = "g_old/g_e at " + pair_text(q);
            }
            for (int m = 0; m < 2; ++m) {
                const Rational od = m == 0 ? old_od : got;
                if (query(*idx[m][1], q.s, q.t, false).length != od) {
                    ++policy_bad;
                    if (first_equiv.empty()) first_equiv = "full/on_demand at " + pair_text(q);
                }
            }
            for (const Point& pt : {q.s, q.t}) {
                for (int m = 0; m < 2; ++m) {
                    const PreprocessedIndex& index = *idx[m][0];
                    const GatewaySet cas = compute_gateways(pt, index.gateway_context(), GatewayStrategy::Cascade);
                    const GatewaySet bin = compute_gateways(pt, index.gateway_context(), GatewayStrategy::BinarySearch);
                    if (!same_gateways(cas, bin)) {
                        ++strategy_bad;
                        if (first_equiv.empty()) first_equiv = "cascade/binary at " + to_string(pt);
                    }
                    const CutLineTree& tree = index.tree();
                    const std::size_t cap = 8 + 4 * static_cast<std::size_t>(m == 0 ? tree.levels : tree.super_levels);
                    if (cas.entries.size() > cap) {
                        ++bound_bad;
                        if (first_bound.empty()) {
                            first_bound = std::string(m == 0 ? "g_old" : "g_e") + " at " + to_string(pt) + ": " +
                                          std::to_string(cas.entries.size()) + " > " + std::to_string(cap);
                        }
                    }
                }
            }
        }
    }

    report(1, "unweighted exactness", true, exact_bad == 0,
           std::to_string(corpus.size()) + " scenes, " + std::to_string(pairs) + " pairs, " +
               std::to_string(exact_bad) + " mismatches vs oracle" + (first_exact.empty() ? "" : "; first: " + first_exact));
    report(3, "mode equivalence", true, mode_bad + policy_bad + strategy_bad == 0,
           std::to_string(pairs) + " pairs; g_old/g_e differ " + std::to_string(mode_bad) + ", full/on_demand differ " +
               std::to_string(policy_bad) + ", cascade/binary gateway sets differ " + std::to_string(strategy_bad) +
               (first_equiv.empty() ? "" : "; first: " + first_equiv));

    // Gateway-pair comparison on larger scenes, reported only.
    std::size_t large_scenes = 0;
    std::size_t large_ok = 0;
    double ratio_sum = 0;
    std::size_t large_bound_bad = 0;
    for (std::size_t n : kLargeSceneN) {
        for (std::size_t i = 0; i < kLargeScenesPerN; ++i) {
            const std::uint64_t s = mix_seed(kSeed ^ n, i);
            const Scene scene = generate_scene(n, kHMax, SceneMode::Polygonal, s);
            const auto qp = make_pairs(scene, kLargePairs, s + 1);
            double pair_count[2] = {0, 0};
            for (int m = 0; m < 2; ++m) {
                IndexOptions opts;
                opts.mode = m == 0 ? GraphMode::GOld : GraphMode::GEnhanced;
                const auto index = preprocess(scene, opts);
                const CutLineTree& tree = index->tree();
                const std::size_t cap = 8 + 4 * static_cast<std::size_t>(m == 0 ? tree.levels : tree.super_levels);
                for (const QueryPair& q : qp) {
                    const GatewaySet a = compute_gateways(q.s, index->gateway_context());
                    const GatewaySet b = compute_gateways(q.t, index->gateway_context());
                    if (a.entries.size() > cap || b.entries.size() > cap) ++large_bound_bad;
                    pair_count[m] += static_cast<double>(a.entries.size() * b.entries.size());
                }
            }
            ++large_scenes;
            if (pair_count[1] <= pair_count[0]) ++large_ok;
            ratio_sum += pair_count[1] / std::max(1.0, pair_count[0]);
        }
    }
    bound_bad += large_bound_bad;
    report(4, "gateway bounds", true, bound_bad == 0,
           std::to_string(bound_bad) + " query points over the per-mode bound" +
               (first_bound.empty() ? "" : " (first: " + first_bound + ")") + "; n>=256: g_e pair count <= g_old on " +
               std::to_string(large_ok) + "/" + std::to_string(large_scenes) + " scenes, mean g_e/g_old ratio " +
               fmt_double(ratio_sum / static_cast<double>(std::max<std::size_t>(1, large_scenes)), 3));
    report(5, "graph size", true, size_bad == 0,
           std::to_string(size_bad) + " scenes over 16*n*sqrt(L)*2^ceil(sqrt(L)); worst nodes/cap " +
               fmt_double(worst_size_ratio, 4) + (first_size.empty() ? "" : "; first: " + first_size));
}

bool segment_avoids_interiors(const Scene& scene, const RPoint& a, const RPoint& b) {
    constexpr int kSamples = 256;
    for (int k = 0; k <= kSamples; ++k) {
        const Rational f = Rational::from_fraction(k, kSamples);
        const RPoint p(a.x + (b.x - a.x) * f, a.y + (b.y - a.y) * f);
        for (const Polygon& poly : scene.obstacles) {
            if (point_in_polygon(p, poly) == PointLocation::Interior) return false;
        }
    }
    return true;
}

Scene scene_a() {
    Scene s;
    s.mode = SceneMode::Polygonal;
    s.bbox = {-1, -1, 7, 7};
    s.obstacles.push_back(Polygon{{{2, 1}, {5, 2}, {4, 6}, {1, 5}}});
    return s;
}

Scene scene_w(const Rational& weight) {
    Scene s;
    s.mode = SceneMode::RectilinearWeighted;
    s.bbox = {-1, -1, 5, 5};
    s.obstacles.push_back(Polygon{{{1, 1}, {3, 1}, {3, 3}, {1, 3}}});
    s.weights.push_back(weight);
    return s;
}

// The 3-bend path (0,3)->(2,1)->(5,2)->(6,3) is accepted up to xy-monotone
// re-bracing: it must visit (2,1) then (5,2), and each of the three legs must
// be xy-monotone (its length equals the L1 distance of its ends).
bool is_three_bend_path(const Scene& scene, const std::vector<RPoint>& path, const Point& s, const Point& t,
                        const Rational& length) {
    if (path.empty() || path.front() != RPoint(s) || path.back() != RPoint(t)) return false;
    Rational total(0);
    for (std::size_t k = 1; k < path.size(); ++k) {
        if (!segment_avoids_interiors(scene, path[k - 1], path[k])) return false;
        total = total + l1_length(path[k - 1], path[k]);
    }
    if (total != length) return false;
    const std::vector<RPoint> anchors{RPoint(s), RPoint(Point{2, 1}), RPoint(Point{5, 2}), RPoint(t)};
    std::size_t at = 0;
    for (std::size_t a = 1; a < anchors.size(); ++a) {
        Rational leg(0);
        std::size_t k = at;
        while (k < path.size() && path[k] != anchors[a]) {
            if (k + 1 >= path.size()) return false;
            leg = leg + l1_length(path[k], path[k + 1]);
            ++k;
        }
        if (k == path.size() || leg != l1_length(anchors[a - 1], anchors[a])) return false;
        at = k;
    }
    return true;
}

void fixture_criteria() {
    const Scene a = scene_a();
    bool ok = true;
    std::string detail;
    for (GraphMode mode : {GraphMode::GOld, GraphMode::GEnhanced}) {
        for (ApspPolicy policy : {ApspPolicy::OnDemand, ApspPolicy::Full}) {
            IndexOptions opts;
            opts.mode = mode;
            opts.policy = policy;
            const auto index = preprocess(a, opts);
            const QueryResult r1 = query(*index, {0, 3}, {6, 3});
            const QueryResult r2 = query(*index, {0, 0}, {6, 6});
            const bool path_ok = is_three_bend_path(a, r1.path, {0, 3}, {6, 3}, r1.length);
            const bool this_ok =
                r1.length == Rational(10) && path_ok && r2.length == Rational(12) && r2.kind == QueryResult::Kind::Trivial;
            ok = ok && this_ok;
            if (!this_ok && detail.empty()) {
                detail = std::string(graph_mode_name(mode)) + "/" + std::string(apsp_policy_name(policy)) + ": " +
                         r1.length.to_string() + (path_ok ? "" : " (bad path)") + ", " + r2.length.to_string() + " " +
                         std::string(query_kind_name(r2.kind));
            }
        }
    }
    report(2, "fixture SCENE-A", true, ok,
           ok ? "(0,3)->(6,3) = 10 through (2,1),(5,2); (0,0)->(6,6) = 12 trivial; all modes and policies"
              : "first failure " + detail);

    bool w_ok = true;
    std::string w_detail;
    for (const auto& [w, want] : {std::pair{Rational::from_fraction(1, 2), Rational(5)}, std::pair{Rational(2), Rational(6)}}) {
        for (ApspPolicy policy : {ApspPolicy::OnDemand, ApspPolicy::Full}) {
            IndexOptions opts;
            opts.policy = policy;
            const auto index = preprocess_weighted(scene_w(w), opts);
            const Rational got = weighted_query(*index, {0, 2}, {4, 2}).length;
            w_detail += (w_detail.empty() ? "" : ", ") + std::string("w=") + w.to_string() + "/" +
                        std::string(apsp_policy_name(policy)) + " -> " + got.to_string();
            w_ok = w_ok && got == want;
        }
    }
    report(8, "fixture SCENE-W", true, w_ok, w_detail);
}

void vertex_pair_criterion() {
    const auto corpus = polygonal_corpus(kVertexScenes, kPolyNMin, kVertexNMax, 0, kSeed ^ 0x76657274ULL);
    std::size_t pairs = 0;
    std::size_t bad = 0;
    std::string first;
    for (const CorpusScene& c : corpus) {
        const UnweightedOracle oracle(c.scene);
        std::unique_ptr<PreprocessedIndex> idx[2];
        for (int m = 0; m < 2; ++m) {
            IndexOptions opts;
            opts.mode = m == 0 ? GraphMode::GOld : GraphMode::GEnhanced;
            idx[m] = preprocess(c.scene, opts);
        }
        const std::size_t nv = oracle.vertex_count();
        std::vector<std::int32_t> node[2];
        for (int m = 0; m < 2; ++m) {
            for (std::size_t i = 0; i < nv; ++i) node[m].push_back(idx[m]->graph().find(RPoint(oracle.vertex(i))));
        }
        for (std::size_t i = 0; i < nv; ++i) {
            const std::vector<Int128> expect = oracle.vertex_distances(i);
            ShortestPathTree tree[2];
            for (int m = 0; m < 2; ++m) {
                if (node[m][i] < 0) {
                    ++bad;
                    if (first.empty()) first = "vertex " + to_string(oracle.vertex(i)) + " missing from graph";
                    continue;
                }
                tree[m] = dijkstra(idx[m]->graph(), node[m][i]);
            }
            if (tree[0].dist.empty() || tree[1].dist.empty()) continue;
            for (std::size_t j = 0; j < nv; ++j) {
                ++pairs;
                const Rational want(expect[j]);
                const Rational d_old = tree[0].dist[static_cast<std::size_t>(node[0][j])];
                const Rational d_e = tree[1].dist[static_cast<std::size_t>(node[1][j])];
                if (d_old != want || d_e != want) {
                    ++bad;
                    if (first.empty()) {
                        first = to_string(oracle.vertex(i)) + " -> " + to_string(oracle.vertex(j)) + ": g_old " +
                                d_old.to_string() + " g_e " + d_e.to_string() + " oracle " + want.to_string();
                    }
                }
            }
        }
    }
    report(6, "vertex-pair equivalence", true, bad == 0,
           std::to_string(corpus.size()) + " scenes, " + std::to_string(pairs) + " ordered vertex pairs, " +
               std::to_string(bad) + " disagreements" + (first.empty() ? "" : "; first: " + first));
}

Scene with_all_weights(Scene scene, const Rational& w) {
    for (Rational& x : scene.weights) x = w;
    return scene;
}

void weighted_criteria() {
    const auto corpus = weighted_corpus(kSeed ^ 0x5745494748544544ULL);
    std::size_t pairs = 0;
    std::size_t unsound = 0;
    std::size_t incomplete = 0;
    std::size_t through_v = 0;
    std::size_t mismatches = 0;
    std::size_t zero_bad = 0;
    std::size_t inf_bad = 0;
    std::size_t unstable = 0;
    std::string first, first_limit, first_unstable;

    for (const CorpusScene& c : corpus) {
        const WeightedOracle oracle(c.scene);
        const auto index = preprocess_weighted(c.scene);
        std::set<Point> v;
        for (const WeightedPoint& w : index->v_set().points) v.insert(w.point);

        const Scene zero_scene = with_all_weights(c.scene, Rational(0));
        const Scene inf_scene = with_all_weights(c.scene, Rational::infinite());
        const auto zero_index = preprocess_weighted(zero_scene);
        const auto inf_index = preprocess_weighted(inf_scene);
        const auto plain_index = preprocess(inf_scene);

        for (const QueryPair& q : c.pairs) {
            ++pairs;
            const OraclePath expect = oracle.shortest_path(q.s, q.t);
            const Rational got = weighted_query(*index, q.s, q.t, false).length;
            bool via_v = false;
            for (const RPoint& p : expect.polyline) via_v = via_v || (p.is_integral() && v.count(p.to_point()) > 0);
            if (via_v) ++through_v;
            if (got != expect.length) ++mismatches;
            if (got < expect.length) {
                ++unsound;
                if (first.empty()) first = "below oracle at " + pair_text(q);
            } else if (via_v && got != expect.length) {
                ++incomplete;
                if (first.empty()) first = "misses oracle through node set at " + pair_text(q);
            }

            if (oracle.shortest_path(q.s, q.t, true).length != expect.length) {
                ++unstable;
                if (first_unstable.empty()) first_unstable = pair_text(q);
            }

            if (weighted_query(*zero_index, q.s, q.t, false).length != l1_length(RPoint(q.s), RPoint(q.t))) {
                ++zero_bad;
                if (first_limit.empty()) first_limit = "zero weights at " + pair_text(q);
            }
            if (weighted_query(*inf_index, q.s, q.t, false).length != query(*plain_index, q.s, q.t, false).length) {
                ++inf_bad;
                if (first_limit.empty()) first_limit = "infinite weights at " + pair_text(q);
            }
        }
    }

    const double rate = static_cast<double>(mismatches) / static_cast<double>(std::max<std::size_t>(1, pairs));
    report(7, "weighted soundness and conditional completeness", true,
           unsound + incomplete + zero_bad + inf_bad == 0,
           std::to_string(corpus.size()) + " scenes, " + std::to_string(pairs) + " pairs; below oracle " +
               std::to_string(unsound) + ", missed on node-set paths " + std::to_string(incomplete) + " of " +
               std::to_string(through_v) + "; unconditional mismatch rate " + fmt_double(100.0 * rate, 3) + "% (" +
               std::to_string(mismatches) + "); zero-weight limit failures " + std::to_string(zero_bad) +
               ", infinite-weight limit failures " + std::to_string(inf_bad) +
               (first.empty() && first_limit.empty() ? "" : "; first: " + (first.empty() ? first_limit : first)));
    report(9, "oracle refinement stability", true, unstable == 0,
           std::to_string(pairs) + " weighted pairs, " + std::to_string(unstable) + " changed under grid refinement" +
               (first_unstable.empty() ? "" : "; first: " + first_unstable));
}

double slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

void performance_criterion(const std::string& csv_path) {
    std::ofstream csv(csv_path);
    csv << cli::kBenchHeader << "\n";
    std::string detail;
    bool pass = true;
    for (const std::string mode : {"g_old", "g_e"}) {
        std::vector<double> xs, ys;
        for (std::size_t n : kBenchNs) {
            const cli::BenchRow row = cli::bench_one(n, kBenchH, mode, kBenchQueries, 1);
            csv << cli::bench_csv_row(row) << "\n";
            xs.push_back(std::log2(static_cast<double>(row.n)));
            ys.push_back(std::log2(std::max(1e-3, row.median_query_us)));
        }
        const double sl = slope(xs, ys);
        pass = pass && sl < kSublinearSlope;
        detail += (detail.empty() ? "" : ", ") + mode + " median-latency log-log slope " + fmt_double(sl, 3) +
                  " (" + fmt_double(std::exp2(ys.front()), 1) + "us at n=" + std::to_string(kBenchNs[0]) + ", " +
                  fmt_double(std::exp2(ys.back()), 1) + "us at n=" + std::to_string(kBenchNs[std::size(kBenchNs) - 1]) +
                  ")";
    }
    // FULL-policy latency where its table fits in memory; supporting data only.
    std::string full_detail;
    for (const std::string mode : {"g_old", "g_e"}) {
        std::vector<double> xs, ys;
        for (std::size_t n : kFullBenchNs) {
            const cli::BenchRow row = cli::bench_one(n, kBenchH, mode, kBenchQueries, 1, ApspPolicy::Full);
            csv << cli::bench_csv_row(row) << "\n";
            xs.push_back(std::log2(static_cast<double>(row.n)));
            ys.push_back(std::log2(std::max(1e-3, row.median_query_us)));
        }
        full_detail += (full_detail.empty() ? "" : ", ") + mode + " " + fmt_double(slope(xs, ys), 3);
    }
    report(10, "performance report", false, pass,
           "on_demand " + detail + "; full-policy slope for n=64..512 (not asserted): " + full_detail + "; csv " +
               csv_path);
}

}  // namespace

int main(int argc, char** argv) {
    const std::string csv_path = argc > 1 ? argv[1] : "acceptance_bench.csv";
    const auto start = std::chrono::steady_clock::now();
    try {
        fixture_criteria();
        polygonal_criteria();
        vertex_pair_criterion();
        weighted_criteria();
        performance_criterion(csv_path);
    } catch (const std::exception& e) {
        std::cout << "FAIL acceptance aborted: " << e.what() << std::endl;
        return 1;
    }
    std::sort(outcomes.begin(), outcomes.end(), [](const Outcome& a, const Outcome& b) { return a.id < b.id; });
    for (const Outcome& o : outcomes) {
        std::cout << (o.pass ? "PASS" : "FAIL") << " " << o.id << " " << o.name << (o.gating ? "" : " (non-gating)")
                  << ": " << o.detail << std::endl;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::size_t gating_failed = 0;
    for (const Outcome& o : outcomes) gating_failed += o.gating && !o.pass ? 1 : 0;
    std::cout << "acceptance: " << outcomes.size() << " criteria, " << gating_failed << " gating failures, "
              << fmt_double(secs, 1) << " s" << std::endl;
    return gating_failed == 0 ? 0 : 1;
}
