#include "l1sp_cli/cli.hpp"

#include "l1sp/error.hpp"
#include "l1sp/gateway.hpp"
#include "l1sp/oracle.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

namespace l1sp::cli {

namespace {

std::string describe(const QueryPair& p) { return to_string(p.s) + " -> " + to_string(p.t); }

Rational polyline_length(const std::vector<RPoint>& pts) {
    Rational total(0);
    for (std::size_t i = 1; i < pts.size(); ++i) total = total + l1_length(pts[i - 1], pts[i]);
    return total;
}

bool same_gateways(const GatewaySet& a, const GatewaySet& b) {
    if (a.entries.size() != b.entries.size()) return false;
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        if (a.entries[i].node != b.entries[i].node || a.entries[i].length != b.entries[i].length) return false;
    }
    return true;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Labelled {
    std::string label;
    std::unique_ptr<PreprocessedIndex> index;
};

std::vector<CheckFailure> check_polygonal(const Scene& scene, const std::vector<QueryPair>& pairs,
                                          std::size_t full_max_nodes, std::size_t* full_skipped) {
    std::vector<CheckFailure> failures;
    auto fail = [&](const QueryPair& p, const std::string& what) { failures.push_back({scene, p, what}); };
    const UnweightedOracle oracle(scene);
    std::vector<Labelled> indexes;
    for (GraphMode mode : {GraphMode::GOld, GraphMode::GEnhanced}) {
        IndexOptions opts;
        opts.mode = mode;
        indexes.push_back({std::string(graph_mode_name(mode)) + "/on_demand", preprocess(scene, opts)});
        if (indexes.back().index->graph().node_count() <= full_max_nodes) {
            opts.policy = ApspPolicy::Full;
            indexes.push_back({std::string(graph_mode_name(mode)) + "/full", preprocess(scene, opts)});
        } else if (full_skipped != nullptr) {
            ++*full_skipped;
        }
    }
    for (const QueryPair& p : pairs) {
        Rational expect;
        try {
            expect = oracle.shortest_path(p.s, p.t).length;
        } catch (const Error& e) {
            for (const Labelled& l : indexes) {
                try {
                    query(*l.index, p.s, p.t);
                    fail(p, l.label + " answered a query the oracle rejects (" + e.what() + ")");
                } catch (const Error& mine) {
                    if (mine.code() != e.code()) fail(p, l.label + " error " + mine.what() + " vs oracle " + e.what());
                }
            }
            continue;
        }
        for (const Labelled& l : indexes) {
            const QueryResult r = query(*l.index, p.s, p.t);
            if (r.length != expect) {
                fail(p, l.label + " length " + r.length.to_string() + " vs oracle " + expect.to_string());
            } else if (r.path.empty() || r.path.front() != RPoint(p.s) || r.path.back() != RPoint(p.t) ||
                       polyline_length(r.path) != r.length) {
                fail(p, l.label + " returned a path that does not realize its length");
            }
        }
        for (const Labelled& l : indexes) {
            if (l.index->options().policy != ApspPolicy::OnDemand) continue;
            for (const Point& q : {p.s, p.t}) {
                const GatewaySet a = compute_gateways(q, l.index->gateway_context(), GatewayStrategy::Cascade);
                const GatewaySet b = compute_gateways(q, l.index->gateway_context(), GatewayStrategy::BinarySearch);
                if (!same_gateways(a, b)) fail(p, l.label + " cascade and binary-search gateways differ at " + to_string(q));
            }
        }
    }
    return failures;
}

std::vector<CheckFailure> check_weighted(const Scene& scene, const std::vector<QueryPair>& pairs,
                                         std::size_t full_max_nodes, std::size_t* full_skipped) {
    std::vector<CheckFailure> failures;
    auto fail = [&](const QueryPair& p, const std::string& what) { failures.push_back({scene, p, what}); };
    const WeightedOracle oracle(scene);
    const auto index = preprocess_weighted(scene);
    std::unique_ptr<WeightedIndex> full;
    if (index->graph().node_count() <= full_max_nodes) {
        IndexOptions opts;
        opts.policy = ApspPolicy::Full;
        full = preprocess_weighted(scene, opts);
    } else if (full_skipped != nullptr) {
        ++*full_skipped;
    }
    std::set<Point> v;
    for (const WeightedPoint& w : index->v_set().points) v.insert(w.point);
    for (const QueryPair& p : pairs) {
        const OraclePath expect = oracle.shortest_path(p.s, p.t);
        const QueryResult r = weighted_query(*index, p.s, p.t);
        if (r.length < expect.length) {
            fail(p, "weighted length " + r.length.to_string() + " below oracle " + expect.length.to_string());
            continue;
        }
        bool through_v = false;
        for (const RPoint& q : expect.polyline) through_v = through_v || (q.is_integral() && v.count(q.to_point()));
        if (through_v && r.length != expect.length) {
            fail(p, "weighted length " + r.length.to_string() + " misses oracle " + expect.length.to_string() +
                        " on a path through the node set");
        }
        Rational priced(0);
        for (std::size_t k = 1; k < r.path.size(); ++k) priced = priced + oracle.segment_cost(r.path[k - 1], r.path[k]);
        if (r.path.empty() || r.path.front() != RPoint(p.s) || r.path.back() != RPoint(p.t) || priced != r.length) {
            fail(p, "weighted path re-prices to " + priced.to_string() + " instead of " + r.length.to_string());
        }
        if (full && weighted_query(*full, p.s, p.t).length != r.length) fail(p, "weighted FULL and ON_DEMAND differ");
        for (const Point& q : {p.s, p.t}) {
            if (!same_gateways(weighted_gateways(q, *index, GatewayStrategy::Cascade),
                               weighted_gateways(q, *index, GatewayStrategy::BinarySearch))) {
                fail(p, "weighted cascade and binary-search gateways differ at " + to_string(q));
            }
        }
    }
    return failures;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t i) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (i + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

std::vector<CheckFailure> check_scene(const Scene& scene, const std::vector<QueryPair>& pairs,
                                      std::size_t full_max_nodes, std::size_t* full_skipped) {
    return scene.weighted() ? check_weighted(scene, pairs, full_max_nodes, full_skipped)
                            : check_polygonal(scene, pairs, full_max_nodes, full_skipped);
}

Scene minimize_failure(const Scene& scene, const QueryPair& pair,
                       const std::function<bool(const Scene&)>& still_fails) {
    Scene current = scene;
    for (std::size_t i = current.obstacles.size(); i-- > 0;) {
        if (current.obstacles.size() <= 1) break;
        Scene trial = current;
        trial.obstacles.erase(trial.obstacles.begin() + static_cast<std::ptrdiff_t>(i));
        if (trial.weighted()) trial.weights.erase(trial.weights.begin() + static_cast<std::ptrdiff_t>(i));
        if (!is_free_point(trial, pair.s) || !is_free_point(trial, pair.t)) continue;
        try {
            validate_scene(trial);
            if (still_fails(trial)) current = std::move(trial);
        } catch (const Error&) {
            // Removing an obstacle can break general position; keep it.
        }
    }
    return current;
}

std::pair<std::filesystem::path, std::filesystem::path> write_reproducer(const std::filesystem::path& dir,
                                                                         const CheckFailure& failure) {
    std::filesystem::create_directories(dir);
    const auto scene_path = dir / "repro_scene.json";
    const auto pairs_path = dir / "repro_queries.json";
    std::ofstream(scene_path) << save_scene(failure.scene);
    std::ofstream(pairs_path) << save_query_batch({failure.pair});
    return {scene_path, pairs_path};
}

CheckReport run_check(const CheckOptions& options, std::ostream& log) {
    CheckReport report;
    auto run_one = [&](const Scene& scene, const std::vector<QueryPair>& pairs) {
        auto failures = check_scene(scene, pairs, options.full_max_nodes, &report.full_skipped);
        ++report.scenes;
        report.pairs += pairs.size();
        for (auto& f : failures) report.failures.push_back(std::move(f));
    };

    if (options.scene_file) {
        if (!options.pairs_file) throw Error(ErrorCode::ParseError, "--scene needs --pairs");
        run_one(load_scene(read_file(*options.scene_file)), load_query_batch(read_file(*options.pairs_file)));
    } else {
        if (options.n_min < 3 || options.n_min > options.n_max) {
            throw Error(ErrorCode::InfeasibleParameters, "need 3 <= n-min <= n-max");
        }
        for (std::size_t i = 0; i < options.scenes; ++i) {
            const std::uint64_t s = mix_seed(options.seed, i);
            std::mt19937_64 rng(s);
            const std::size_t n = std::uniform_int_distribution<std::size_t>(options.n_min, options.n_max)(rng);
            const std::size_t h =
                std::uniform_int_distribution<std::size_t>(1, std::max<std::size_t>(1, std::min(options.h_max, n / 3)))(rng);
            const Scene scene = generate_scene(n, h, SceneMode::Polygonal, s);
            const auto pts = random_free_points(scene, 2 * options.queries, s + 1);
            std::vector<QueryPair> pairs;
            for (std::size_t k = 0; k + 1 < pts.size(); k += 2) pairs.push_back({pts[k], pts[k + 1]});
            run_one(scene, pairs);
            if ((i + 1) % 25 == 0) log << "checked " << (i + 1) << "/" << options.scenes << " scenes\n";
        }
        const std::size_t wn_min = std::max<std::size_t>(options.n_min, 4);
        for (std::size_t i = 0; i < options.weighted_scenes; ++i) {
            const std::uint64_t s = mix_seed(options.seed ^ 0x5745494748544544ULL, i);
            std::mt19937_64 rng(s);
            const std::size_t h_cap = std::max<std::size_t>(1, std::min(options.h_max, options.n_max / 4));
            const std::size_t h = std::uniform_int_distribution<std::size_t>(1, h_cap)(rng);
            std::size_t n = std::uniform_int_distribution<std::size_t>(std::max(wn_min, 4 * h),
                                                                       std::max(options.n_max, 4 * h))(rng);
            n -= n % 2;
            const Scene scene = generate_scene(n, h, SceneMode::RectilinearWeighted, s);
            const auto pts = random_free_points(scene, 2 * options.queries, s + 1);
            std::vector<QueryPair> pairs;
            for (std::size_t k = 0; k + 1 < pts.size(); k += 2) pairs.push_back({pts[k], pts[k + 1]});
            run_one(scene, pairs);
        }
    }

    log << "scenes " << report.scenes << ", pairs " << report.pairs << ", FULL skipped " << report.full_skipped
        << ", mismatches " << report.failures.size() << "\n";
    for (std::size_t i = 0; i < report.failures.size() && i < 20; ++i) {
        const CheckFailure& f = report.failures[i];
        log << "  n=" << f.scene.vertex_count() << " h=" << f.scene.obstacles.size() << " " << describe(f.pair) << ": "
            << f.what << "\n";
    }
    if (!report.failures.empty()) {
        const auto smallest = std::min_element(report.failures.begin(), report.failures.end(),
                                               [](const CheckFailure& a, const CheckFailure& b) {
                                                   return a.scene.vertex_count() < b.scene.vertex_count();
                                               });
        CheckFailure minimal = *smallest;
        minimal.scene = minimize_failure(minimal.scene, minimal.pair, [&](const Scene& trial) {
            return !check_scene(trial, {minimal.pair}, options.full_max_nodes).empty();
        });
        const auto again = check_scene(minimal.scene, {minimal.pair}, options.full_max_nodes);
        if (!again.empty()) minimal.what = again.front().what;
        const auto [scene_path, pairs_path] = write_reproducer(options.out_dir, minimal);
        log << "mismatch: " << describe(minimal.pair) << ": " << minimal.what << "\n";
        log << "reproducer: " << scene_path.string() << " " << pairs_path.string() << "\n";
        log << "replay with: check --scene " << scene_path.string() << " --pairs " << pairs_path.string() << "\n";
    }
    return report;
}

}  // namespace l1sp::cli
