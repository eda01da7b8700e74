#include "l1sp_cli/cli.hpp"

#include "l1sp/error.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace l1sp::cli {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_us(Clock::time_point since) {
    return std::chrono::duration<double, std::micro>(Clock::now() - since).count();
}

double percentile(std::vector<double> v, double q) {
    if (v.empty()) return 0;
    std::sort(v.begin(), v.end());
    const auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(v.size())));
    return v[std::min(v.size() - 1, rank == 0 ? 0 : rank - 1)];
}

}  // namespace

BenchRow bench_one(std::size_t n, std::size_t h, const std::string& mode, std::size_t queries, std::uint64_t seed,
                   ApspPolicy policy) {
    const bool weighted = mode == "weighted";
    IndexOptions options;
    options.policy = policy;
    if (!weighted) options.mode = parse_graph_mode(mode);
    const Scene scene = generate_scene(n, h, weighted ? SceneMode::RectilinearWeighted : SceneMode::Polygonal, seed);

    BenchRow row;
    row.n = scene.vertex_count();
    row.h = scene.obstacles.size();
    row.mode = weighted ? "weighted" : std::string(graph_mode_name(options.mode));
    if (policy == ApspPolicy::Full) row.mode += "_full";
    const auto start = Clock::now();
    const LoadedIndex index = build_index(scene, options);
    row.build_ms = elapsed_us(start) / 1000.0;
    row.nodes = index.graph().node_count();
    row.edges = index.graph().edge_count();

    const auto pts = random_free_points(scene, 2 * queries, seed + 1);
    std::vector<double> times;
    double gateways = 0;
    for (std::size_t k = 0; k + 1 < pts.size(); k += 2) {
        const auto t0 = Clock::now();
        const QueryResult r = index.query(pts[k], pts[k + 1], true);
        times.push_back(elapsed_us(t0));
        gateways += static_cast<double>(r.gateway_count);
    }
    row.median_query_us = percentile(times, 0.5);
    row.p99_query_us = percentile(times, 0.99);
    row.gateway_count_mean = times.empty() ? 0 : gateways / static_cast<double>(times.size());
    return row;
}

std::vector<BenchRow> run_bench(const BenchOptions& options, std::ostream* progress) {
    std::vector<BenchRow> rows;
    for (std::size_t n : options.ns) {
        for (const std::string& mode : options.modes) {
            rows.push_back(bench_one(n, options.h, mode, options.queries, options.seed, options.policy));
            if (progress != nullptr) *progress << bench_csv_row(rows.back()) << "\n";
        }
    }
    return rows;
}

std::string bench_csv_row(const BenchRow& row) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%zu,%zu,%s,%zu,%zu,%.3f,%.3f,%.3f,%.3f", row.n, row.h, row.mode.c_str(), row.nodes,
                  row.edges, row.build_ms, row.median_query_us, row.p99_query_us, row.gateway_count_mean);
    return buf;
}

}  // namespace l1sp::cli
