#include "l1sp/query.hpp"

#include "l1sp/error.hpp"

#include "gateway_search.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace l1sp {

std::string_view graph_mode_name(GraphMode mode) { return mode == GraphMode::GOld ? "g_old" : "g_e"; }

std::string_view apsp_policy_name(ApspPolicy policy) { return policy == ApspPolicy::Full ? "full" : "on_demand"; }

GraphMode parse_graph_mode(std::string_view text) {
    if (text == "g_old" || text == "G_OLD" || text == "old") return GraphMode::GOld;
    if (text == "g_e" || text == "G_E" || text == "G_ENHANCED" || text == "enhanced") return GraphMode::GEnhanced;
    throw Error(ErrorCode::ParseError, "unknown graph mode '" + std::string(text) + "'");
}

ApspPolicy parse_apsp_policy(std::string_view text) {
    if (text == "full" || text == "FULL") return ApspPolicy::Full;
    if (text == "on_demand" || text == "ON_DEMAND" || text == "on-demand") return ApspPolicy::OnDemand;
    throw Error(ErrorCode::ParseError, "unknown APSP policy '" + std::string(text) + "'");
}

std::string_view query_kind_name(QueryResult::Kind kind) {
    return kind == QueryResult::Kind::Trivial ? "trivial" : "via_gateways";
}


ShortestPathTree dijkstra(const PathGraph& graph, std::int32_t source) {
    ShortestPathTree tree;
    tree.dist.assign(graph.node_count(), Rational::infinite());
    tree.pred.assign(graph.node_count(), -1);
    detail::MinHeap heap;
    tree.dist[static_cast<std::size_t>(source)] = Rational(0);
    heap.emplace(Rational(0), source);
    while (!heap.empty()) {
        const auto [d, u] = heap.top();
        heap.pop();
        if (d != tree.dist[static_cast<std::size_t>(u)]) continue;
        for (const GraphEdge& e : graph.adjacency[static_cast<std::size_t>(u)]) {
            const Rational nd = d + e.length;
            auto& dv = tree.dist[static_cast<std::size_t>(e.to)];
            auto& pv = tree.pred[static_cast<std::size_t>(e.to)];
            if (nd < dv || (nd == dv && u < pv)) {
                const bool improved = nd < dv;
                dv = nd;
                pv = u;
                if (improved) heap.emplace(nd, e.to);
            }
        }
    }
    return tree;
}

std::uint64_t full_table_bytes(std::size_t nodes) {
    const auto n = static_cast<std::uint64_t>(nodes);
    return n * n * (sizeof(Rational) + sizeof(std::int32_t));
}

namespace detail {

void fill_full_table(const PathGraph& graph, std::uint64_t budget, std::vector<Rational>& dist,
                     std::vector<std::int32_t>& pred) {
    const std::size_t n = graph.node_count();
    if (full_table_bytes(n) > budget) {
        throw Error(ErrorCode::IndexTooLarge, "FULL table for " + std::to_string(n) + " nodes needs " +
                                                  std::to_string(full_table_bytes(n)) + " bytes, budget is " +
                                                  std::to_string(budget));
    }
    dist.resize(n * n);
    pred.resize(n * n);
    for (std::size_t a = 0; a < n; ++a) {
        ShortestPathTree t = dijkstra(graph, static_cast<std::int32_t>(a));
        std::move(t.dist.begin(), t.dist.end(), dist.begin() + static_cast<std::ptrdiff_t>(a * n));
        std::copy(t.pred.begin(), t.pred.end(), pred.begin() + static_cast<std::ptrdiff_t>(a * n));
    }
}

}  // namespace detail

PreprocessedIndex::PreprocessedIndex(const Scene& scene, const IndexOptions& options) : options_(options) {
    validate_scene(scene);
    vis_ = std::make_unique<Visibility>(scene);
    tree_ = vertex_cutline_tree(scene);
    graph_ = options.mode == GraphMode::GOld ? build_g_old(scene, tree_, *vis_) : build_g_e(scene, tree_, *vis_);
    cascade_ = FractionalCascade(tree_, graph_.vertical_lines);
    if (options.policy == ApspPolicy::Full) detail::fill_full_table(graph_, options.memory_budget, table_, preds_);
}

std::unique_ptr<PreprocessedIndex> preprocess(const Scene& scene, const IndexOptions& options) {
    return std::make_unique<PreprocessedIndex>(scene, options);
}

QueryResult query(const PreprocessedIndex& index, const Point& s, const Point& t, bool want_path) {
    const Visibility& vis = index.visibility();
    for (const Point& p : {s, t}) {
        const Location loc = vis.locate(p);
        if (loc.kind == Location::Kind::Interior) {
            throw Error(ErrorCode::PointInsideObstacle, to_string(p) + " is inside obstacle " + std::to_string(loc.id));
        }
    }

    QueryResult result;
    result.length = Rational::infinite();
    if (auto trivial = detect_trivial_path(s, t, vis)) {
        result.length = trivial->length;
        result.path = std::move(trivial->polyline);
        result.kind = QueryResult::Kind::Trivial;
    }
    if (s == t) return result;

    const GatewayContext ctx = index.gateway_context();
    const GatewaySet gs = compute_gateways(s, ctx, index.options().strategy);
    const GatewaySet gt = compute_gateways(t, ctx, index.options().strategy);
    result.gateway_count = gs.entries.size() + gt.entries.size();
    const PathGraph& graph = index.graph();

    const detail::TableView table{index.table_data(), index.predecessor_data(), graph.node_count()};
    const detail::GatewaySearch found = detail::search_gateway_graph(
        graph, gs.entries, gt.entries, result.length, index.has_table() ? &table : nullptr, want_path);
    if (found.source != nullptr) {
        result.length = found.length;
        result.kind = QueryResult::Kind::ViaGateways;
        result.path.clear();
        if (want_path) result.path = detail::assemble_path(graph, found);
    }
    if (result.length.is_infinite()) {
        throw std::logic_error("no path found between " + to_string(s) + " and " + to_string(t));
    }
    if (!want_path) result.path.clear();
    return result;
}

std::vector<BatchResult> run_batch(const std::vector<QueryPair>& pairs, unsigned threads,
                                   const std::function<QueryResult(const QueryPair&)>& fn) {
    std::vector<BatchResult> out(pairs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < pairs.size(); i = next++) {
            try {
                out[i].result = fn(pairs[i]);
            } catch (const Error& e) {
                out[i].error = e.what();
                out[i].code = e.code();
            } catch (const std::exception& e) {
                out[i].error = e.what();
            }
        }
    };
    const unsigned count = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(pairs.size())));
    if (count <= 1) {
        worker();
        return out;
    }
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < count; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return out;
}

std::vector<BatchResult> batch_query(const PreprocessedIndex& index, const std::vector<QueryPair>& pairs,
                                     bool want_path, unsigned threads) {
    return run_batch(pairs, threads, [&](const QueryPair& p) { return query(index, p.s, p.t, want_path); });
}

}  // namespace l1sp
