#pragma once

#include "l1sp/gateway.hpp"
#include "l1sp/graph.hpp"
#include "l1sp/query.hpp"

#include <algorithm>
#include <queue>
#include <unordered_map>
#include <vector>

namespace l1sp::detail {

/// Node-to-node distances and predecessors of a FULL table (row = source).
struct TableView {
    const Rational* dist = nullptr;
    const std::int32_t* pred = nullptr;
    std::size_t n = 0;
};

struct GatewaySearch {
    Rational length = Rational::infinite();
    const GatewayEntry* source = nullptr;
    const GatewayEntry* target = nullptr;
    std::vector<std::int32_t> chain;  // graph nodes, source gateway first
};

using HeapItem = std::pair<Rational, std::int32_t>;
struct HeapOrder {
    bool operator()(const HeapItem& a, const HeapItem& b) const {
        if (a.first != b.first) return a.first > b.first;
        return a.second > b.second;
    }
};
using MinHeap = std::priority_queue<HeapItem, std::vector<HeapItem>, HeapOrder>;

template <class PredFn>
std::vector<std::int32_t> walk_back(std::int32_t end, PredFn pred) {
    std::vector<std::int32_t> chain;
    for (std::int32_t v = end; v >= 0; v = pred(v)) chain.push_back(v);
    std::reverse(chain.begin(), chain.end());
    return chain;
}

/// Shortest source-gateway -> graph -> target-gateway route strictly shorter
/// than `bound`; result.source stays null when there is none.
inline GatewaySearch search_gateway_graph(const PathGraph& graph, const std::vector<GatewayEntry>& sources,
                                          const std::vector<GatewayEntry>& targets, const Rational& bound,
                                          const TableView* table, bool want_chain) {
    GatewaySearch out;
    out.length = bound;
    if (table != nullptr) {
        for (const GatewayEntry& a : sources) {
            const Rational* row = table->dist + static_cast<std::size_t>(a.node) * table->n;
            for (const GatewayEntry& b : targets) {
                const Rational& mid = row[static_cast<std::size_t>(b.node)];
                if (mid.is_infinite()) continue;
                const Rational cand = a.length + mid + b.length;
                if (cand < out.length) {
                    out.length = cand;
                    out.source = &a;
                    out.target = &b;
                }
            }
        }
        if (out.source != nullptr && want_chain) {
            const std::int32_t* row = table->pred + static_cast<std::size_t>(out.source->node) * table->n;
            out.chain = walk_back(out.target->node, [&](std::int32_t v) { return row[static_cast<std::size_t>(v)]; });
        }
        return out;
    }

    const std::size_t n = graph.node_count();
    std::vector<Rational> dist(n, Rational::infinite());
    std::vector<std::int32_t> pred(n, -1);
    std::unordered_map<std::int32_t, const GatewayEntry*> by_source, by_target;
    MinHeap heap;
    for (const GatewayEntry& a : sources) {
        auto& d = dist[static_cast<std::size_t>(a.node)];
        if (a.length < d) {
            d = a.length;
            by_source[a.node] = &a;
            heap.emplace(a.length, a.node);
        }
    }
    for (const GatewayEntry& b : targets) {
        auto [it, inserted] = by_target.try_emplace(b.node, &b);
        if (!inserted && b.length < it->second->length) it->second = &b;
    }
    std::int32_t end = -1;
    while (!heap.empty()) {
        const auto [d, u] = heap.top();
        heap.pop();
        if (d != dist[static_cast<std::size_t>(u)]) continue;
        if (d >= out.length) break;
        if (auto it = by_target.find(u); it != by_target.end()) {
            const Rational cand = d + it->second->length;
            if (cand < out.length) {
                out.length = cand;
                out.target = it->second;
                end = u;
            }
        }
        for (const GraphEdge& e : graph.adjacency[static_cast<std::size_t>(u)]) {
            const Rational nd = d + e.length;
            auto& dv = dist[static_cast<std::size_t>(e.to)];
            if (nd < dv) {
                dv = nd;
                pred[static_cast<std::size_t>(e.to)] = u;
                heap.emplace(nd, e.to);
            }
        }
    }
    if (end >= 0) {
        out.chain = walk_back(end, [&](std::int32_t v) { return pred[static_cast<std::size_t>(v)]; });
        out.source = by_source.at(out.chain.front());
        if (!want_chain) out.chain.clear();
    }
    return out;
}

/// Dijkstra from every node into row-major N x N arrays. Throws
/// INDEX_TOO_LARGE when the table would exceed `budget` bytes.
void fill_full_table(const PathGraph& graph, std::uint64_t budget, std::vector<Rational>& dist,
                     std::vector<std::int32_t>& pred);

inline void append_points(std::vector<RPoint>& out, const std::vector<RPoint>& pts) {
    for (const RPoint& p : pts) {
        if (out.empty() || out.back() != p) out.push_back(p);
    }
}

/// Source gateway polyline, graph nodes, reversed target gateway polyline.
inline std::vector<RPoint> assemble_path(const PathGraph& graph, const GatewaySearch& found) {
    std::vector<RPoint> path;
    append_points(path, found.source->polyline);
    for (std::int32_t v : found.chain) append_points(path, {graph.nodes[static_cast<std::size_t>(v)].location});
    append_points(path, std::vector<RPoint>(found.target->polyline.rbegin(), found.target->polyline.rend()));
    return path;
}

}  // namespace l1sp::detail
