#pragma once

#include "l1sp/graph.hpp"

#include <algorithm>
#include <map>

namespace l1sp::detail {

/// Accumulates nodes (deduplicated by location on the fly), edges and
/// per-host lists; finish() hands the result to dedupe_and_index.
class GraphBuilder {
public:
    GraphBuilder(GraphVariant variant, std::size_t vertical_lines, std::size_t horizontal_lines,
                 std::size_t obstacle_edges) {
        graph_.variant = variant;
        graph_.vertical_lines.resize(vertical_lines);
        graph_.horizontal_lines.resize(horizontal_lines);
        graph_.edge_nodes.resize(obstacle_edges);
    }

    std::int32_t add_node(const RPoint& p, NodeKind kind, std::int32_t vertex) {
        auto [it, inserted] = ids_.try_emplace(p, static_cast<std::int32_t>(graph_.nodes.size()));
        if (inserted) {
            graph_.nodes.push_back({p, kind, vertex});
            graph_.adjacency.emplace_back();
        } else {
            GraphNode& node = graph_.nodes[static_cast<std::size_t>(it->second)];
            if (kind < node.kind) {
                node.kind = kind;
                node.vertex = vertex;
            }
        }
        return it->second;
    }

    std::int32_t find(const RPoint& p) const {
        const auto it = ids_.find(p);
        return it == ids_.end() ? -1 : it->second;
    }

    std::size_t node_count() const { return graph_.nodes.size(); }
    const RPoint& location(std::int32_t id) const { return graph_.nodes[static_cast<std::size_t>(id)].location; }

    void add_edge(std::int32_t a, std::int32_t b, const Rational& length) {
        if (a == b || length.is_infinite()) return;
        graph_.adjacency[static_cast<std::size_t>(a)].push_back({b, length});
        graph_.adjacency[static_cast<std::size_t>(b)].push_back({a, length});
    }

    void add_to_edge(std::int32_t edge, std::int32_t node) {
        graph_.edge_nodes[static_cast<std::size_t>(edge)].push_back(node);
    }

    const std::vector<std::int32_t>& edge_list(std::int32_t edge) const {
        return graph_.edge_nodes[static_cast<std::size_t>(edge)];
    }

    std::vector<CutlineEntry>& line(Axis axis, std::int32_t id) {
        auto& lines = axis == Axis::Vertical ? graph_.vertical_lines : graph_.horizontal_lines;
        return lines[static_cast<std::size_t>(id)];
    }
    std::size_t line_count(Axis axis) const {
        return axis == Axis::Vertical ? graph_.vertical_lines.size() : graph_.horizontal_lines.size();
    }

    /// Sorts each cut-line list by key and drops repeated nodes.
    void sort_lines() {
        for (auto* lines : {&graph_.vertical_lines, &graph_.horizontal_lines}) {
            for (auto& list : *lines) {
                std::sort(list.begin(), list.end(), [](const CutlineEntry& a, const CutlineEntry& b) {
                    return a.key != b.key ? a.key < b.key : a.node < b.node;
                });
                list.erase(std::unique(list.begin(), list.end(),
                                       [](const CutlineEntry& a, const CutlineEntry& b) { return a.node == b.node; }),
                           list.end());
            }
        }
    }

    PathGraph finish() { return dedupe_and_index(graph_); }

private:
    PathGraph graph_;
    std::map<RPoint, std::int32_t> ids_;
};

}  // namespace l1sp::detail
