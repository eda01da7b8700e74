#pragma once

#include "l1sp/cutline.hpp"
#include "l1sp/geom.hpp"
#include "l1sp/rational.hpp"
#include "l1sp/scene.hpp"
#include "l1sp/visibility.hpp"

#include <cstdint>
#include <string_view>
#include <vector>

namespace l1sp {

/// Lower values take precedence when duplicates merge.
enum class NodeKind { Vertex = 0, Type1 = 1, Type2 = 2, Type3 = 3 };
enum class GraphVariant { GOld, GEnhanced, Weighted };

std::string_view node_kind_name(NodeKind kind);
std::string_view graph_variant_name(GraphVariant variant);

struct GraphNode {
    RPoint location;
    NodeKind kind = NodeKind::Type1;
    std::int32_t vertex = -1;  // obstacle vertex id (Vertex) or defining vertex
};

struct GraphEdge {
    std::int32_t to = -1;
    Rational length;
};

/// A graph node sitting on a cut-line, with how far the line stays free
/// below and above it.
struct CutlineEntry {
    std::int32_t node = -1;
    std::int64_t key = 0;  // coordinate along the line
    Rational reach_low;
    Rational reach_high;
};

struct PathGraph {
    GraphVariant variant = GraphVariant::GOld;
    std::vector<GraphNode> nodes;
    std::vector<std::vector<GraphEdge>> adjacency;
    /// Per node of the vertical (resp. horizontal) cut-line tree, the nodes on
    /// its cut-line sorted by key.
    std::vector<std::vector<CutlineEntry>> vertical_lines;
    std::vector<std::vector<CutlineEntry>> horizontal_lines;
    /// Per obstacle edge, the nodes on it sorted by location.
    std::vector<std::vector<std::int32_t>> edge_nodes;

    std::size_t node_count() const { return nodes.size(); }
    std::size_t edge_count() const;
    /// Node at exactly this location, or -1. Requires an indexed graph.
    std::int32_t find(const RPoint& p) const;
};

/// Merges nodes at the same location (adjacency unioned, shortest parallel
/// edge kept), renumbers by location and sorts every list. Idempotent.
PathGraph dedupe_and_index(const PathGraph& raw);

PathGraph build_g_old(const Scene& scene, const CutLineTree& tree, const Visibility& vis);
PathGraph build_g_e(const Scene& scene, const CutLineTree& tree, const Visibility& vis);

/// Vertical cut-line tree over the obstacle vertices (empty for an empty scene).
CutLineTree vertex_cutline_tree(const Scene& scene, Axis axis = Axis::Vertical);

}  // namespace l1sp
