#pragma once

#include "l1sp/geom.hpp"
#include "l1sp/visibility.hpp"

#include <cstdint>
#include <vector>

namespace l1sp {

/// One node of a cut-line tree. For a vertical tree the cut-line is x = coord;
/// for a horizontal tree it is y = coord.
struct CutNode {
    std::int64_t coord = 0;
    std::vector<std::int32_t> members;  // indices into CutLineTree::points
    int level = 1;                      // root is 1
    int super_level = 1;
    std::int32_t parent = -1;
    std::int32_t left = -1;
    std::int32_t right = -1;
};

struct CutLineTree {
    Axis axis = Axis::Vertical;
    std::vector<Point> points;
    std::vector<CutNode> nodes;
    std::int32_t root = -1;
    int levels = 0;            // realized depth
    int super_level_size = 1;  // ceil(sqrt(levels))
    int super_levels = 0;      // number of super-levels

    bool empty() const { return nodes.empty(); }
    const CutNode& node(std::int32_t id) const { return nodes[static_cast<std::size_t>(id)]; }
    /// Coordinate of a point along the split axis.
    std::int64_t key(const Point& p) const { return axis == Axis::Vertical ? p.x : p.y; }
    /// First level of the super-level containing `level`.
    int super_level_top(int level) const { return (level - 1) / super_level_size * super_level_size + 1; }
    /// Node ids in in-order (left-to-right / bottom-to-top along the axis).
    std::vector<std::int32_t> in_order() const;
};

/// Throws EMPTY_POINT_SET for an empty input.
CutLineTree build_cutline_tree(const std::vector<Point>& points, Axis axis);

/// How far a query point sees along the tree's split axis (free extents).
struct AxisReach {
    Point q;
    Rational low;   // left (vertical tree) or down (horizontal tree)
    Rational high;  // right or up
};

AxisReach axis_reach(const Point& q, const CutLineTree& tree, const Visibility& vis);

/// Nodes on the root-to-leaf path whose cut-line q sees, root first.
std::vector<std::int32_t> projection_cutlines(const AxisReach& reach, const CutLineTree& tree);
std::vector<std::int32_t> projection_cutlines(const Point& q, const CutLineTree& tree, const Visibility& vis);

/// Per side and super-level, the deepest projection cut-line. A cut-line
/// through q itself counts on both sides.
std::vector<std::int32_t> relevant_projection_cutlines(const AxisReach& reach, const CutLineTree& tree);
std::vector<std::int32_t> relevant_projection_cutlines(const Point& q, const CutLineTree& tree, const Visibility& vis);

}  // namespace l1sp
