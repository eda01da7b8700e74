#include "l1sp/cutline.hpp"

#include "l1sp/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace l1sp {

namespace {

int ceil_sqrt(int v) {
    int r = 0;
    while (r * r < v) ++r;
    return r;
}

std::int32_t build_node(CutLineTree& tree, std::vector<std::int32_t> members, int level, std::int32_t parent) {
    std::sort(members.begin(), members.end(), [&](std::int32_t a, std::int32_t b) {
        const Point& pa = tree.points[static_cast<std::size_t>(a)];
        const Point& pb = tree.points[static_cast<std::size_t>(b)];
        const std::int64_t ka = tree.key(pa), kb = tree.key(pb);
        if (ka != kb) return ka < kb;
        return a < b;
    });
    const std::int64_t median = tree.key(tree.points[static_cast<std::size_t>(members[(members.size() - 1) / 2])]);
    std::vector<std::int32_t> lo, hi;
    for (std::int32_t m : members) {
        const std::int64_t k = tree.key(tree.points[static_cast<std::size_t>(m)]);
        if (k < median) lo.push_back(m);
        if (k > median) hi.push_back(m);
    }
    const auto id = static_cast<std::int32_t>(tree.nodes.size());
    CutNode node;
    node.coord = median;
    node.members = std::move(members);
    node.level = level;
    node.parent = parent;
    tree.nodes.push_back(std::move(node));
    tree.levels = std::max(tree.levels, level);
    if (!lo.empty()) {
        const std::int32_t child = build_node(tree, std::move(lo), level + 1, id);
        tree.nodes[static_cast<std::size_t>(id)].left = child;
    }
    if (!hi.empty()) {
        const std::int32_t child = build_node(tree, std::move(hi), level + 1, id);
        tree.nodes[static_cast<std::size_t>(id)].right = child;
    }
    return id;
}

void in_order_walk(const CutLineTree& tree, std::int32_t id, std::vector<std::int32_t>& out) {
    if (id < 0) return;
    in_order_walk(tree, tree.node(id).left, out);
    out.push_back(id);
    in_order_walk(tree, tree.node(id).right, out);
}

}  // namespace

std::vector<std::int32_t> CutLineTree::in_order() const {
    std::vector<std::int32_t> out;
    out.reserve(nodes.size());
    in_order_walk(*this, root, out);
    return out;
}

CutLineTree build_cutline_tree(const std::vector<Point>& points, Axis axis) {
    if (points.empty()) throw Error(ErrorCode::EmptyPointSet, "cut-line tree needs at least one point");
    CutLineTree tree;
    tree.axis = axis;
    tree.points = points;
    std::vector<std::int32_t> all(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) all[i] = static_cast<std::int32_t>(i);
    tree.root = build_node(tree, std::move(all), 1, -1);
    tree.super_level_size = std::max(1, ceil_sqrt(tree.levels));
    tree.super_levels = (tree.levels + tree.super_level_size - 1) / tree.super_level_size;
    for (CutNode& node : tree.nodes) node.super_level = (node.level + tree.super_level_size - 1) / tree.super_level_size;
    return tree;
}

AxisReach axis_reach(const Point& q, const CutLineTree& tree, const Visibility& vis) {
    AxisReach reach;
    reach.q = q;
    if (tree.axis == Axis::Vertical) {
        reach.low = vis.free_extent(q, Direction::Left).x;
        reach.high = vis.free_extent(q, Direction::Right).x;
    } else {
        reach.low = vis.free_extent(q, Direction::Down).y;
        reach.high = vis.free_extent(q, Direction::Up).y;
    }
    return reach;
}

std::vector<std::int32_t> projection_cutlines(const AxisReach& reach, const CutLineTree& tree) {
    std::vector<std::int32_t> out;
    const std::int64_t k = tree.key(reach.q);
    std::int32_t id = tree.root;
    while (id >= 0) {
        const CutNode& node = tree.node(id);
        if (node.coord == k) {
            out.push_back(id);
            break;
        }
        const Rational c(node.coord);
        if (node.coord > k ? reach.high >= c : reach.low <= c) out.push_back(id);
        id = k < node.coord ? node.left : node.right;
    }
    return out;
}

std::vector<std::int32_t> projection_cutlines(const Point& q, const CutLineTree& tree, const Visibility& vis) {
    if (tree.empty()) return {};
    return projection_cutlines(axis_reach(q, tree, vis), tree);
}

std::vector<std::int32_t> relevant_projection_cutlines(const AxisReach& reach, const CutLineTree& tree) {
    const std::int64_t k = tree.key(reach.q);
    // (side, super-level) -> deepest node; side 0 low, 1 high.
    std::map<std::pair<int, int>, std::int32_t> best;
    for (std::int32_t id : projection_cutlines(reach, tree)) {
        const CutNode& node = tree.node(id);
        for (int side = 0; side < 2; ++side) {
            const bool on_side = node.coord == k || (side == 0 ? node.coord < k : node.coord > k);
            if (!on_side) continue;
            auto [it, inserted] = best.try_emplace({side, node.super_level}, id);
            if (!inserted && tree.node(it->second).level < node.level) it->second = id;
        }
    }
    std::vector<std::int32_t> out;
    for (const auto& [key, id] : best) out.push_back(id);
    std::sort(out.begin(), out.end(),
              [&](std::int32_t a, std::int32_t b) { return tree.node(a).level < tree.node(b).level; });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<std::int32_t> relevant_projection_cutlines(const Point& q, const CutLineTree& tree,
                                                       const Visibility& vis) {
    if (tree.empty()) return {};
    return relevant_projection_cutlines(axis_reach(q, tree, vis), tree);
}

}  // namespace l1sp
