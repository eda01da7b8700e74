#pragma once

#include "l1sp/cutline.hpp"
#include "l1sp/graph.hpp"
#include "l1sp/visibility.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace l1sp {

/// Fractional cascading over the per-cut-line key lists of a cut-line tree.
/// Each augmented list holds its own keys, every other key of each child's
/// augmented list and a sentinel; entries carry the lower_bound position in
/// the node's own list and in each child's augmented list.
class FractionalCascade {
public:
    FractionalCascade() = default;
    FractionalCascade(const CutLineTree& tree, const std::vector<std::vector<CutlineEntry>>& lines);

    struct PathHit {
        std::int32_t node;         // tree node on the root-to-leaf path
        std::int32_t lower_bound;  // first index in the node's list with key >= probe
    };
    /// Walks the root-to-leaf path of `path_key` (the query's coordinate
    /// across the cut-lines) and locates `probe` in every list on it.
    std::vector<PathHit> search(std::int64_t path_key, std::int64_t probe) const;

    std::size_t size() const;  // total augmented entries

private:
    struct Entry {
        std::int64_t key;
        std::int32_t own;
        std::int32_t child[2];
    };
    const CutLineTree* tree_ = nullptr;
    std::vector<std::vector<Entry>> augmented_;

    void build_node(std::int32_t id, const std::vector<std::vector<CutlineEntry>>& lines);
};

enum class GatewayStrategy { Cascade, BinarySearch };

struct GatewayEntry {
    enum class Part { V1, V2, Self };
    std::int32_t node = -1;
    Rational length;
    std::vector<RPoint> polyline;  // from the query point to the node
    Part part = Part::V1;
};

struct GatewaySet {
    Point source;
    std::vector<GatewayEntry> entries;  // sorted by node id, one per node
    std::size_t v1_count = 0;
    std::size_t v2_count = 0;
    bool bbox_hit = false;  // some projection left through the bbox
};

/// Read-only view of everything gateway computation needs.
struct GatewayContext {
    const Visibility* vis = nullptr;
    const CutLineTree* tree = nullptr;
    const PathGraph* graph = nullptr;
    const FractionalCascade* cascade = nullptr;
};

/// V1 and V2 gateways of q. G_old graphs use every projection cut-line, G_E
/// graphs the relevant ones. Throws POINT_INSIDE_OBSTACLE / OUT_OF_BBOX.
GatewaySet compute_gateways(const Point& q, const GatewayContext& ctx,
                            GatewayStrategy strategy = GatewayStrategy::Cascade);

struct TrivialPath {
    Rational length;
    std::vector<RPoint> polyline;
};

/// Shortest 2- or 3-segment path built from the boundary projections of s and
/// t: crossing projection segments, or projections on a common obstacle edge.
std::optional<TrivialPath> detect_trivial_path(const Point& s, const Point& t, const Visibility& vis);

}  // namespace l1sp
