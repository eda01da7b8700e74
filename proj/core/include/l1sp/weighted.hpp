#pragma once

#include "l1sp/cutline.hpp"
#include "l1sp/gateway.hpp"
#include "l1sp/graph.hpp"
#include "l1sp/query.hpp"
#include "l1sp/scene.hpp"
#include "l1sp/visibility.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <utility>
#include <vector>

namespace l1sp {

struct WeightedPoint {
    enum class Source { Vertex = 0, InternalProjection = 1, Projection = 2 };
    Point point;
    Source source = Source::Vertex;
    std::int32_t vertex = -1;  // defining obstacle vertex
};

std::string_view weighted_source_name(WeightedPoint::Source source);

/// Obstacle vertices, internal projections and boundary/bbox projections of
/// the vertices, deduplicated and sorted by location.
struct WeightedNodeSet {
    std::vector<WeightedPoint> points;
};

/// Throws WRONG_MODE for polygonal scenes.
WeightedNodeSet collect_v_set(const Scene& scene, const Visibility& vis);
WeightedNodeSet collect_v_set(const Scene& scene);

/// One axis-parallel line of a rectilinear scene cut into gaps at every
/// obstacle-boundary crossing. A vertical profile is the line x = coord with
/// positions along y; a horizontal profile is y = coord with positions along x.
class LineProfile {
public:
    enum class GapKind { Free, Interior, Boundary };
    struct Gap {
        std::int64_t lo = 0;
        std::int64_t hi = 0;
        GapKind kind = GapKind::Free;
        std::int32_t obstacle = -1;  // Interior/Boundary only
        Rational rate;               // 1 + w for Interior, 1 otherwise
    };

    LineProfile() = default;
    LineProfile(const Scene& scene, Axis axis, std::int64_t coord);

    Axis axis() const { return axis_; }
    std::int64_t coord() const { return coord_; }
    const std::vector<std::int64_t>& breakpoints() const { return breakpoints_; }
    const std::vector<Gap>& gaps() const { return gaps_; }
    std::int64_t low() const { return breakpoints_.front(); }
    std::int64_t high() const { return breakpoints_.back(); }

    /// Finite part of the weighted length of [a, b] and the number of
    /// infinite-weight gaps it overlaps with positive length.
    std::pair<Rational, int> split_cost(std::int64_t a, std::int64_t b) const;
    /// Weighted length of the part of the line between positions a and b.
    Rational cost(std::int64_t a, std::int64_t b) const;
    /// Positions [lo, hi] whose segment to pos lies in the closed free space
    /// or inside one closed obstacle.
    std::pair<std::int64_t, std::int64_t> reach(std::int64_t pos) const;
    bool visible(std::int64_t a, std::int64_t b) const;

    /// Index of the gap containing (pos, pos + eps) / (pos - eps, pos).
    std::size_t gap_above(std::int64_t pos) const;
    std::size_t gap_below(std::int64_t pos) const;

private:
    Axis axis_ = Axis::Vertical;
    std::int64_t coord_ = 0;
    std::vector<std::int64_t> breakpoints_;
    std::vector<Gap> gaps_;
    std::vector<Rational> prefix_;        // finite cost of gaps [0, i)
    std::vector<int> inf_prefix_;         // infinite gaps among [0, i)
    std::vector<std::int64_t> free_lo_, free_hi_;  // run bounds, == sentinel if not free
    std::vector<std::int64_t> obst_lo_, obst_hi_;
};

/// Weighted length of an axis-parallel segment: interior pieces cost
/// (1 + w) per unit, free and boundary pieces cost 1. Throws
/// NON_RECTILINEAR_EDGE for other segments and WRONG_MODE for polygonal scenes.
Rational segment_weighted_length(const Segment& seg, const Scene& scene);
Rational segment_weighted_length(const RPoint& a, const RPoint& b, const Scene& scene);

/// Profiles of every line through a coordinate of the node set, built once.
class ProfileCache {
public:
    ProfileCache() = default;
    explicit ProfileCache(const Scene* scene) : scene_(scene) {}
    void build(Axis axis, std::int64_t coord);
    /// Cached profile, or nullptr.
    const LineProfile* find(Axis axis, std::int64_t coord) const;
    /// Cached profile or a freshly built one stored in `scratch`.
    const LineProfile& get(Axis axis, std::int64_t coord, LineProfile& scratch) const;
    std::size_t size() const { return profiles_.size(); }

private:
    const Scene* scene_ = nullptr;
    std::map<std::pair<int, std::int64_t>, LineProfile> profiles_;
};

/// Per cut-line, the sorted merge of its Steiner points and obstacle
/// crossings, each with the weighted length to the topmost entry and the
/// weight of the gap below it, plus cascading bridges over the tree.
class CutLineWeightIndex {
public:
    struct Entry {
        std::int64_t key = 0;
        Rational d_top;      // finite part of the weighted length to the top
        int inf_above = 0;   // infinite-weight gaps lying entirely above the entry
        bool inside_inf = false;  // strictly inside an infinite-weight gap
        Rational w_below;    // weight of the gap below (0 for free/boundary)
        bool steiner = false;
    };

    CutLineWeightIndex() = default;
    CutLineWeightIndex(const CutLineTree& tree, const std::vector<std::vector<CutlineEntry>>& steiner,
                       const ProfileCache& profiles);
    CutLineWeightIndex(CutLineWeightIndex&&) = default;
    CutLineWeightIndex& operator=(CutLineWeightIndex&&) = default;

    const std::vector<Entry>& list(std::int32_t node) const { return lists_[static_cast<std::size_t>(node)]; }
    const FractionalCascade& cascade() const { return cascade_; }

    /// Weighted length along the cut-line of `node` between position pos,
    /// whose first entry at or above it is list(node)[lower_bound], and the
    /// steiner_index-th Steiner point of the line.
    Rational distance(std::int32_t node, std::int64_t pos, std::int32_t lower_bound,
                      std::size_t steiner_index) const;

private:
    std::vector<std::vector<Entry>> lists_;
    std::vector<std::vector<std::int32_t>> steiner_pos_;  // Steiner point -> list position
    FractionalCascade cascade_;
};

/// Everything the weighted query needs; immutable after construction.
class WeightedIndex {
public:
    WeightedIndex(const Scene& scene, const IndexOptions& options);
    WeightedIndex(const WeightedIndex&) = delete;
    WeightedIndex& operator=(const WeightedIndex&) = delete;

    const Scene& scene() const { return vis_->scene(); }
    const IndexOptions& options() const { return options_; }
    const Visibility& visibility() const { return *vis_; }
    const WeightedNodeSet& v_set() const { return vset_; }
    const CutLineTree& tree(Axis axis) const { return axis == Axis::Vertical ? vtree_ : htree_; }
    const PathGraph& graph() const { return graph_; }
    const ProfileCache& profiles() const { return profiles_; }
    const CutLineWeightIndex& weights(Axis axis) const { return axis == Axis::Vertical ? vweights_ : hweights_; }
    const FractionalCascade& steiner_cascade(Axis axis) const {
        return axis == Axis::Vertical ? vcascade_ : hcascade_;
    }
    /// Graph nodes on each bbox side (bottom, right, top, left), sorted by location.
    const std::array<std::vector<std::int32_t>, 4>& bbox_sides() const { return bbox_sides_; }
    /// Ids of graph nodes that belong to the node set, sorted.
    const std::vector<std::int32_t>& v_nodes() const { return v_nodes_; }

    bool has_table() const { return !table_.empty(); }
    const Rational& distance(std::int32_t a, std::int32_t b) const {
        return table_[static_cast<std::size_t>(a) * graph_.node_count() + static_cast<std::size_t>(b)];
    }
    std::int32_t predecessor(std::int32_t a, std::int32_t b) const {
        return preds_[static_cast<std::size_t>(a) * graph_.node_count() + static_cast<std::size_t>(b)];
    }
    const Rational* table_data() const { return table_.data(); }
    const std::int32_t* predecessor_data() const { return preds_.data(); }

private:
    IndexOptions options_;
    std::unique_ptr<Visibility> vis_;
    WeightedNodeSet vset_;
    CutLineTree vtree_;
    CutLineTree htree_;
    ProfileCache profiles_;
    PathGraph graph_;
    CutLineWeightIndex vweights_;
    CutLineWeightIndex hweights_;
    FractionalCascade vcascade_;
    FractionalCascade hcascade_;
    std::array<std::vector<std::int32_t>, 4> bbox_sides_;
    std::vector<std::int32_t> v_nodes_;
    std::vector<Rational> table_;
    std::vector<std::int32_t> preds_;
};

/// Builds the weighted graph over the node set: Steiner points on both
/// cut-line trees, weighted edges. Throws WRONG_MODE.
PathGraph build_weighted_graph(const Scene& scene, const Visibility& vis, const WeightedNodeSet& vset,
                               const CutLineTree& vertical, const CutLineTree& horizontal,
                               const ProfileCache& profiles);

std::unique_ptr<WeightedIndex> preprocess_weighted(const Scene& scene, const IndexOptions& options = {});

/// Gateways of q on its relevant projection cut-lines of both trees: the
/// Steiner points just above and below q's projection on each line.
GatewaySet weighted_gateways(const Point& q, const WeightedIndex& index,
                             GatewayStrategy strategy = GatewayStrategy::Cascade);

/// Minimum over the gateway graph of Y(s) x Y(t), the two L-shaped paths and
/// the unweighted trivial path. Throws POINT_INSIDE_OBSTACLE / OUT_OF_BBOX.
QueryResult weighted_query(const WeightedIndex& index, const Point& s, const Point& t, bool want_path = true);

std::vector<BatchResult> weighted_batch_query(const WeightedIndex& index, const std::vector<QueryPair>& pairs,
                                              bool want_path = true, unsigned threads = 1);

}  // namespace l1sp
