#pragma once

#include "l1sp/geom.hpp"
#include "l1sp/scene.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

namespace l1sp {

enum class Direction { Left = 0, Right = 1, Up = 2, Down = 3 };
enum class Axis { Horizontal, Vertical };

inline constexpr std::array<Direction, 4> kDirections = {Direction::Left, Direction::Right, Direction::Up,
                                                         Direction::Down};

Point direction_vector(Direction d);
Direction opposite(Direction d);

/// Flattened obstacle boundary. Vertex ids are global; edge i joins vertex i
/// to next(i) in counterclockwise order.
class SceneGeometry {
public:
    explicit SceneGeometry(const Scene& scene);

    std::size_t vertex_count() const { return vertices_.size(); }
    const Point& vertex(std::int32_t id) const { return vertices_[static_cast<std::size_t>(id)]; }
    std::int32_t obstacle_of(std::int32_t vertex) const { return obstacle_[static_cast<std::size_t>(vertex)]; }
    std::int32_t next(std::int32_t vertex) const { return next_[static_cast<std::size_t>(vertex)]; }
    std::int32_t prev(std::int32_t vertex) const { return prev_[static_cast<std::size_t>(vertex)]; }
    Segment edge(std::int32_t id) const { return {vertex(id), vertex(next(id))}; }
    std::int32_t first_vertex(std::int32_t obstacle) const { return first_[static_cast<std::size_t>(obstacle)]; }
    /// Vertex id at p, or -1.
    std::int32_t vertex_at(const Point& p) const;

private:
    std::vector<Point> vertices_;
    std::vector<std::int32_t> obstacle_;
    std::vector<std::int32_t> next_;
    std::vector<std::int32_t> prev_;
    std::vector<std::int32_t> first_;
    std::unordered_map<Point, std::int32_t, PointHash> index_;
};

/// Where a point touches the obstacle boundary.
struct BoundaryContact {
    enum class Kind { None, Vertex, Edge };
    Kind kind = Kind::None;
    std::int32_t id = -1;  // vertex id or edge id
    std::int32_t obstacle = -1;

    explicit operator bool() const { return kind != Kind::None; }
    friend bool operator==(const BoundaryContact&, const BoundaryContact&) = default;
};

/// How a ray leaving a boundary point starts out.
enum class RayStart { Free, Interior, Along };

struct RayHit {
    enum class Kind {
        Obstacle,  // first point of an obstacle boundary
        Bbox,      // left the scene through the bounding box
        Blocked,   // origin on the boundary, direction points into the obstacle
    };
    RPoint point;
    Kind kind = Kind::Bbox;
    BoundaryContact contact;  // contact at `point` (Obstacle/Blocked)
};

struct ProjectionQuad {
    std::array<RayHit, 4> hits;  // indexed by Direction

    const RayHit& operator[](Direction d) const { return hits[static_cast<std::size_t>(d)]; }
    RayHit& operator[](Direction d) { return hits[static_cast<std::size_t>(d)]; }
};

struct Location {
    enum class Kind { Free, Boundary, Interior };
    Kind kind = Kind::Free;
    std::int32_t id = -1;  // cell id (Free) or obstacle id
};

struct InternalProjection {
    Point point;
    std::int32_t vertex = -1;
    BoundaryContact contact;
};

/// Trapezoidal decomposition of the free space along one axis. Vertical
/// decompositions work in world coordinates; horizontal ones in a frame
/// rotated by a quarter turn, (x, y) -> (-y, x), so "up" in the frame is
/// world right.
class VisibilityDecomposition {
public:
    struct Cell {
        std::int32_t bottom = -1;  // edge id; kBboxBottom for the bbox
        std::int32_t top = -1;     // edge id; kBboxTop for the bbox
        std::int64_t x_begin = 0;  // frame x where the cell starts
    };
    static constexpr std::int32_t kBboxBottom = -1;
    static constexpr std::int32_t kBboxTop = -2;

    VisibilityDecomposition(const SceneGeometry& geometry, const Box& bbox, Axis axis);

    Axis axis() const { return axis_; }
    const std::vector<Cell>& cells() const { return cells_; }
    std::size_t cell_count() const { return cells_.size(); }

    struct FrameHit {
        bool found = false;    // false: no obstacle boundary, ray reaches the bbox
        Rational y;            // frame y of the hit
        BoundaryContact contact;
    };
    /// First boundary point strictly above (up = true) or below frame point p.
    FrameHit first_hit(const Point& frame_p, bool up) const;
    /// Edge (not vertex) whose relative interior contains frame point p, or -1.
    std::int32_t edge_through(const Point& frame_p) const;
    /// Cell containing a free frame point that is not on the boundary.
    std::int32_t cell_of(const Point& frame_p) const;

    Point to_frame(const Point& p) const { return axis_ == Axis::Vertical ? p : Point{-p.y, p.x}; }
    RPoint from_frame(const RPoint& p) const { return axis_ == Axis::Vertical ? p : RPoint(p.y, -p.x); }
    const Box& frame_bbox() const { return frame_bbox_; }

    /// Edges that are vertical in the frame at frame x, as (y_lo, y_hi, edge id).
    struct VerticalEdge {
        std::int64_t lo;
        std::int64_t hi;
        std::int32_t edge;
    };

private:
    struct Node {
        std::int32_t edge;
        std::int32_t left;
        std::int32_t right;
        std::int32_t size;
        std::uint64_t priority;
    };
    struct Event {
        std::int64_t x;
        std::vector<std::pair<std::int64_t, std::int32_t>> vertices;  // (frame y, vertex id), sorted
        std::vector<VerticalEdge> vertical;                            // sorted by lo
    };

    const SceneGeometry* geometry_;
    Axis axis_;
    Box frame_bbox_;
    std::vector<Segment> frame_edges_;  // per edge id, frame coordinates
    std::vector<Node> nodes_;
    std::vector<Event> events_;
    std::vector<std::int32_t> versions_;  // status root after each event
    std::vector<Cell> cells_;
    std::map<std::pair<std::int32_t, std::int32_t>, std::vector<std::pair<std::int64_t, std::int32_t>>> cells_by_pair_;

    std::int32_t make_node(std::int32_t edge, std::int32_t left, std::int32_t right);
    std::int32_t copy_with(std::int32_t node, std::int32_t left, std::int32_t right);
    std::int32_t size(std::int32_t node) const { return node < 0 ? 0 : nodes_[static_cast<std::size_t>(node)].size; }
    std::int32_t merge(std::int32_t a, std::int32_t b);
    std::pair<std::int32_t, std::int32_t> split_insert(std::int32_t root, std::int32_t edge, std::int64_t x);
    std::int32_t insert(std::int32_t root, std::int32_t edge, std::int64_t x);
    std::int32_t erase(std::int32_t root, std::int32_t edge, std::int64_t x);
    bool below_after(std::int32_t e, std::int32_t f, std::int64_t x) const;
    bool below_before(std::int32_t e, std::int32_t f, std::int64_t x) const;
    Rational value_at(std::int32_t edge, std::int64_t x) const;
    int compare_value(std::int32_t edge, std::int64_t x, std::int64_t y) const;
    std::int32_t count_below(std::int32_t root, std::int64_t x, std::int64_t y, bool inclusive) const;
    std::int32_t kth(std::int32_t root, std::int32_t k) const;
    bool is_free_gap_bottom(std::int32_t edge) const;

    /// Index of the event at x, or -1; slab root covering x (left slab at events).
    std::int32_t event_index(std::int64_t x) const;
    std::int32_t slab_root(std::int64_t x, bool right_of_event) const;
};

/// Both decompositions plus boundary lookup for one scene.
class Visibility {
public:
    explicit Visibility(const Scene& scene);
    Visibility(const Visibility&) = delete;
    Visibility& operator=(const Visibility&) = delete;

    const Scene& scene() const { return scene_; }
    const SceneGeometry& geometry() const { return geometry_; }
    const VisibilityDecomposition& vertical() const { return vertical_; }
    const VisibilityDecomposition& horizontal() const { return horizontal_; }

    /// Boundary contact at p (integer point).
    BoundaryContact contact(const Point& p) const;
    /// Classifies the direction d at a boundary contact.
    RayStart classify(const BoundaryContact& c, Direction d) const;

    /// First point of the boundary (or bbox) hit by a ray from p.
    /// Throws POINT_INSIDE_OBSTACLE for interior points, OUT_OF_BBOX outside.
    RayHit ray_shoot(const Point& p, Direction d) const;
    ProjectionQuad projections(const Point& p) const;

    /// Farthest point reachable from p along d inside the closed free space.
    /// Unlike ray_shoot this passes through grazing contacts and runs along
    /// parallel edges. Returns p itself when d points into an obstacle.
    RPoint free_extent(const Point& p, Direction d) const;

    /// First boundary point strictly beyond p along d, ignoring whether the
    /// ray starts inside an obstacle. Used for internal projections.
    RayHit first_boundary_beyond(const Point& p, Direction d) const;

    Location locate(const Point& p) const;

    /// Internal projections of reflex vertices; weighted scenes only.
    std::vector<InternalProjection> internal_projections() const;

private:
    Scene scene_;
    SceneGeometry geometry_;
    VisibilityDecomposition vertical_;
    VisibilityDecomposition horizontal_;

    const VisibilityDecomposition& decomposition_for(Direction d) const;
    RayHit walk_along(const BoundaryContact& c, Direction d) const;
};

}  // namespace l1sp
