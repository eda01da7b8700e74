#pragma once

#include "l1sp/geom.hpp"
#include "l1sp/rational.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace l1sp {

enum class SceneMode { Polygonal, RectilinearWeighted };

std::string_view scene_mode_name(SceneMode mode);

struct Scene {
    SceneMode mode = SceneMode::Polygonal;
    Box bbox;
    std::vector<Polygon> obstacles;
    /// One weight per obstacle in weighted mode; empty in polygonal mode.
    std::vector<Rational> weights;

    std::size_t vertex_count() const;
    bool weighted() const { return mode == SceneMode::RectilinearWeighted; }
    Rational weight(std::size_t obstacle) const { return weighted() ? weights[obstacle] : Rational::infinite(); }
};

struct SceneStats {
    std::size_t n = 0;
    std::size_t h = 0;
    int levels = 0;        // ceil(log2(max(n, 2)))
    int super_levels = 0;  // ceil(sqrt(levels))
};

/// Coordinates must stay below this bound in absolute value.
inline constexpr std::int64_t kCoordinateLimit = std::int64_t{1} << 62;

/// Checks every scene invariant; throws Error naming the offending obstacle/vertex.
SceneStats validate_scene(const Scene& scene);

/// Obstacle bounding box inflated by 10% per axis (at least 1).
Box default_bbox(const std::vector<Polygon>& obstacles);

struct GeneratorOptions {
    std::vector<Rational> weight_palette = {Rational(0), Rational::from_fraction(1, 2), Rational(1), Rational(2),
                                            Rational(3), Rational::infinite()};
    int max_retries = 64;
};

/// Deterministic random scene. Polygonal scenes use star-shaped obstacles in
/// general position; weighted scenes use notched/dented rectangles.
Scene generate_scene(std::size_t n, std::size_t h, SceneMode mode, std::uint64_t seed,
                     const GeneratorOptions& options = {});

/// Parses and validates a scene document.
Scene load_scene(std::string_view text);
/// Canonical serialization; load_scene(save_scene(s)) == s.
std::string save_scene(const Scene& scene);

/// FNV-1a hash of the canonical serialization.
std::uint64_t scene_hash(const Scene& scene);

bool operator==(const Scene& a, const Scene& b);

struct QueryPair {
    Point s;
    Point t;
};

std::vector<QueryPair> load_query_batch(std::string_view text);
std::string save_query_batch(const std::vector<QueryPair>& pairs);

/// Random points of the closed free space (brute-force membership test).
/// Roughly one in five points reuses an obstacle vertex coordinate.
std::vector<Point> random_free_points(const Scene& scene, std::size_t count, std::uint64_t seed);

/// Brute-force free-space membership: inside bbox and not interior to any obstacle.
bool is_free_point(const Scene& scene, const Point& p);

}  // namespace l1sp
