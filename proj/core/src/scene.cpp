#include "l1sp/scene.hpp"

#include "l1sp/error.hpp"
#include "random_util.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace l1sp {

namespace {

using detail::Rng;

std::string vertex_name(std::size_t obstacle, std::size_t vertex, const Point& p) {
    return "obstacle " + std::to_string(obstacle) + " vertex " + std::to_string(vertex) + " " + to_string(p);
}

bool boxes_overlap(const Box& a, const Box& b) {
    return a.x0 <= b.x1 && b.x0 <= a.x1 && a.y0 <= b.y1 && b.y0 <= a.y1;
}

void validate_polygon(const Polygon& poly, std::size_t id) {
    const std::string name = "obstacle " + std::to_string(id);
    if (poly.size() < 3) throw Error(ErrorCode::MalformedPolygon, name + " has fewer than 3 vertices");
    const std::size_t k = poly.size();
    for (std::size_t i = 0; i < k; ++i) {
        if (poly[i] == poly[(i + 1) % k]) {
            throw Error(ErrorCode::MalformedPolygon, vertex_name(id, i, poly[i]) + " repeats the next vertex");
        }
    }
    for (std::size_t i = 0; i < k; ++i) {
        const Segment e{poly[i], poly[(i + 1) % k]};
        for (std::size_t j = i + 1; j < k; ++j) {
            const Segment f{poly[j], poly[(j + 1) % k]};
            const auto hit = segments_intersect(e, f);
            if (!hit) continue;
            const bool next = j == i + 1;
            const bool wrap = i == 0 && j + 1 == k;
            bool ok = false;
            if (hit.kind == SegmentIntersection::Kind::Point && (next || wrap)) {
                const Point shared = next ? e.b : e.a;
                ok = hit.first == RPoint(shared);
            }
            if (!ok) {
                throw Error(ErrorCode::MalformedPolygon,
                            name + " is not simple: edges " + std::to_string(i) + " and " + std::to_string(j) + " meet");
            }
        }
    }
    if (signed_area2(poly) <= 0) throw Error(ErrorCode::MalformedPolygon, name + " is not counterclockwise");
}

void check_coordinate(const Point& p, const std::string& what) {
    if (p.x <= -kCoordinateLimit || p.x >= kCoordinateLimit || p.y <= -kCoordinateLimit || p.y >= kCoordinateLimit) {
        throw Error(ErrorCode::CoordinateRange, what + " exceeds the coordinate limit");
    }
}

int ceil_log2(std::size_t v) {
    int r = 0;
    while ((std::size_t{1} << r) < v) ++r;
    return r;
}

int ceil_sqrt(int v) {
    int r = 0;
    while (r * r < v) ++r;
    return r;
}

}  // namespace

std::string_view scene_mode_name(SceneMode mode) {
    return mode == SceneMode::Polygonal ? "polygonal" : "rectilinear-weighted";
}

std::size_t Scene::vertex_count() const {
    std::size_t n = 0;
    for (const Polygon& p : obstacles) n += p.size();
    return n;
}

SceneStats validate_scene(const Scene& scene) {
    const Box& box = scene.bbox;
    check_coordinate({box.x0, box.y0}, "bbox");
    check_coordinate({box.x1, box.y1}, "bbox");
    if (box.x0 >= box.x1 || box.y0 >= box.y1) throw Error(ErrorCode::OutOfBbox, "bbox is empty");

    const std::size_t h = scene.obstacles.size();
    if (scene.weighted()) {
        if (scene.weights.size() != h) throw Error(ErrorCode::ParseError, "weighted scene needs one weight per obstacle");
        for (std::size_t i = 0; i < h; ++i) {
            if (scene.weights[i].sign() < 0) {
                throw Error(ErrorCode::NegativeWeight, "obstacle " + std::to_string(i) + " has negative weight");
            }
        }
    } else if (!scene.weights.empty()) {
        throw Error(ErrorCode::ParseError, "polygonal scene must not carry weights");
    }

    std::vector<Box> boxes;
    boxes.reserve(h);
    for (std::size_t i = 0; i < h; ++i) {
        const Polygon& poly = scene.obstacles[i];
        for (std::size_t v = 0; v < poly.size(); ++v) check_coordinate(poly[v], vertex_name(i, v, poly[v]));
        validate_polygon(poly, i);
        for (std::size_t v = 0; v < poly.size(); ++v) {
            if (!box.strictly_contains(poly[v])) {
                throw Error(ErrorCode::OutOfBbox, vertex_name(i, v, poly[v]) + " is not strictly inside the bbox");
            }
        }
        if (scene.weighted()) {
            for (std::size_t v = 0; v < poly.size(); ++v) {
                const Point& a = poly[v];
                const Point& b = poly.vertex(static_cast<std::ptrdiff_t>(v) + 1);
                if (a.x != b.x && a.y != b.y) {
                    throw Error(ErrorCode::NonRectilinearEdge,
                                "obstacle " + std::to_string(i) + " edge " + std::to_string(v) + " is not axis-parallel");
                }
            }
        }
        boxes.push_back(bounding_box(poly));
    }

    if (!scene.weighted()) {
        std::map<std::int64_t, std::pair<std::size_t, std::size_t>> xs, ys;
        for (std::size_t i = 0; i < h; ++i) {
            const Polygon& poly = scene.obstacles[i];
            for (std::size_t v = 0; v < poly.size(); ++v) {
                for (auto* coords : {&xs, &ys}) {
                    const std::int64_t c = coords == &xs ? poly[v].x : poly[v].y;
                    const auto [it, fresh] = coords->emplace(c, std::make_pair(i, v));
                    if (!fresh) {
                        const auto [oi, ov] = it->second;
                        throw Error(ErrorCode::GeneralPositionViolation,
                                    vertex_name(i, v, poly[v]) + " shares its " + (coords == &xs ? "x" : "y") +
                                        "-coordinate with " + vertex_name(oi, ov, scene.obstacles[oi][ov]));
                    }
                }
            }
        }
    }

    for (std::size_t i = 0; i < h; ++i) {
        for (std::size_t j = i + 1; j < h; ++j) {
            if (!boxes_overlap(boxes[i], boxes[j])) continue;
            const Polygon& a = scene.obstacles[i];
            const Polygon& b = scene.obstacles[j];
            auto violation = [&] {
                return Error(ErrorCode::DisjointnessViolation,
                             "obstacles " + std::to_string(i) + " and " + std::to_string(j) + " intersect");
            };
            for (std::size_t u = 0; u < a.size(); ++u) {
                const Segment e{a[u], a.vertex(static_cast<std::ptrdiff_t>(u) + 1)};
                for (std::size_t v = 0; v < b.size(); ++v) {
                    if (segments_intersect(e, Segment{b[v], b.vertex(static_cast<std::ptrdiff_t>(v) + 1)})) {
                        throw violation();
                    }
                }
            }
            if (point_in_polygon(a[0], b) != PointLocation::Exterior ||
                point_in_polygon(b[0], a) != PointLocation::Exterior) {
                throw violation();
            }
        }
    }

    SceneStats stats;
    stats.n = scene.vertex_count();
    stats.h = h;
    stats.levels = ceil_log2(std::max<std::size_t>(stats.n, 2));
    stats.super_levels = ceil_sqrt(stats.levels);
    return stats;
}

Box default_bbox(const std::vector<Polygon>& obstacles) {
    if (obstacles.empty()) return Box{0, 0, 1, 1};
    Box box = bounding_box(obstacles.front());
    for (const Polygon& p : obstacles) {
        const Box b = bounding_box(p);
        box.x0 = std::min(box.x0, b.x0);
        box.y0 = std::min(box.y0, b.y0);
        box.x1 = std::max(box.x1, b.x1);
        box.y1 = std::max(box.y1, b.y1);
    }
    const std::int64_t mx = std::max<std::int64_t>(1, (box.x1 - box.x0 + 9) / 10);
    const std::int64_t my = std::max<std::int64_t>(1, (box.y1 - box.y0 + 9) / 10);
    return Box{box.x0 - mx, box.y0 - my, box.x1 + mx, box.y1 + my};
}

// ---------------------------------------------------------------------------
// Generation

namespace {

struct Layout {
    std::size_t cols = 1;
    std::size_t rows = 1;
};

Layout grid_layout(std::size_t h) {
    Layout l;
    while (l.cols * l.cols < h) ++l.cols;
    l.rows = (h + l.cols - 1) / l.cols;
    return l;
}

// Star-shaped polygon around `center`; coordinates drawn so that no x or y
// value is reused across the whole scene.
bool star_polygon(Rng& rng, Point center, double radius, std::size_t k, std::set<std::int64_t>& used_x,
                  std::set<std::int64_t>& used_y, Polygon& out) {
    std::vector<double> angles(k);
    for (double& a : angles) a = rng.unit() * 2 * M_PI;
    std::sort(angles.begin(), angles.end());
    out.vertices.clear();
    std::vector<std::int64_t> new_x, new_y;
    for (double angle : angles) {
        bool placed = false;
        for (int attempt = 0; attempt < 32 && !placed; ++attempt) {
            const double r = radius * (0.35 + 0.65 * rng.unit());
            const double a = angle + (attempt == 0 ? 0.0 : (rng.unit() - 0.5) * 1e-3);
            const Point p{center.x + std::llround(r * std::cos(a)), center.y + std::llround(r * std::sin(a))};
            if (used_x.count(p.x) || used_y.count(p.y)) continue;
            if (std::find(new_x.begin(), new_x.end(), p.x) != new_x.end()) continue;
            if (std::find(new_y.begin(), new_y.end(), p.y) != new_y.end()) continue;
            new_x.push_back(p.x);
            new_y.push_back(p.y);
            out.vertices.push_back(p);
            placed = true;
        }
        if (!placed) return false;
    }
    try {
        validate_polygon(out, 0);
    } catch (const Error&) {
        return false;
    }
    used_x.insert(new_x.begin(), new_x.end());
    used_y.insert(new_y.begin(), new_y.end());
    return true;
}

Scene generate_polygonal(std::size_t n, std::size_t h, Rng& rng, const GeneratorOptions& options) {
    const Layout layout = grid_layout(h);
    const std::int64_t cell = std::max<std::int64_t>(64, 16 * static_cast<std::int64_t>(n));
    std::set<std::int64_t> used_x, used_y;
    Scene scene;
    scene.mode = SceneMode::Polygonal;
    for (std::size_t i = 0; i < h; ++i) {
        const std::size_t k = n / h + (i < n % h ? 1 : 0);
        const auto col = static_cast<std::int64_t>(i % layout.cols);
        const auto row = static_cast<std::int64_t>(i / layout.cols);
        const double radius = 0.45 * static_cast<double>(cell) * (0.5 + 0.5 * rng.unit());
        const Point center{col * cell + cell / 2, row * cell + cell / 2};
        Polygon poly;
        bool ok = false;
        for (int attempt = 0; attempt < options.max_retries && !ok; ++attempt) {
            ok = star_polygon(rng, center, radius, k, used_x, used_y, poly);
        }
        if (!ok) throw Error(ErrorCode::InfeasibleParameters, "could not place obstacle " + std::to_string(i));
        scene.obstacles.push_back(std::move(poly));
    }
    return scene;
}

// Rectangle with optional corner notches (+2 vertices each) and rectangular
// dents along the edges (+4 vertices each), in local coordinates.
Polygon notched_rectangle(Rng& rng, std::size_t k) {
    const std::size_t extra = (k - 4) / 2;  // notches + 2 * dents
    std::vector<std::size_t> notch_options;
    for (std::size_t c = extra % 2; c <= std::min<std::size_t>(4, extra); c += 2) notch_options.push_back(c);
    const std::size_t notches = notch_options[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(notch_options.size()) - 1))];
    const std::size_t dents = (extra - notches) / 2;

    std::array<bool, 4> notched{};
    {
        std::array<int, 4> order{0, 1, 2, 3};
        for (int i = 3; i > 0; --i) std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(rng.uniform(0, i))]);
        for (std::size_t i = 0; i < notches; ++i) notched[static_cast<std::size_t>(order[i])] = true;
    }
    std::array<std::size_t, 4> per_edge{};  // bottom, right, top, left
    for (std::size_t d = 0; d < dents; ++d) ++per_edge[static_cast<std::size_t>(rng.uniform(0, 3))];

    const std::int64_t u = rng.uniform(2, 4);
    const std::int64_t width = 4 * u * static_cast<std::int64_t>(std::max(per_edge[0], per_edge[2]) + 2) + rng.uniform(0, u);
    const std::int64_t height = 4 * u * static_cast<std::int64_t>(std::max(per_edge[1], per_edge[3]) + 2) + rng.uniform(0, u);

    struct Dent {
        std::int64_t lo, hi, depth;
    };
    auto make_dents = [&](std::size_t count) {
        std::vector<Dent> out;
        for (std::size_t j = 0; j < count; ++j) {
            const std::int64_t base = 4 * u * static_cast<std::int64_t>(j) + 3 * u;
            const std::int64_t lo = base + rng.uniform(0, u - 1);
            const std::int64_t hi = base + 2 * u - rng.uniform(0, u - 1);
            out.push_back({lo, hi, rng.uniform(1, 2 * u - 1)});
        }
        return out;
    };
    const std::vector<Dent> bottom = make_dents(per_edge[0]);
    const std::vector<Dent> right = make_dents(per_edge[1]);
    const std::vector<Dent> top = make_dents(per_edge[2]);
    const std::vector<Dent> left = make_dents(per_edge[3]);
    auto notch = [&] { return std::make_pair(rng.uniform(1, u), rng.uniform(1, u)); };

    std::vector<Point> v;
    if (notched[0]) {
        const auto [a, b] = notch();
        v.insert(v.end(), {{0, b}, {a, b}, {a, 0}});
    } else {
        v.push_back({0, 0});
    }
    for (const Dent& d : bottom) v.insert(v.end(), {{d.lo, 0}, {d.lo, d.depth}, {d.hi, d.depth}, {d.hi, 0}});
    if (notched[1]) {
        const auto [a, b] = notch();
        v.insert(v.end(), {{width - a, 0}, {width - a, b}, {width, b}});
    } else {
        v.push_back({width, 0});
    }
    for (const Dent& d : right) {
        v.insert(v.end(), {{width, d.lo}, {width - d.depth, d.lo}, {width - d.depth, d.hi}, {width, d.hi}});
    }
    if (notched[2]) {
        const auto [a, b] = notch();
        v.insert(v.end(), {{width, height - b}, {width - a, height - b}, {width - a, height}});
    } else {
        v.push_back({width, height});
    }
    for (auto it = top.rbegin(); it != top.rend(); ++it) {
        v.insert(v.end(), {{it->hi, height}, {it->hi, height - it->depth}, {it->lo, height - it->depth}, {it->lo, height}});
    }
    if (notched[3]) {
        const auto [a, b] = notch();
        v.insert(v.end(), {{a, height}, {a, height - b}, {0, height - b}});
    } else {
        v.push_back({0, height});
    }
    for (auto it = left.rbegin(); it != left.rend(); ++it) {
        v.insert(v.end(), {{0, it->hi}, {it->depth, it->hi}, {it->depth, it->lo}, {0, it->lo}});
    }
    return Polygon{std::move(v)};
}

Scene generate_weighted(std::size_t n, std::size_t h, Rng& rng, const GeneratorOptions& options) {
    if (n % 2 != 0 || n < 4 * h) {
        throw Error(ErrorCode::InfeasibleParameters, "weighted scenes need an even n >= 4h");
    }
    if (options.weight_palette.empty()) throw Error(ErrorCode::InfeasibleParameters, "empty weight palette");
    const std::size_t units = (n - 4 * h) / 2;
    std::vector<Polygon> shapes;
    std::int64_t cell = 0;
    for (std::size_t i = 0; i < h; ++i) {
        const std::size_t extra = units / h + (i < units % h ? 1 : 0);
        shapes.push_back(notched_rectangle(rng, 4 + 2 * extra));
        const Box b = bounding_box(shapes.back());
        cell = std::max({cell, b.x1, b.y1});
    }
    const Layout layout = grid_layout(h);
    cell += 2;
    Scene scene;
    scene.mode = SceneMode::RectilinearWeighted;
    for (std::size_t i = 0; i < h; ++i) {
        const Box b = bounding_box(shapes[i]);
        const auto col = static_cast<std::int64_t>(i % layout.cols);
        const auto row = static_cast<std::int64_t>(i / layout.cols);
        const std::int64_t dx = col * cell + rng.uniform(0, cell - 1 - b.x1);
        const std::int64_t dy = row * cell + rng.uniform(0, cell - 1 - b.y1);
        for (Point& p : shapes[i].vertices) p = {p.x + dx, p.y + dy};
        scene.obstacles.push_back(std::move(shapes[i]));
        const auto pick = rng.uniform(0, static_cast<std::int64_t>(options.weight_palette.size()) - 1);
        scene.weights.push_back(options.weight_palette[static_cast<std::size_t>(pick)]);
    }
    return scene;
}

}  // namespace

Scene generate_scene(std::size_t n, std::size_t h, SceneMode mode, std::uint64_t seed, const GeneratorOptions& options) {
    if (h < 1 || n < 3 * h) throw Error(ErrorCode::InfeasibleParameters, "need h >= 1 and n >= 3h");
    Rng rng(seed);
    Scene scene = mode == SceneMode::Polygonal ? generate_polygonal(n, h, rng, options)
                                               : generate_weighted(n, h, rng, options);
    scene.bbox = default_bbox(scene.obstacles);
    validate_scene(scene);
    return scene;
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

using nlohmann::json;

[[noreturn]] void parse_fail(const std::string& msg) { throw Error(ErrorCode::ParseError, msg); }

std::string position_of(std::string_view text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

json parse_json(std::string_view text) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        parse_fail(position_of(text, e.byte == 0 ? 0 : e.byte - 1) + ": " + e.what());
    }
}

std::int64_t as_int(const json& v, const char* what) {
    if (!v.is_number_integer()) parse_fail(std::string(what) + " must be an integer");
    return v.get<std::int64_t>();
}

Point as_point(const json& v, const char* what) {
    if (!v.is_array() || v.size() != 2) parse_fail(std::string(what) + " must be [x, y]");
    return {as_int(v[0], what), as_int(v[1], what)};
}

std::string point_text(const Point& p) { return "[" + std::to_string(p.x) + ", " + std::to_string(p.y) + "]"; }

}  // namespace

Scene load_scene(std::string_view text) {
    const json doc = parse_json(text);
    if (!doc.is_object()) parse_fail("scene must be a JSON object");
    Scene scene;
    if (!doc.contains("mode") || !doc["mode"].is_string()) parse_fail("missing \"mode\"");
    const std::string mode = doc["mode"].get<std::string>();
    if (mode == "polygonal") {
        scene.mode = SceneMode::Polygonal;
    } else if (mode == "rectilinear-weighted") {
        scene.mode = SceneMode::RectilinearWeighted;
    } else {
        parse_fail("unknown mode \"" + mode + "\"");
    }
    if (!doc.contains("obstacles") || !doc["obstacles"].is_array()) parse_fail("missing \"obstacles\" array");
    for (const json& ob : doc["obstacles"]) {
        if (!ob.is_object() || !ob.contains("vertices") || !ob["vertices"].is_array()) {
            parse_fail("obstacle needs a \"vertices\" array");
        }
        Polygon poly;
        for (const json& v : ob["vertices"]) poly.vertices.push_back(as_point(v, "vertex"));
        scene.obstacles.push_back(std::move(poly));
        const json weight = ob.contains("weight") ? ob["weight"] : json();
        if (scene.weighted()) {
            if (weight.is_string()) {
                scene.weights.push_back(Rational::parse(weight.get<std::string>()));
            } else if (weight.is_number_integer()) {
                scene.weights.push_back(Rational(weight.get<std::int64_t>()));
            } else {
                parse_fail("weighted obstacle needs a weight string");
            }
        } else if (!weight.is_null()) {
            parse_fail("polygonal obstacles must have a null weight");
        }
    }
    if (doc.contains("bbox")) {
        const json& b = doc["bbox"];
        if (!b.is_array() || b.size() != 4) parse_fail("bbox must be [x0, y0, x1, y1]");
        scene.bbox = Box{as_int(b[0], "bbox"), as_int(b[1], "bbox"), as_int(b[2], "bbox"), as_int(b[3], "bbox")};
    } else {
        scene.bbox = default_bbox(scene.obstacles);
    }
    validate_scene(scene);
    return scene;
}

std::string save_scene(const Scene& scene) {
    std::ostringstream out;
    out << "{\n  \"mode\": \"" << scene_mode_name(scene.mode) << "\",\n";
    out << "  \"bbox\": [" << scene.bbox.x0 << ", " << scene.bbox.y0 << ", " << scene.bbox.x1 << ", "
        << scene.bbox.y1 << "],\n";
    out << "  \"obstacles\": [";
    for (std::size_t i = 0; i < scene.obstacles.size(); ++i) {
        out << (i == 0 ? "\n" : ",\n") << "    {\"vertices\": [";
        const Polygon& poly = scene.obstacles[i];
        for (std::size_t v = 0; v < poly.size(); ++v) out << (v == 0 ? "" : ", ") << point_text(poly[v]);
        out << "], \"weight\": ";
        if (scene.weighted()) {
            out << '"' << scene.weights[i].to_string() << '"';
        } else {
            out << "null";
        }
        out << "}";
    }
    out << (scene.obstacles.empty() ? "]\n}\n" : "\n  ]\n}\n");
    return out.str();
}

std::uint64_t scene_hash(const Scene& scene) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (const char c : save_scene(scene)) {
        hash ^= static_cast<unsigned char>(c);
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

bool operator==(const Scene& a, const Scene& b) {
    if (a.mode != b.mode || !(a.bbox == b.bbox) || a.weights != b.weights) return false;
    if (a.obstacles.size() != b.obstacles.size()) return false;
    for (std::size_t i = 0; i < a.obstacles.size(); ++i) {
        if (a.obstacles[i].vertices != b.obstacles[i].vertices) return false;
    }
    return true;
}

std::vector<QueryPair> load_query_batch(std::string_view text) {
    const json doc = parse_json(text);
    if (!doc.is_array()) parse_fail("query batch must be a JSON array");
    std::vector<QueryPair> pairs;
    for (const json& q : doc) {
        if (!q.is_object() || !q.contains("s") || !q.contains("t")) parse_fail("query needs \"s\" and \"t\"");
        pairs.push_back({as_point(q["s"], "s"), as_point(q["t"], "t")});
    }
    return pairs;
}

std::string save_query_batch(const std::vector<QueryPair>& pairs) {
    std::ostringstream out;
    out << "[";
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        out << (i == 0 ? "\n" : ",\n") << "  {\"s\": " << point_text(pairs[i].s) << ", \"t\": " << point_text(pairs[i].t)
            << "}";
    }
    out << (pairs.empty() ? "]\n" : "\n]\n");
    return out.str();
}

bool is_free_point(const Scene& scene, const Point& p) {
    if (!scene.bbox.contains(p)) return false;
    for (const Polygon& poly : scene.obstacles) {
        const Box b = bounding_box(poly);
        if (!b.contains(p)) continue;
        if (point_in_polygon(p, poly) == PointLocation::Interior) return false;
    }
    return true;
}

std::vector<Point> random_free_points(const Scene& scene, std::size_t count, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Point> vertices;
    for (const Polygon& poly : scene.obstacles) vertices.insert(vertices.end(), poly.vertices.begin(), poly.vertices.end());
    std::vector<Point> out;
    out.reserve(count);
    while (out.size() < count) {
        Point p{rng.uniform(scene.bbox.x0, scene.bbox.x1), rng.uniform(scene.bbox.y0, scene.bbox.y1)};
        if (!vertices.empty() && rng.chance(0.2)) {
            const Point& v = vertices[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(vertices.size()) - 1))];
            if (rng.chance(0.5)) {
                p.x = v.x;
            } else {
                p.y = v.y;
            }
        }
        if (is_free_point(scene, p)) out.push_back(p);
    }
    return out;
}

}  // namespace l1sp
