#include "l1sp_cli/cli.hpp"

#include "l1sp/error.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace l1sp::cli {

std::string_view layer_name(Layer layer) {
    switch (layer) {
        case Layer::Obstacles: return "obstacles";
        case Layer::Cutlines: return "cutlines";
        case Layer::SteinerPoints: return "steiner_points";
        case Layer::Gateways: return "gateways";
        case Layer::Path: return "path";
        case Layer::HananGrid: return "hanan_grid";
    }
    return "?";
}

std::set<Layer> parse_layers(std::string_view text) {
    std::set<Layer> out;
    while (!text.empty()) {
        const auto comma = text.find(',');
        const std::string_view name = text.substr(0, comma);
        bool known = false;
        for (Layer l : {Layer::Obstacles, Layer::Cutlines, Layer::SteinerPoints, Layer::Gateways, Layer::Path,
                        Layer::HananGrid}) {
            if (layer_name(l) == name) {
                out.insert(l);
                known = true;
            }
        }
        if (!known) throw Error(ErrorCode::ParseError, "unknown layer '" + std::string(name) + "'");
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return out;
}

namespace {

constexpr double kCanvas = 1000.0;
constexpr double kMargin = 20.0;

class Canvas {
public:
    explicit Canvas(const Box& box) : box_(box) {
        const double span = static_cast<double>(std::max(box.x1 - box.x0, box.y1 - box.y0));
        scale_ = (kCanvas - 2 * kMargin) / std::max(span, 1.0);
    }
    std::string x(const Rational& v) const {
        return num(kMargin + (v.to_double() - static_cast<double>(box_.x0)) * scale_);
    }
    std::string y(const Rational& v) const {
        return num(kMargin + (static_cast<double>(box_.y1) - v.to_double()) * scale_);
    }
    std::string xy(const RPoint& p) const { return x(p.x) + "," + y(p.y); }
    std::string length(std::int64_t v) const { return num(static_cast<double>(v) * scale_); }

    static std::string num(double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3f", v);
        return buf;
    }

private:
    Box box_;
    double scale_ = 1;
};

void line(std::ostream& out, const Canvas& c, const RPoint& a, const RPoint& b) {
    out << "    <line x1=\"" << c.x(a.x) << "\" y1=\"" << c.y(a.y) << "\" x2=\"" << c.x(b.x) << "\" y2=\"" << c.y(b.y)
        << "\"/>\n";
}

void dot(std::ostream& out, const Canvas& c, const RPoint& p, const char* r) {
    out << "    <circle cx=\"" << c.x(p.x) << "\" cy=\"" << c.y(p.y) << "\" r=\"" << r << "\"/>\n";
}

void tree_lines(std::ostream& out, const Canvas& c, const CutLineTree& tree, const Box& box) {
    for (const CutNode& node : tree.nodes) {
        const Rational k(node.coord);
        if (tree.axis == Axis::Vertical) {
            line(out, c, RPoint(k, Rational(box.y0)), RPoint(k, Rational(box.y1)));
        } else {
            line(out, c, RPoint(Rational(box.x0), k), RPoint(Rational(box.x1), k));
        }
    }
}

}  // namespace

std::string render_svg(const Scene& scene, const RenderSpec& spec) {
    validate_scene(scene);
    const Box& box = scene.bbox;
    const Canvas c(box);
    const Point s = spec.s.value_or(Point{box.x0, box.y0});
    const Point t = spec.t.value_or(Point{box.x1, box.y1});
    const auto has = [&](Layer l) { return spec.layers.count(l) > 0; };
    const bool needs_index = has(Layer::Cutlines) || has(Layer::SteinerPoints) || has(Layer::Gateways) ||
                             has(Layer::Path);
    std::optional<LoadedIndex> index;
    if (needs_index) index = build_index(scene, spec.options);

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1000 1000\" width=\"1000\" height=\"1000\">\n";
    out << "  <rect x=\"" << c.x(Rational(box.x0)) << "\" y=\"" << c.y(Rational(box.y1)) << "\" width=\""
        << c.length(box.x1 - box.x0) << "\" height=\"" << c.length(box.y1 - box.y0)
        << "\" fill=\"white\" stroke=\"black\"/>\n";

    if (has(Layer::HananGrid)) {
        std::set<std::int64_t> xs, ys;
        for (const Polygon& poly : scene.obstacles) {
            for (const Point& p : poly.vertices) {
                xs.insert(p.x);
                ys.insert(p.y);
            }
        }
        out << "  <g id=\"hanan_grid\" stroke=\"#cccccc\" stroke-width=\"0.5\">\n";
        for (std::int64_t x : xs) line(out, c, RPoint(Rational(x), Rational(box.y0)), RPoint(Rational(x), Rational(box.y1)));
        for (std::int64_t y : ys) line(out, c, RPoint(Rational(box.x0), Rational(y)), RPoint(Rational(box.x1), Rational(y)));
        out << "  </g>\n";
    }
    if (has(Layer::Obstacles)) {
        out << "  <g id=\"obstacles\" stroke=\"black\" stroke-width=\"1\">\n";
        for (std::size_t i = 0; i < scene.obstacles.size(); ++i) {
            std::string fill = "#888888";
            if (scene.weighted()) {
                const Rational w = scene.weights[i];
                fill = w.is_infinite() ? "#444444" : (w == Rational(0) ? "#eeeeee" : "#aaaaaa");
            }
            out << "    <polygon fill=\"" << fill << "\" points=\"";
            for (std::size_t k = 0; k < scene.obstacles[i].size(); ++k) {
                out << (k ? " " : "") << c.xy(RPoint(scene.obstacles[i][k]));
            }
            out << "\"/>\n";
        }
        out << "  </g>\n";
    }
    if (has(Layer::Cutlines)) {
        out << "  <g id=\"cutlines\" stroke=\"#3366cc\" stroke-width=\"0.5\" stroke-dasharray=\"4,3\">\n";
        if (index->weighted) {
            tree_lines(out, c, index->weighted->tree(Axis::Vertical), box);
            tree_lines(out, c, index->weighted->tree(Axis::Horizontal), box);
        } else {
            tree_lines(out, c, index->plain->tree(), box);
        }
        out << "  </g>\n";
    }
    if (has(Layer::SteinerPoints)) {
        out << "  <g id=\"steiner_points\" fill=\"#cc3333\">\n";
        for (const GraphNode& node : index->graph().nodes) {
            if (node.kind != NodeKind::Vertex) dot(out, c, node.location, "2");
        }
        out << "  </g>\n";
    }
    if (has(Layer::Gateways)) {
        out << "  <g id=\"gateways\" fill=\"#33aa33\">\n";
        for (const Point& q : {s, t}) {
            const GatewaySet set = index->weighted ? weighted_gateways(q, *index->weighted)
                                                   : compute_gateways(q, index->plain->gateway_context());
            for (const GatewayEntry& e : set.entries) {
                dot(out, c, index->graph().nodes[static_cast<std::size_t>(e.node)].location, "4");
            }
        }
        out << "  </g>\n";
    }
    if (has(Layer::Path)) {
        const QueryResult r = index->query(s, t, true);
        out << "  <g id=\"path\" fill=\"none\" stroke=\"#ff8800\" stroke-width=\"2\">\n";
        out << "    <polyline points=\"";
        for (std::size_t k = 0; k < r.path.size(); ++k) out << (k ? " " : "") << c.xy(r.path[k]);
        out << "\"/>\n  </g>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace l1sp::cli
