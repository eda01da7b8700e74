#include "l1sp_cli/cli.hpp"

#include "l1sp/error.hpp"

#include <cstdio>

namespace l1sp::cli {

using nlohmann::json;

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::OutOfBbox:
        case ErrorCode::PointInsideObstacle:
            return kQueryError;
        default:
            return kInvalidInput;
    }
}

Point parse_point(std::string_view text) {
    const auto comma = text.find(',');
    if (comma == std::string_view::npos) throw Error(ErrorCode::ParseError, "expected x,y but got '" + std::string(text) + "'");
    try {
        std::size_t used_x = 0, used_y = 0;
        const std::string xs(text.substr(0, comma)), ys(text.substr(comma + 1));
        const long long x = std::stoll(xs, &used_x);
        const long long y = std::stoll(ys, &used_y);
        if (used_x != xs.size() || used_y != ys.size()) throw std::invalid_argument("trailing characters");
        return {x, y};
    } catch (const std::logic_error&) {
        throw Error(ErrorCode::ParseError, "expected x,y but got '" + std::string(text) + "'");
    }
}

json query_result_json(const QueryResult& result) {
    json path = json::array();
    for (const RPoint& p : result.path) path.push_back({p.x.to_string(), p.y.to_string()});
    return {{"length", result.length.to_string()},
            {"kind", std::string(query_kind_name(result.kind))},
            {"gateway_count", result.gateway_count},
            {"path", std::move(path)}};
}

QueryResult LoadedIndex::query(const Point& s, const Point& t, bool want_path) const {
    return weighted ? weighted_query(*weighted, s, t, want_path) : l1sp::query(*plain, s, t, want_path);
}

std::vector<BatchResult> LoadedIndex::batch(const std::vector<QueryPair>& pairs, bool want_path,
                                            unsigned threads) const {
    return weighted ? weighted_batch_query(*weighted, pairs, want_path, threads)
                    : batch_query(*plain, pairs, want_path, threads);
}

std::uint64_t graph_digest(const PathGraph& graph) {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&](std::string_view bytes) {
        for (unsigned char c : bytes) {
            h ^= c;
            h *= 1099511628211ULL;
        }
        h ^= 0xff;
        h *= 1099511628211ULL;
    };
    mix(graph_variant_name(graph.variant));
    for (std::size_t u = 0; u < graph.node_count(); ++u) {
        mix(to_string(graph.nodes[u].location));
        mix(node_kind_name(graph.nodes[u].kind));
        for (const GraphEdge& e : graph.adjacency[u]) {
            mix(std::to_string(e.to));
            mix(e.length.to_string());
        }
    }
    return h;
}

LoadedIndex build_index(const Scene& scene, const IndexOptions& options) {
    LoadedIndex out;
    out.file.weighted = scene.weighted();
    out.file.options = options;
    out.file.scene = scene;
    if (scene.weighted()) {
        out.weighted = preprocess_weighted(scene, options);
    } else {
        out.plain = preprocess(scene, options);
    }
    out.file.nodes = out.graph().node_count();
    out.file.edges = out.graph().edge_count();
    out.file.graph_digest = graph_digest(out.graph());
    return out;
}

namespace {

std::string hex(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::string_view strategy_name(GatewayStrategy s) {
    return s == GatewayStrategy::Cascade ? "cascade" : "binary_search";
}

GatewayStrategy parse_strategy(std::string_view text) {
    if (text == "cascade") return GatewayStrategy::Cascade;
    if (text == "binary_search") return GatewayStrategy::BinarySearch;
    throw Error(ErrorCode::FormatMismatch, "unknown gateway strategy '" + std::string(text) + "'");
}

}  // namespace

std::string save_index(const LoadedIndex& index) {
    const IndexFile& f = index.file;
    const json doc = {
        {"format", "l1sp-index"},
        {"version", kIndexFormatVersion},
        {"scene_hash", hex(scene_hash(f.scene))},
        {"kind", f.weighted ? "weighted" : "unweighted"},
        {"graph_mode", std::string(graph_mode_name(f.options.mode))},
        {"policy", std::string(apsp_policy_name(f.options.policy))},
        {"strategy", std::string(strategy_name(f.options.strategy))},
        {"memory_budget", f.options.memory_budget},
        {"nodes", f.nodes},
        {"edges", f.edges},
        {"graph_digest", hex(f.graph_digest)},
        {"scene", json::parse(save_scene(f.scene))},
    };
    return doc.dump(1) + "\n";
}

LoadedIndex load_index(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::FormatMismatch, std::string("index file is not JSON: ") + e.what());
    }
    auto mismatch = [](const std::string& what) { return Error(ErrorCode::FormatMismatch, what); };
    try {
        if (!doc.is_object() || doc.value("format", "") != "l1sp-index") throw mismatch("not an l1sp index file");
        const int version = doc.at("version").get<int>();
        if (version != kIndexFormatVersion) {
            throw mismatch("index format version " + std::to_string(version) + ", expected " +
                           std::to_string(kIndexFormatVersion));
        }
        const Scene scene = load_scene(doc.at("scene").dump());
        if (hex(scene_hash(scene)) != doc.at("scene_hash").get<std::string>()) {
            throw mismatch("scene hash does not match the embedded scene");
        }
        const bool weighted = doc.at("kind").get<std::string>() == "weighted";
        if (weighted != scene.weighted()) throw mismatch("index kind does not match the scene mode");
        IndexOptions options;
        options.mode = parse_graph_mode(doc.at("graph_mode").get<std::string>());
        options.policy = parse_apsp_policy(doc.at("policy").get<std::string>());
        options.strategy = parse_strategy(doc.at("strategy").get<std::string>());
        options.memory_budget = doc.at("memory_budget").get<std::uint64_t>();
        LoadedIndex out = build_index(scene, options);
        if (out.file.nodes != doc.at("nodes").get<std::size_t>() ||
            out.file.edges != doc.at("edges").get<std::size_t>() ||
            hex(out.file.graph_digest) != doc.at("graph_digest").get<std::string>()) {
            throw mismatch("rebuilt graph differs from the one recorded in the index file");
        }
        return out;
    } catch (const json::exception& e) {
        throw mismatch(std::string("malformed index file: ") + e.what());
    }
}

}  // namespace l1sp::cli
