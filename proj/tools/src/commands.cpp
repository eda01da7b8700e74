#include "l1sp_cli/cli.hpp"

#include "l1sp/error.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <ostream>
#include <sstream>

namespace l1sp::cli {

using nlohmann::json;

namespace {

std::string read_text(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream file(path);
    if (!file) throw Error(ErrorCode::ParseError, "cannot write " + path);
    file << text;
}

SceneMode parse_scene_mode(const std::string& text) {
    if (text == scene_mode_name(SceneMode::Polygonal)) return SceneMode::Polygonal;
    if (text == scene_mode_name(SceneMode::RectilinearWeighted) || text == "weighted") {
        return SceneMode::RectilinearWeighted;
    }
    throw Error(ErrorCode::ParseError, "unknown scene mode '" + text + "'");
}

GatewayStrategy parse_strategy(const std::string& text) {
    if (text == "cascade") return GatewayStrategy::Cascade;
    if (text == "binary_search") return GatewayStrategy::BinarySearch;
    throw Error(ErrorCode::ParseError, "unknown gateway strategy '" + text + "'");
}

template <class T>
std::vector<T> split_list(const std::string& text, T (*parse)(const std::string&)) {
    std::vector<T> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(parse(item));
    }
    return out;
}

std::size_t parse_size(const std::string& s) {
    try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return static_cast<std::size_t>(v);
    } catch (const std::logic_error&) {
        throw Error(ErrorCode::ParseError, "expected a non-negative integer but got '" + s + "'");
    }
}

std::string identity(const std::string& s) { return s; }

struct Args {
    // generate
    std::size_t n = 0;
    std::size_t h = 0;
    std::string scene_mode = "polygonal";
    std::uint64_t seed = 1;
    // shared
    std::string input;
    std::string input2;
    std::string out;
    std::string graph_mode = "g_e";
    std::string policy = "on_demand";
    std::string strategy = "cascade";
    std::string s;
    std::string t;
    bool path = false;
    unsigned threads = 1;
    // check
    CheckOptions check;
    std::string check_out_dir = ".";
    std::string check_scene;
    std::string check_pairs;
    // bench
    std::string bench_ns = "256,512,1024,2048,4096,8192";
    std::string bench_modes = "g_old,g_e";
    std::size_t bench_h = 8;
    std::size_t bench_queries = 200;
    // render
    std::string layers = "obstacles,path";
};

IndexOptions index_options(const Args& a) {
    IndexOptions opts;
    opts.mode = parse_graph_mode(a.graph_mode);
    opts.policy = parse_apsp_policy(a.policy);
    opts.strategy = parse_strategy(a.strategy);
    return opts;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Args a;
    CLI::App app{"L1 shortest paths among polygonal obstacles", "l1sp"};
    app.set_help_flag("--help", "Print help");
    app.require_subcommand(1);

    auto* generate = app.add_subcommand("generate", "Write a random scene");
    generate->add_option("--n", a.n, "Total vertex count")->required();
    generate->add_option("--h", a.h, "Obstacle count")->required();
    generate->add_option("--mode", a.scene_mode, "polygonal or rectilinear-weighted");
    generate->add_option("--seed", a.seed, "Generator seed");
    generate->add_option("--out", a.out, "Output file (stdout if omitted)");

    auto* build = app.add_subcommand("build", "Preprocess a scene into an index file");
    build->add_option("scene", a.input, "Scene file")->required();
    build->add_option("--mode", a.graph_mode, "g_old or g_e");
    build->add_option("--policy", a.policy, "on_demand or full");
    build->add_option("--strategy", a.strategy, "cascade or binary_search");
    build->add_option("--out", a.out, "Index file")->required();

    auto* query_cmd = app.add_subcommand("query", "Answer one query");
    query_cmd->add_option("index", a.input, "Index file")->required();
    query_cmd->add_option("--s", a.s, "Source x,y")->required();
    query_cmd->add_option("--t", a.t, "Target x,y")->required();
    query_cmd->add_flag("--path", a.path, "Include the path");

    auto* batch = app.add_subcommand("batch", "Answer a query batch file");
    batch->add_option("index", a.input, "Index file")->required();
    batch->add_option("queries", a.input2, "Query batch file")->required();
    batch->add_option("--threads", a.threads, "Worker threads");
    batch->add_flag("--path", a.path, "Include paths");
    batch->add_option("--out", a.out, "Output file (stdout if omitted)");

    auto* check = app.add_subcommand("check", "Cross-check the engine against the oracles");
    check->add_option("--scenes", a.check.scenes, "Polygonal scenes");
    check->add_option("--n-min", a.check.n_min, "Smallest vertex count");
    check->add_option("--n-max", a.check.n_max, "Largest vertex count");
    check->add_option("--h-max", a.check.h_max, "Largest obstacle count");
    check->add_option("--queries", a.check.queries, "Query pairs per scene");
    check->add_option("--seed", a.check.seed, "Corpus seed");
    check->add_option("--weighted-scenes", a.check.weighted_scenes, "Weighted rectilinear scenes");
    check->add_option("--full-max-nodes", a.check.full_max_nodes, "Largest graph that gets a FULL table");
    check->add_option("--out-dir", a.check_out_dir, "Where reproducer files go");
    check->add_option("--scene", a.check_scene, "Replay this scene file");
    check->add_option("--pairs", a.check_pairs, "Replay these query pairs");

    auto* bench = app.add_subcommand("bench", "Build size/time and query latency CSV");
    bench->add_option("--n", a.bench_ns, "Comma-separated vertex counts");
    bench->add_option("--h", a.bench_h, "Obstacle count");
    bench->add_option("--queries", a.bench_queries, "Queries per scene");
    bench->add_option("--seed", a.seed, "Generator seed");
    bench->add_option("--modes", a.bench_modes, "Comma-separated g_old, g_e, weighted");
    bench->add_option("--policy", a.policy, "on_demand or full");
    bench->add_option("--out", a.out, "Output file (stdout if omitted)");

    auto* render = app.add_subcommand("render", "Draw a scene as SVG");
    render->add_option("scene", a.input, "Scene file")->required();
    render->add_option("--layers", a.layers,
                       "Comma-separated obstacles, cutlines, steiner_points, gateways, path, hanan_grid");
    render->add_option("--s", a.s, "Path source x,y (bbox lower-left if omitted)");
    render->add_option("--t", a.t, "Path target x,y (bbox upper-right if omitted)");
    render->add_option("--mode", a.graph_mode, "g_old or g_e");
    render->add_option("--out", a.out, "Output file (stdout if omitted)");

    std::vector<std::string> argv_store{"l1sp"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const std::string& s : argv_store) argv.push_back(s.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n" << app.help();
        return kUsage;
    }

    try {
        if (*generate) {
            const Scene scene = generate_scene(a.n, a.h, parse_scene_mode(a.scene_mode), a.seed);
            write_text(a.out, save_scene(scene), out);
        } else if (*build) {
            const LoadedIndex index = build_index(load_scene(read_text(a.input)), index_options(a));
            write_text(a.out, save_index(index), out);
            err << "nodes " << index.file.nodes << ", edges " << index.file.edges << "\n";
        } else if (*query_cmd) {
            const LoadedIndex index = load_index(read_text(a.input));
            json doc = query_result_json(index.query(parse_point(a.s), parse_point(a.t), a.path));
            if (!a.path) doc.erase("path");
            out << doc.dump() << "\n";
        } else if (*batch) {
            const LoadedIndex index = load_index(read_text(a.input));
            const auto pairs = load_query_batch(read_text(a.input2));
            const auto results = index.batch(pairs, a.path, std::max(1u, a.threads));
            json doc = json::array();
            bool any_error = false;
            for (std::size_t i = 0; i < results.size(); ++i) {
                json item;
                if (results[i].result) {
                    item = query_result_json(*results[i].result);
                    if (!a.path) item.erase("path");
                } else {
                    any_error = true;
                    item["error"] = results[i].code ? std::string(error_code_name(*results[i].code)) : "INTERNAL";
                    item["message"] = results[i].error;
                }
                item["s"] = {pairs[i].s.x, pairs[i].s.y};
                item["t"] = {pairs[i].t.x, pairs[i].t.y};
                doc.push_back(std::move(item));
            }
            write_text(a.out, doc.dump(1) + "\n", out);
            if (any_error) return kQueryError;
        } else if (*check) {
            CheckOptions opts = a.check;
            opts.out_dir = a.check_out_dir;
            if (!a.check_scene.empty()) opts.scene_file = a.check_scene;
            if (!a.check_pairs.empty()) opts.pairs_file = a.check_pairs;
            const CheckReport report = run_check(opts, err);
            out << "scenes " << report.scenes << " pairs " << report.pairs << " mismatches "
                << report.failures.size() << "\n";
            if (!report.failures.empty()) return kCheckMismatch;
        } else if (*bench) {
            BenchOptions opts;
            opts.ns = split_list<std::size_t>(a.bench_ns, parse_size);
            opts.modes = split_list<std::string>(a.bench_modes, identity);
            opts.h = a.bench_h;
            opts.queries = a.bench_queries;
            opts.seed = a.seed;
            opts.policy = parse_apsp_policy(a.policy);
            std::ostringstream csv;
            csv << kBenchHeader << "\n";
            for (const BenchRow& row : run_bench(opts, &err)) csv << bench_csv_row(row) << "\n";
            write_text(a.out, csv.str(), out);
        } else if (*render) {
            RenderSpec spec;
            spec.layers = parse_layers(a.layers);
            if (!a.s.empty()) spec.s = parse_point(a.s);
            if (!a.t.empty()) spec.t = parse_point(a.t);
            spec.options.mode = parse_graph_mode(a.graph_mode);
            write_text(a.out, render_svg(load_scene(read_text(a.input)), spec), out);
        }
    } catch (const Error& e) {
        err << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kUsage;
    }
    return kOk;
}

}  // namespace l1sp::cli
