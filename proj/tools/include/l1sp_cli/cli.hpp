#pragma once

#include "l1sp/query.hpp"
#include "l1sp/scene.hpp"
#include "l1sp/weighted.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace l1sp::cli {

enum ExitCode { kOk = 0, kUsage = 1, kInvalidInput = 2, kQueryError = 3, kCheckMismatch = 4 };

/// Exit code for a library error.
int exit_code_for(ErrorCode code);

Point parse_point(std::string_view text);

nlohmann::json query_result_json(const QueryResult& result);

// ---------------------------------------------------------------------------
// Index files

inline constexpr int kIndexFormatVersion = 1;

struct IndexFile {
    bool weighted = false;
    IndexOptions options;
    Scene scene;
    std::size_t nodes = 0;
    std::size_t edges = 0;
    std::uint64_t graph_digest = 0;
};

/// Either index kind, rebuilt from an index file.
struct LoadedIndex {
    IndexFile file;
    std::unique_ptr<PreprocessedIndex> plain;
    std::unique_ptr<WeightedIndex> weighted;

    const PathGraph& graph() const { return weighted ? weighted->graph() : plain->graph(); }
    QueryResult query(const Point& s, const Point& t, bool want_path) const;
    std::vector<BatchResult> batch(const std::vector<QueryPair>& pairs, bool want_path, unsigned threads) const;
};

/// FNV-1a over node locations, kinds and edges.
std::uint64_t graph_digest(const PathGraph& graph);

/// Builds the index matching the scene mode.
LoadedIndex build_index(const Scene& scene, const IndexOptions& options);

/// JSON document with a format header, the scene hash, the build options,
/// the graph size and digest, and the scene itself.
std::string save_index(const LoadedIndex& index);

/// Throws FORMAT_MISMATCH when the header, the scene hash or the rebuilt
/// graph disagree with the file.
LoadedIndex load_index(std::string_view text);

// ---------------------------------------------------------------------------
// Rendering

enum class Layer { Obstacles, Cutlines, SteinerPoints, Gateways, Path, HananGrid };

std::string_view layer_name(Layer layer);
/// Comma-separated layer names; throws PARSE_ERROR on unknown names.
std::set<Layer> parse_layers(std::string_view text);

struct RenderSpec {
    std::set<Layer> layers = {Layer::Obstacles, Layer::Path};
    /// Query endpoints for the path and gateway layers; bbox corners if unset.
    std::optional<Point> s;
    std::optional<Point> t;
    IndexOptions options;
};

/// SVG with a fixed 1000x1000 viewBox.
std::string render_svg(const Scene& scene, const RenderSpec& spec);

// ---------------------------------------------------------------------------
// check

struct CheckOptions {
    std::size_t scenes = 300;
    std::size_t n_min = 8;
    std::size_t n_max = 120;
    std::size_t h_max = 8;
    std::size_t queries = 50;
    std::uint64_t seed = 42;
    std::size_t weighted_scenes = 0;
    std::size_t full_max_nodes = 600;  // FULL tables are built only below this size
    std::filesystem::path out_dir = ".";
    std::optional<std::filesystem::path> scene_file;  // replay mode
    std::optional<std::filesystem::path> pairs_file;
};

struct CheckFailure {
    Scene scene;
    QueryPair pair;
    std::string what;
};

struct CheckReport {
    std::size_t scenes = 0;
    std::size_t pairs = 0;
    std::size_t full_skipped = 0;
    std::vector<CheckFailure> failures;
};

/// All comparisons for one scene: oracle, both graph modes, both APSP
/// policies (FULL only below full_max_nodes) and both gateway strategies;
/// weighted scenes check soundness, conditional completeness and pricing.
std::vector<CheckFailure> check_scene(const Scene& scene, const std::vector<QueryPair>& pairs,
                                      std::size_t full_max_nodes, std::size_t* full_skipped = nullptr);

/// Greedily drops obstacles while `still_fails` holds and both query points
/// stay free.
Scene minimize_failure(const Scene& scene, const QueryPair& pair,
                       const std::function<bool(const Scene&)>& still_fails);

/// Writes repro_scene.json and repro_queries.json into `dir`.
std::pair<std::filesystem::path, std::filesystem::path> write_reproducer(const std::filesystem::path& dir,
                                                                         const CheckFailure& failure);

CheckReport run_check(const CheckOptions& options, std::ostream& log);

// ---------------------------------------------------------------------------
// bench

struct BenchOptions {
    std::vector<std::size_t> ns = {256, 512, 1024, 2048, 4096, 8192};
    std::size_t h = 8;
    std::size_t queries = 200;
    std::uint64_t seed = 1;
    std::vector<std::string> modes = {"g_old", "g_e"};
    ApspPolicy policy = ApspPolicy::OnDemand;
};

struct BenchRow {
    std::size_t n = 0;
    std::size_t h = 0;
    std::string mode;
    std::size_t nodes = 0;
    std::size_t edges = 0;
    double build_ms = 0;
    double median_query_us = 0;
    double p99_query_us = 0;
    double gateway_count_mean = 0;
};

inline constexpr const char* kBenchHeader =
    "n,h,mode,nodes,edges,build_ms,median_query_us,p99_query_us,gateway_count_mean";

/// FULL rows report mode as "<mode>_full".
BenchRow bench_one(std::size_t n, std::size_t h, const std::string& mode, std::size_t queries, std::uint64_t seed,
                   ApspPolicy policy = ApspPolicy::OnDemand);
std::vector<BenchRow> run_bench(const BenchOptions& options, std::ostream* progress = nullptr);
std::string bench_csv_row(const BenchRow& row);

// ---------------------------------------------------------------------------

/// Parses and runs one command line. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace l1sp::cli
