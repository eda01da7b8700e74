#pragma once

#include "l1sp/cutline.hpp"
#include "l1sp/error.hpp"
#include "l1sp/gateway.hpp"
#include "l1sp/graph.hpp"
#include "l1sp/scene.hpp"
#include "l1sp/visibility.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace l1sp {

enum class GraphMode { GOld, GEnhanced };
enum class ApspPolicy { Full, OnDemand };

std::string_view graph_mode_name(GraphMode mode);
std::string_view apsp_policy_name(ApspPolicy policy);
GraphMode parse_graph_mode(std::string_view text);
ApspPolicy parse_apsp_policy(std::string_view text);

struct IndexOptions {
    GraphMode mode = GraphMode::GEnhanced;
    ApspPolicy policy = ApspPolicy::OnDemand;
    GatewayStrategy strategy = GatewayStrategy::Cascade;
    std::uint64_t memory_budget = std::uint64_t{2} << 30;  // bytes, FULL tables only
};

struct QueryResult {
    enum class Kind { Trivial, ViaGateways };
    Rational length;
    std::vector<RPoint> path;
    Kind kind = Kind::Trivial;
    std::size_t gateway_count = 0;  // |V_g(s)| + |V_g(t)|
};

std::string_view query_kind_name(QueryResult::Kind kind);

/// Single-source shortest paths over a PathGraph; ties broken by node id.
struct ShortestPathTree {
    std::vector<Rational> dist;
    std::vector<std::int32_t> pred;
};
ShortestPathTree dijkstra(const PathGraph& graph, std::int32_t source);

/// Everything a polygonal query needs. Immutable after construction.
class PreprocessedIndex {
public:
    PreprocessedIndex(const Scene& scene, const IndexOptions& options);
    PreprocessedIndex(const PreprocessedIndex&) = delete;
    PreprocessedIndex& operator=(const PreprocessedIndex&) = delete;

    const Scene& scene() const { return vis_->scene(); }
    const IndexOptions& options() const { return options_; }
    const Visibility& visibility() const { return *vis_; }
    const CutLineTree& tree() const { return tree_; }
    const PathGraph& graph() const { return graph_; }
    const FractionalCascade& cascade() const { return cascade_; }
    GatewayContext gateway_context() const { return {vis_.get(), &tree_, &graph_, &cascade_}; }

    bool has_table() const { return !table_.empty(); }
    const Rational& distance(std::int32_t a, std::int32_t b) const {
        return table_[static_cast<std::size_t>(a) * graph_.node_count() + static_cast<std::size_t>(b)];
    }
    /// Predecessor of b in the shortest-path tree rooted at a (FULL only).
    std::int32_t predecessor(std::int32_t a, std::int32_t b) const {
        return preds_[static_cast<std::size_t>(a) * graph_.node_count() + static_cast<std::size_t>(b)];
    }
    const Rational* table_data() const { return table_.data(); }
    const std::int32_t* predecessor_data() const { return preds_.data(); }

private:
    IndexOptions options_;
    std::unique_ptr<Visibility> vis_;
    CutLineTree tree_;
    PathGraph graph_;
    FractionalCascade cascade_;
    std::vector<Rational> table_;
    std::vector<std::int32_t> preds_;
};

/// Bytes a FULL table would take for a graph with `nodes` nodes.
std::uint64_t full_table_bytes(std::size_t nodes);

std::unique_ptr<PreprocessedIndex> preprocess(const Scene& scene, const IndexOptions& options = {});

QueryResult query(const PreprocessedIndex& index, const Point& s, const Point& t, bool want_path = true);

struct BatchResult {
    std::optional<QueryResult> result;
    std::string error;  // set when result is empty
    std::optional<ErrorCode> code;
};

/// Runs fn over every pair on up to `threads` workers, results in input
/// order. Errors are recorded per pair and never abort the batch.
std::vector<BatchResult> run_batch(const std::vector<QueryPair>& pairs, unsigned threads,
                                   const std::function<QueryResult(const QueryPair&)>& fn);

/// Element-wise equal to query().
std::vector<BatchResult> batch_query(const PreprocessedIndex& index, const std::vector<QueryPair>& pairs,
                                     bool want_path = true, unsigned threads = 1);

}  // namespace l1sp
