#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "dynppe/event_stream.hpp"
#include "dynppe/graph.hpp"
#include "dynppe/hashing.hpp"
#include "dynppe/ppr.hpp"

namespace dynppe {

struct RunConfig {
  double alpha = 0.15;
  double epsilon = 0.1;   // global precision; per-snapshot threshold is epsilon / m_t
  double beta = 0.0;
  int dim = 128;
  std::uint32_t seed_index = 0x9747b28cu;
  std::uint32_t seed_sign = 0x85ebca6bu;
  int parallelism = 1;
  std::uint64_t work_ceiling = 10'000'000'000ULL;

  HashConfig hash_config() const { return {dim, seed_index, seed_sign}; }
  void validate() const;
};

// Derives both hash seeds from a single user-facing seed.
void apply_seed(RunConfig& cfg, std::uint32_t seed);

// Adaptive precision: epsilon / m_t. Throws Error(kConfig) when m_t == 0.
double adaptive_epsilon(const RunConfig& cfg, std::uint64_t degree_sum);

struct HistoryEntry {
  int snapshot_index = 0;
  bool initialized = false;  // false while the node is pending (degree 0)
  EmbeddingVector embedding;
};

struct TrackedNode {
  NodeId node = 0;
  PprState ppr;  // ppr.initialized is false while pending
  std::vector<HistoryEntry> history;
  // Dense mirror of ppr.estimate, fed from its journal; lets the projection
  // fold touched entries without rescanning the whole map.
  std::vector<double> estimate_mirror;
};

using EmbeddingHistory = std::vector<HistoryEntry>;

// Drives the per-snapshot loop over a tracked subset: one exclusive graph
// mutation phase, then an independent update + projection per tracked node
// (parallel across the subset, gathered in NodeId order).
class Pipeline {
 public:
  // Initializes tracking on g0. Subset nodes with degree >= 1 get a fresh
  // state pushed to precision epsilon / m_0 and a snapshot-0 embedding;
  // zero-degree subset nodes stay pending until a later delta connects them.
  Pipeline(GraphState g0, const std::vector<NodeId>& subset, RunConfig cfg);

  // Applies one delta and recomputes embeddings for the whole subset.
  // Returns the embeddings of all initialized tracked nodes.
  std::map<NodeId, EmbeddingVector> process_snapshot(const SnapshotDelta& d);

  const GraphState& graph() const { return graph_; }
  const RunConfig& config() const { return cfg_; }
  const std::vector<TrackedNode>& tracked() const { return tracked_; }
  std::vector<TrackedNode>& tracked() { return tracked_; }
  const TrackedNode* find(NodeId node) const;

  // epsilon_t actually used at each snapshot (index 0 = initialization).
  const std::vector<double>& epsilon_log() const { return epsilon_log_; }

  std::map<NodeId, EmbeddingHistory> histories() const;

 private:
  void refresh_node(TrackedNode& t, const DeltaTrace* trace, double eps_t,
                    std::size_t node_count);
  void parallel_over_tracked(const DeltaTrace& trace, double eps_t,
                             std::size_t node_count);

  GraphState graph_;
  RunConfig cfg_;
  HashConfig hash_;
  std::vector<TrackedNode> tracked_;
  std::vector<double> epsilon_log_;
};

// Full run over a parsed stream: builds the initial graph from the leading
// block, then processes every delta. Histories cover snapshots 0..T.
Pipeline run_stream(const ParsedStream& stream,
                    const std::vector<NodeId>& subset, const RunConfig& cfg);

}  // namespace dynppe
