#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace dynppe {

// Dense external node identifier. Stable across a run; never reused.
using NodeId = std::uint32_t;

enum class EdgeOp { kInsert, kDelete };

// One timestamped undirected edge event. Timestamps are monotone
// non-decreasing within a stream; self-loops are rejected.
struct EdgeEvent {
  NodeId u = 0;
  NodeId v = 0;
  EdgeOp op = EdgeOp::kInsert;
  std::int64_t timestamp = 0;
};

// Ordered batch of edge events turning snapshot t-1 into snapshot t.
struct SnapshotDelta {
  int snapshot_index = 0;
  std::vector<EdgeEvent> events;
};

enum class ApplyResult { kApplied, kIgnoredDuplicate, kIgnoredMissing };

struct ApplyCounts {
  std::size_t applied = 0;
  std::size_t ignored = 0;
};

// An event that actually changed the graph, annotated with the degrees of
// both endpoints immediately after it was applied. Batch consumers replay
// degree evolution from this trace without re-mutating the graph.
struct AppliedEvent {
  EdgeEvent event;
  std::uint32_t degree_u = 0;
  std::uint32_t degree_v = 0;
};

struct DeltaTrace {
  int snapshot_index = 0;
  ApplyCounts counts;
  std::vector<AppliedEvent> applied;
};

// Evolving undirected simple graph. Adjacency lists are kept sorted so
// neighbor iteration order is canonical regardless of insertion history.
//
// Concurrency: single writer. All mutation happens in a dedicated phase;
// between mutations any number of readers may query degrees and neighbors.
class GraphState {
 public:
  // Applies one event. Duplicate insertions and deletions of absent edges
  // are ignored (counted, not fatal); self-loops are rejected.
  ApplyResult apply_event(const EdgeEvent& e);

  // Applies a whole delta in stream order and advances the snapshot index.
  // The delta's index must be exactly snapshot_index() + 1.
  ApplyCounts apply_delta(const SnapshotDelta& d);

  // Like apply_delta but records post-event degrees for every applied event.
  DeltaTrace apply_delta_traced(const SnapshotDelta& d);

  std::uint32_t degree(NodeId u) const;
  std::span<const NodeId> neighbors(NodeId u) const;
  bool has_edge(NodeId u, NodeId v) const;

  void prefetch_degree(NodeId u) const {
    if (u < degree_.size()) __builtin_prefetch(&degree_[u]);
  }

  // Sum of all degrees (twice the undirected edge count).
  std::uint64_t degree_sum() const { return degree_sum_; }

  // Number of nodes with degree >= 1.
  std::size_t active_node_count() const { return active_nodes_; }

  // Number of node ids ever seen (upper bound on the id universe).
  std::size_t known_node_count() const { return adjacency_.size(); }

  int snapshot_index() const { return snapshot_index_; }

  // Full-scan consistency audit: symmetry, degree bookkeeping, sortedness.
  // Throws Error(kStateAudit) on any violation.
  void audit() const;

  bool operator==(const GraphState& other) const;

 private:
  void touch(NodeId u);

  std::vector<std::vector<NodeId>> adjacency_;
  std::vector<std::uint32_t> degree_;  // mirrors adjacency sizes, hot lookups
  std::uint64_t degree_sum_ = 0;
  std::size_t active_nodes_ = 0;
  int snapshot_index_ = 0;
};

}  // namespace dynppe
