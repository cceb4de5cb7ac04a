#include "dynppe/graph.hpp"

#include <algorithm>
#include <string>

#include "dynppe/errors.hpp"

namespace dynppe {

namespace {

bool sorted_contains(const std::vector<NodeId>& list, NodeId x) {
  return std::binary_search(list.begin(), list.end(), x);
}

void sorted_insert(std::vector<NodeId>& list, NodeId x) {
  list.insert(std::lower_bound(list.begin(), list.end(), x), x);
}

void sorted_erase(std::vector<NodeId>& list, NodeId x) {
  auto it = std::lower_bound(list.begin(), list.end(), x);
  list.erase(it);
}

}  // namespace

void GraphState::touch(NodeId u) {
  if (u >= adjacency_.size()) {
    adjacency_.resize(static_cast<std::size_t>(u) + 1);
    degree_.resize(adjacency_.size(), 0);
  }
}

ApplyResult GraphState::apply_event(const EdgeEvent& e) {
  if (e.u == e.v) {
    throw Error(ErrorKind::kConfig,
                "self-loop event rejected: node " + std::to_string(e.u));
  }
  touch(e.u);
  touch(e.v);
  auto& adj_u = adjacency_[e.u];
  auto& adj_v = adjacency_[e.v];
  switch (e.op) {
    case EdgeOp::kInsert: {
      if (sorted_contains(adj_u, e.v)) {
        return ApplyResult::kIgnoredDuplicate;
      }
      sorted_insert(adj_u, e.v);
      sorted_insert(adj_v, e.u);
      ++degree_[e.u];
      ++degree_[e.v];
      degree_sum_ += 2;
      if (adj_u.size() == 1) ++active_nodes_;
      if (adj_v.size() == 1) ++active_nodes_;
      return ApplyResult::kApplied;
    }
    case EdgeOp::kDelete: {
      if (!sorted_contains(adj_u, e.v)) {
        return ApplyResult::kIgnoredMissing;
      }
      sorted_erase(adj_u, e.v);
      sorted_erase(adj_v, e.u);
      --degree_[e.u];
      --degree_[e.v];
      degree_sum_ -= 2;
      if (adj_u.empty()) --active_nodes_;
      if (adj_v.empty()) --active_nodes_;
      return ApplyResult::kApplied;
    }
  }
  throw Error(ErrorKind::kConfig, "unknown edge op");
}

ApplyCounts GraphState::apply_delta(const SnapshotDelta& d) {
  return apply_delta_traced(d).counts;
}

DeltaTrace GraphState::apply_delta_traced(const SnapshotDelta& d) {
  if (d.snapshot_index != snapshot_index_ + 1) {
    throw Error(ErrorKind::kSequencing,
                "delta index " + std::to_string(d.snapshot_index) +
                    " does not follow snapshot " +
                    std::to_string(snapshot_index_));
  }
  DeltaTrace trace;
  trace.snapshot_index = d.snapshot_index;
  trace.applied.reserve(d.events.size());
  for (const EdgeEvent& e : d.events) {
    if (apply_event(e) == ApplyResult::kApplied) {
      ++trace.counts.applied;
      trace.applied.push_back({e, degree(e.u), degree(e.v)});
    } else {
      ++trace.counts.ignored;
    }
  }
  snapshot_index_ = d.snapshot_index;
  return trace;
}

std::uint32_t GraphState::degree(NodeId u) const {
  if (u >= degree_.size()) return 0;
  return degree_[u];
}

std::span<const NodeId> GraphState::neighbors(NodeId u) const {
  if (u >= adjacency_.size()) return {};
  return adjacency_[u];
}

bool GraphState::has_edge(NodeId u, NodeId v) const {
  if (u >= adjacency_.size()) return false;
  return sorted_contains(adjacency_[u], v);
}

void GraphState::audit() const {
  std::uint64_t total = 0;
  std::size_t active = 0;
  for (NodeId u = 0; u < adjacency_.size(); ++u) {
    const auto& adj = adjacency_[u];
    if (!std::is_sorted(adj.begin(), adj.end())) {
      throw Error(ErrorKind::kStateAudit,
                  "adjacency of node " + std::to_string(u) + " not sorted");
    }
    if (std::adjacent_find(adj.begin(), adj.end()) != adj.end()) {
      throw Error(ErrorKind::kStateAudit,
                  "duplicate neighbor at node " + std::to_string(u));
    }
    for (NodeId v : adj) {
      if (v == u) {
        throw Error(ErrorKind::kStateAudit,
                    "self-loop stored at node " + std::to_string(u));
      }
      if (v >= adjacency_.size() || !sorted_contains(adjacency_[v], u)) {
        throw Error(ErrorKind::kStateAudit,
                    "asymmetric edge " + std::to_string(u) + "-" +
                        std::to_string(v));
      }
    }
    if (degree_[u] != adj.size()) {
      throw Error(ErrorKind::kStateAudit, "degree mirror out of sync");
    }
    total += adj.size();
    if (!adj.empty()) ++active;
  }
  if (total != degree_sum_) {
    throw Error(ErrorKind::kStateAudit, "degree_sum out of sync");
  }
  if (active != active_nodes_) {
    throw Error(ErrorKind::kStateAudit, "active node count out of sync");
  }
}

bool GraphState::operator==(const GraphState& other) const {
  if (degree_sum_ != other.degree_sum_ || active_nodes_ != other.active_nodes_) {
    return false;
  }
  std::size_t n = std::max(adjacency_.size(), other.adjacency_.size());
  for (NodeId u = 0; u < n; ++u) {
    auto a = neighbors(u);
    auto b = other.neighbors(u);
    if (!std::equal(a.begin(), a.end(), b.begin(), b.end())) return false;
  }
  return true;
}

}  // namespace dynppe
