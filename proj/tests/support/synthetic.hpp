#pragma once

// Deterministic synthetic graphs and streams shared by the unit tests and
// the acceptance suite.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "dynppe/event_stream.hpp"
#include "dynppe/graph.hpp"

namespace dynppe::testing {

using EdgeList = std::vector<std::pair<NodeId, NodeId>>;

inline EdgeList random_edge_set(std::size_t n, std::size_t m,
                                std::mt19937_64& rng) {
  std::set<std::pair<NodeId, NodeId>> edges;
  std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(n - 1));
  while (edges.size() < m) {
    NodeId u = pick(rng);
    NodeId v = pick(rng);
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    edges.insert({u, v});
  }
  EdgeList out(edges.begin(), edges.end());
  std::shuffle(out.begin(), out.end(), rng);
  return out;
}

inline GraphState graph_from_edges(const EdgeList& edges) {
  GraphState g;
  std::int64_t ts = 0;
  for (auto [u, v] : edges) {
    g.apply_event({u, v, EdgeOp::kInsert, ts++});
  }
  return g;
}

inline GraphState path_graph(std::size_t n) {
  EdgeList edges;
  for (NodeId u = 0; u + 1 < n; ++u) edges.push_back({u, u + 1});
  return graph_from_edges(edges);
}

inline GraphState triangle_graph() {
  return graph_from_edges({{0, 1}, {1, 2}, {0, 2}});
}

inline GraphState star_graph(std::size_t leaves) {
  EdgeList edges;
  for (NodeId l = 1; l <= leaves; ++l) edges.push_back({0, l});
  return graph_from_edges(edges);
}

// Streams m_edges random edges over n nodes as pure insertions split into
// `snapshots` equal deltas; the initial graph is empty.
inline ParsedStream er_insert_stream(std::size_t n, std::size_t m_edges,
                                     std::size_t snapshots,
                                     std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  EdgeList edges = random_edge_set(n, m_edges, rng);
  ParsedStream stream;
  std::int64_t ts = 0;
  std::size_t per_delta = m_edges / snapshots;
  std::size_t next = 0;
  for (std::size_t t = 1; t <= snapshots; ++t) {
    SnapshotDelta d;
    d.snapshot_index = static_cast<int>(t);
    std::size_t count = (t == snapshots) ? edges.size() - next : per_delta;
    for (std::size_t i = 0; i < count; ++i, ++next) {
      auto [u, v] = edges[next];
      d.events.push_back({u, v, EdgeOp::kInsert, ts++});
    }
    stream.deltas.push_back(std::move(d));
  }
  return stream;
}

// Random mixed delta on an evolving graph. Deletions only remove edges whose
// endpoints both keep degree >= 1 afterwards, so no node that ever carried
// push mass becomes isolated (the exact solver needs its PPV).
inline SnapshotDelta random_mixed_delta(const GraphState& g, std::size_t n,
                                        std::size_t inserts,
                                        std::size_t deletes,
                                        std::mt19937_64& rng,
                                        std::int64_t& ts) {
  SnapshotDelta d;
  d.snapshot_index = g.snapshot_index() + 1;
  std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(n - 1));

  std::set<std::pair<NodeId, NodeId>> removed;
  std::size_t attempts = 0;
  while (removed.size() < deletes && attempts++ < 50 * deletes) {
    NodeId u = pick(rng);
    if (g.degree(u) < 2) continue;
    auto nbrs = g.neighbors(u);
    NodeId v = nbrs[std::uniform_int_distribution<std::size_t>(
        0, nbrs.size() - 1)(rng)];
    if (g.degree(v) < 2) continue;
    auto key = std::minmax(u, v);
    if (removed.contains({key.first, key.second})) continue;
    removed.insert({key.first, key.second});
    d.events.push_back({u, v, EdgeOp::kDelete, ts++});
  }
  std::size_t added = 0;
  attempts = 0;
  while (added < inserts && attempts++ < 50 * inserts) {
    NodeId u = pick(rng);
    NodeId v = pick(rng);
    if (u == v || g.has_edge(u, v)) continue;
    auto key = std::minmax(u, v);
    if (removed.contains({key.first, key.second})) continue;
    d.events.push_back({u, v, EdgeOp::kInsert, ts++});
    ++added;
  }
  return d;
}

inline void write_stream_file(const std::string& path,
                              const ParsedStream& stream) {
  std::ofstream out(path);
  auto emit = [&](const std::vector<EdgeEvent>& events) {
    for (const EdgeEvent& e : events) {
      out << e.timestamp << '\t' << (e.op == EdgeOp::kInsert ? '+' : '-')
          << '\t' << e.u << '\t' << e.v << '\n';
    }
  };
  emit(stream.initial_events);
  for (const SnapshotDelta& d : stream.deltas) {
    out << "#snapshot\n";
    emit(d.events);
  }
  // Trailing marker so an empty final delta survives the round trip.
  if (!stream.deltas.empty()) out << "#snapshot\n";
}

inline void write_subset_file(const std::string& path,
                              const std::vector<NodeId>& subset) {
  std::ofstream out(path);
  for (NodeId node : subset) out << node << '\n';
}

}  // namespace dynppe::testing
