#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "dynppe/graph.hpp"
#include "dynppe/hashing.hpp"

namespace dynppe {

// Embedding movement between two snapshots of one node:
// 1 - <a,b> / (|a| |b|), defined as 0 if either vector is all-zero.
double movement(const EmbeddingVector& a, const EmbeddingVector& b);

// Standardizes a snapshot's movement map: z(u) = (dist(u) - mu) / sigma with
// the population standard deviation (divide by |S|). If sigma == 0 all
// z-scores are 0.
std::map<NodeId, double> zscores(const std::map<NodeId, double>& movements);

struct MovementRecord {
  NodeId node = 0;
  int snapshot_from = 0;
  int snapshot_to = 0;
  double distance = 0.0;       // 1 - cosine, in [0, 2]
  std::int64_t degree_delta = 0;
};

struct ZScoreRecord {
  NodeId node = 0;
  int snapshot = 0;  // the "to" snapshot of the underlying movement
  double zscore = 0.0;
};

// A movement standardized against its snapshot group, as ranked in reports.
struct ChangeRecord {
  MovementRecord movement;
  double zscore = 0.0;
};

// Standardizes one snapshot's movement records against their own group.
std::vector<ZScoreRecord> zscore_records(
    const std::vector<MovementRecord>& movements);

// Drops records whose degree_delta is <= min_degree_delta, then orders by
// zscore descending with ties broken by ascending NodeId.
std::vector<ChangeRecord> rank_changes(std::vector<ChangeRecord> records,
                                       std::int64_t min_degree_delta);

}  // namespace dynppe
