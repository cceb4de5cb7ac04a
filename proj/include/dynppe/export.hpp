#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dynppe/analytics.hpp"
#include "dynppe/graph.hpp"
#include "dynppe/pipeline.hpp"

namespace dynppe {

inline constexpr const char* kToolVersion = "dynppe 0.1.0";
inline constexpr const char* kEmbeddingFormatVersion = "v1";

// Run description echoed next to every embedding export. The digests pin the
// consumed inputs: any single-byte mutation of an input file changes them.
struct RunManifest {
  std::string method;  // "dynppe" or "commute"
  double alpha = 0.0;
  double epsilon = 0.0;
  double beta = 0.0;
  int dim = 0;
  std::uint32_t seed_index = 0;
  std::uint32_t seed_sign = 0;
  int parallelism = 1;
  std::size_t event_count = 0;
  std::size_t snapshot_count = 0;
  std::size_t node_count = 0;
  std::vector<std::uint64_t> degree_sum_per_snapshot;
  std::uint64_t events_digest = 0;  // FNV-1a 64 over the raw file bytes
  std::uint64_t subset_digest = 0;
  std::size_t subset_size = 0;
  double wall_time_seconds = 0.0;
};

std::uint64_t fnv1a64(const std::string& bytes);
std::uint64_t fnv1a64_file(const std::string& path);

void write_manifest(const std::string& path, const RunManifest& manifest);

// Embedding TSV: a versioned header line carrying dim and method, then one
// row per (snapshot, node): snapshot<TAB>node<TAB>c1,...,cd with components
// at 9 significant digits.
void write_embeddings_tsv(const std::string& path,
                          const std::map<NodeId, EmbeddingHistory>& histories,
                          int dim, const std::string& method);

struct EmbeddingTable {
  int dim = 0;
  std::string method;
  // snapshot -> node -> embedding
  std::map<int, std::map<NodeId, EmbeddingVector>> rows;
};

EmbeddingTable read_embeddings_tsv(const std::string& path);

// Change report TSV: snapshot<TAB>node<TAB>zscore<TAB>movement<TAB>degree_delta
// with zscore and movement at 6 decimals, ranked within each snapshot.
void write_changes_tsv(const std::string& path,
                       const std::vector<ChangeRecord>& records);

}  // namespace dynppe
