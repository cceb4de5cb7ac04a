#pragma once

#include <cstdint>
#include <map>
#include <unordered_map>

#include "dynppe/event_stream.hpp"
#include "dynppe/graph.hpp"
#include "dynppe/pipeline.hpp"

namespace dynppe {

enum class CommuteInit { kGaussian, kUniform };

struct CommuteConfig {
  int dim = 128;
  CommuteInit init = CommuteInit::kGaussian;
  std::uint64_t rng_seed = 42;
};

// Cheap comparison embedder over an insertion-only event stream: each
// inserted edge updates only its two endpoint vectors,
//   w_u <- (d(u) / (d(u) + 1)) w_u + (1 / d(u)) w_v
//   w_v <- (d(v) / (d(v) + 1)) w_v + (1 / d(v)) w_u   (with the updated w_u)
// using post-insertion degrees.
class CommuteState {
 public:
  explicit CommuteState(CommuteConfig cfg);

  // Draws a deterministic initial vector for a new node: Gaussian mode is
  // i.i.d. Normal(0, 0.1) per entry, Uniform mode is Uniform(-0.5, 0.5)/dim.
  // Throws if the node already has a vector.
  const EmbeddingVector& init_node(NodeId node);

  // Applies one inserted edge already reflected in g, initializing unseen
  // endpoints first. Deletions are unsupported.
  void apply_event(const EdgeEvent& e, const GraphState& g);

  bool has(NodeId node) const { return vectors_.contains(node); }
  const EmbeddingVector& vector(NodeId node) const;
  EmbeddingVector& vector(NodeId node);
  const CommuteConfig& config() const { return cfg_; }

 private:
  CommuteConfig cfg_;
  std::unordered_map<NodeId, EmbeddingVector> vectors_;
};

// Runs the heuristic over a full stream, sampling subset histories at every
// snapshot boundary (snapshot 0 closes the initial block). Any deletion in
// the stream raises Error(kUnsupportedEvent).
std::map<NodeId, EmbeddingHistory> commute_run(
    const ParsedStream& stream, const std::vector<NodeId>& subset,
    const CommuteConfig& cfg);

}  // namespace dynppe
