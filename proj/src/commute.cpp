#include "dynppe/commute.hpp"

#include <cmath>
#include <random>
#include <string>

#include "dynppe/errors.hpp"

namespace dynppe {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

CommuteState::CommuteState(CommuteConfig cfg) : cfg_(cfg) {
  if (cfg_.dim < 1) {
    throw Error(ErrorKind::kConfig, "embedding dimension must be >= 1");
  }
}

const EmbeddingVector& CommuteState::init_node(NodeId node) {
  if (vectors_.contains(node)) {
    throw Error(ErrorKind::kConfig,
                "node " + std::to_string(node) + " already initialized");
  }
  // Seeded per node so the draw is independent of arrival order.
  std::mt19937_64 rng(splitmix64(cfg_.rng_seed ^
                                 (static_cast<std::uint64_t>(node) + 1) *
                                     0xd1b54a32d192ed03ULL));
  EmbeddingVector w(static_cast<std::size_t>(cfg_.dim));
  if (cfg_.init == CommuteInit::kGaussian) {
    std::normal_distribution<double> gauss(0.0, std::sqrt(0.1));
    for (double& x : w) x = gauss(rng);
  } else {
    std::uniform_real_distribution<double> uniform(-0.5, 0.5);
    for (double& x : w) x = uniform(rng) / cfg_.dim;
  }
  return vectors_.emplace(node, std::move(w)).first->second;
}

void CommuteState::apply_event(const EdgeEvent& e, const GraphState& g) {
  if (e.op != EdgeOp::kInsert) {
    throw Error(ErrorKind::kUnsupportedEvent,
                "commute supports insertion-only streams");
  }
  if (!vectors_.contains(e.u)) init_node(e.u);
  if (!vectors_.contains(e.v)) init_node(e.v);

  EmbeddingVector& wu = vectors_.at(e.u);
  EmbeddingVector& wv = vectors_.at(e.v);
  const double du = g.degree(e.u);
  const double dv = g.degree(e.v);

  // Statement order matters: w_v reads the already-updated w_u.
  for (int i = 0; i < cfg_.dim; ++i) {
    wu[i] = du / (du + 1.0) * wu[i] + wv[i] / du;
  }
  for (int i = 0; i < cfg_.dim; ++i) {
    wv[i] = dv / (dv + 1.0) * wv[i] + wu[i] / dv;
  }
}

const EmbeddingVector& CommuteState::vector(NodeId node) const {
  auto it = vectors_.find(node);
  if (it == vectors_.end()) {
    throw Error(ErrorKind::kConfig,
                "node " + std::to_string(node) + " has no vector");
  }
  return it->second;
}

EmbeddingVector& CommuteState::vector(NodeId node) {
  auto it = vectors_.find(node);
  if (it == vectors_.end()) {
    throw Error(ErrorKind::kConfig,
                "node " + std::to_string(node) + " has no vector");
  }
  return it->second;
}

std::map<NodeId, EmbeddingHistory> commute_run(
    const ParsedStream& stream, const std::vector<NodeId>& subset,
    const CommuteConfig& cfg) {
  if (subset.empty()) {
    throw Error(ErrorKind::kConfig, "tracked subset must not be empty");
  }
  GraphState g;
  CommuteState state(cfg);
  std::map<NodeId, EmbeddingHistory> histories;
  for (NodeId node : subset) histories[node];

  auto consume = [&](const std::vector<EdgeEvent>& events) {
    for (const EdgeEvent& e : events) {
      if (e.op != EdgeOp::kInsert) {
        throw Error(ErrorKind::kUnsupportedEvent,
                    "commute supports insertion-only streams");
      }
      if (g.apply_event(e) == ApplyResult::kApplied) {
        state.apply_event(e, g);
      }
    }
  };

  auto sample = [&](int snapshot) {
    for (auto& [node, history] : histories) {
      if (state.has(node)) {
        history.push_back({snapshot, true, state.vector(node)});
      } else {
        history.push_back(
            {snapshot, false,
             EmbeddingVector(static_cast<std::size_t>(cfg.dim), 0.0)});
      }
    }
  };

  consume(stream.initial_events);
  sample(0);
  for (const SnapshotDelta& d : stream.deltas) {
    consume(d.events);
    sample(d.snapshot_index);
  }
  return histories;
}

}  // namespace dynppe
