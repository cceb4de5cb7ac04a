#include "dynppe/pipeline.hpp"

#include <algorithm>
#include <exception>
#include <set>
#include <thread>

#include "dynppe/errors.hpp"

namespace dynppe {

void RunConfig::validate() const {
  if (alpha <= 0.0 || alpha > 1.0) {
    throw Error(ErrorKind::kConfig, "alpha must be in (0, 1]");
  }
  if (epsilon <= 0.0 || epsilon > 2.0) {
    throw Error(ErrorKind::kConfig, "epsilon must be in (0, 2]");
  }
  if (beta < 0.0 || beta >= 1.0) {
    throw Error(ErrorKind::kConfig, "beta must be in [0, 1)");
  }
  if (parallelism < 1) {
    throw Error(ErrorKind::kConfig, "parallelism must be >= 1");
  }
  hash_config().validate();
}

void apply_seed(RunConfig& cfg, std::uint32_t seed) {
  cfg.seed_index = seed;
  cfg.seed_sign = seed ^ 0x9e3779b9u;
}

double adaptive_epsilon(const RunConfig& cfg, std::uint64_t degree_sum) {
  if (degree_sum == 0) {
    throw Error(ErrorKind::kConfig,
                "adaptive epsilon undefined on an edgeless graph");
  }
  return cfg.epsilon / static_cast<double>(degree_sum);
}

Pipeline::Pipeline(GraphState g0, const std::vector<NodeId>& subset,
                   RunConfig cfg)
    : graph_(std::move(g0)), cfg_(cfg), hash_(cfg.hash_config()) {
  cfg_.validate();
  if (subset.empty()) {
    throw Error(ErrorKind::kConfig, "tracked subset must not be empty");
  }
  std::set<NodeId> unique(subset.begin(), subset.end());
  tracked_.reserve(unique.size());
  for (NodeId node : unique) {
    TrackedNode t;
    t.node = node;
    t.ppr.source = node;
    tracked_.push_back(std::move(t));
  }

  const std::uint64_t m0 = graph_.degree_sum();
  const double eps0 = m0 > 0 ? adaptive_epsilon(cfg_, m0) : 0.0;
  epsilon_log_.push_back(eps0);
  const std::size_t n0 = graph_.active_node_count();
  for (TrackedNode& t : tracked_) {
    refresh_node(t, nullptr, eps0, n0);
  }
}

// Per-node snapshot step. With trace == nullptr this is the initialization
// step; otherwise the node is updated through the delta trace. Pending nodes
// activate with a fresh full push once their degree becomes positive.
void Pipeline::refresh_node(TrackedNode& t, const DeltaTrace* trace,
                            double eps_t, std::size_t node_count) {
  const int snapshot = graph_.snapshot_index();
  PushParams params{cfg_.alpha, cfg_.beta, eps_t, cfg_.work_ceiling};
  if (t.ppr.initialized) {
    if (trace != nullptr) {
      update_from_trace(t.ppr, *trace, graph_,
                        eps_t > 0.0 ? params
                                    : PushParams{cfg_.alpha, cfg_.beta,
                                                 cfg_.epsilon,
                                                 cfg_.work_ceiling});
    }
  } else if (graph_.degree(t.node) >= 1) {
    t.ppr = make_fresh_state(t.node);
    t.ppr.journal_estimate = true;
    forward_push(t.ppr, graph_, params);
  } else {
    t.history.push_back(
        {snapshot, false,
         EmbeddingVector(static_cast<std::size_t>(cfg_.dim), 0.0)});
    return;
  }

  for (const auto& [node, value] : t.ppr.estimate_journal) {
    if (node >= t.estimate_mirror.size()) {
      t.estimate_mirror.resize(static_cast<std::size_t>(node) + 1, 0.0);
    }
    t.estimate_mirror[node] = value;
  }
  t.ppr.estimate_journal.clear();

  t.history.push_back(
      {snapshot, true,
       project(std::span<const double>(t.estimate_mirror),
               std::max<std::size_t>(node_count, 1), hash_)});
}

namespace {

[[noreturn]] void rethrow_tagged(NodeId source, std::exception_ptr failure) {
  try {
    std::rethrow_exception(failure);
  } catch (const Error& e) {
    throw Error(e.kind(),
                "source " + std::to_string(source) + ": " + e.what());
  } catch (const std::exception& e) {
    throw Error(ErrorKind::kConfig,
                "source " + std::to_string(source) + ": " + e.what());
  }
}

}  // namespace

void Pipeline::parallel_over_tracked(const DeltaTrace& trace, double eps_t,
                                     std::size_t node_count) {
  const std::size_t k = tracked_.size();
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(cfg_.parallelism), k);
  if (workers <= 1) {
    for (TrackedNode& t : tracked_) {
      try {
        refresh_node(t, &trace, eps_t, node_count);
      } catch (...) {
        rethrow_tagged(t.node, std::current_exception());
      }
    }
    return;
  }

  std::vector<std::exception_ptr> failures(k);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      for (std::size_t i = w; i < k; i += workers) {
        try {
          refresh_node(tracked_[i], &trace, eps_t, node_count);
        } catch (...) {
          failures[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();

  for (std::size_t i = 0; i < k; ++i) {
    if (failures[i]) rethrow_tagged(tracked_[i].node, failures[i]);
  }
}

std::map<NodeId, EmbeddingVector> Pipeline::process_snapshot(
    const SnapshotDelta& d) {
  DeltaTrace trace = graph_.apply_delta_traced(d);
  const std::uint64_t m_t = graph_.degree_sum();
  const double eps_t = m_t > 0 ? adaptive_epsilon(cfg_, m_t) : 0.0;
  epsilon_log_.push_back(eps_t);

  parallel_over_tracked(trace, eps_t, graph_.active_node_count());

  std::map<NodeId, EmbeddingVector> out;
  for (const TrackedNode& t : tracked_) {
    if (t.ppr.initialized) {
      out.emplace(t.node, t.history.back().embedding);
    }
  }
  return out;
}

const TrackedNode* Pipeline::find(NodeId node) const {
  for (const TrackedNode& t : tracked_) {
    if (t.node == node) return &t;
  }
  return nullptr;
}

std::map<NodeId, EmbeddingHistory> Pipeline::histories() const {
  std::map<NodeId, EmbeddingHistory> out;
  for (const TrackedNode& t : tracked_) {
    out.emplace(t.node, t.history);
  }
  return out;
}

Pipeline run_stream(const ParsedStream& stream,
                    const std::vector<NodeId>& subset, const RunConfig& cfg) {
  Pipeline pipeline(build_initial_graph(stream), subset, cfg);
  for (const SnapshotDelta& d : stream.deltas) {
    pipeline.process_snapshot(d);
  }
  return pipeline;
}

}  // namespace dynppe
