#include "dynppe/ppr.hpp"

#include <algorithm>
#include <sstream>

#include "dynppe/errors.hpp"

namespace dynppe {

void PushParams::validate() const {
  if (alpha <= 0.0 || alpha > 1.0) {
    throw Error(ErrorKind::kConfig, "alpha must be in (0, 1]");
  }
  if (beta < 0.0 || beta >= 1.0) {
    throw Error(ErrorKind::kConfig, "beta must be in [0, 1)");
  }
  if (epsilon_t <= 0.0) {
    throw Error(ErrorKind::kConfig, "epsilon_t must be positive");
  }
}

namespace {

inline void estimate_add(PprState& state, NodeId u, double delta) {
  double stored = state.estimate.add_and_get(u, delta);
  if (state.journal_estimate) {
    state.estimate_journal.emplace_back(u, stored);
  }
}

}  // namespace

PprState make_fresh_state(NodeId source) {
  PprState state;
  state.source = source;
  state.residual.set(source, 1.0);
  state.initialized = true;
  return state;
}

namespace {

void push_unguarded(PprState& state, NodeId u, const GraphState& g,
                    const PushParams& params) {
  const std::uint32_t d = g.degree(u);
  if (d == 0) {
    throw Error(ErrorKind::kDegenerateNode,
                "push on zero-degree node " + std::to_string(u));
  }
  const double ru = state.residual.get(u);
  estimate_add(state, u, params.alpha * ru);
  const double spread = (1.0 - params.alpha) * ru * (1.0 - params.beta) / d;
  for (NodeId v : g.neighbors(u)) {
    state.residual.add(v, spread);
  }
  state.residual.set(u, (1.0 - params.alpha) * ru * params.beta);
  state.work_counter += d;
}

}  // namespace

void push(PprState& state, NodeId u, const GraphState& g,
          const PushParams& params) {
  push_unguarded(state, u, g, params);
  state.pushed_epsilon = -1.0;  // frontier bookkeeping no longer valid
}

namespace {

// FIFO frontier with a dense in-queue membership flag.
class Frontier {
 public:
  explicit Frontier(std::size_t universe) : in_queue_(universe, 0) {
    queue_.reserve(256);
  }

  void enqueue(NodeId u) {
    if (u >= in_queue_.size()) in_queue_.resize(u + 1, 0);
    if (in_queue_[u]) return;
    in_queue_[u] = 1;
    queue_.push_back(u);
  }

  bool empty() const { return head_ == queue_.size(); }

  NodeId pop() {
    NodeId u = queue_[head_++];
    in_queue_[u] = 0;
    if (head_ == queue_.size()) {
      queue_.clear();
      head_ = 0;
    }
    return u;
  }

 private:
  std::vector<NodeId> queue_;
  std::size_t head_ = 0;
  std::vector<std::uint8_t> in_queue_;
};

// Runs one signed phase to completion over the given seed candidates. The
// push arithmetic matches push() statement for statement; the spill update
// and the violation re-check share a single table probe. `violates` must be
// monotone under this phase's pushes: once a node stops violating it can
// only re-violate through a residual update, which re-enqueues it here.
template <typename Violates>
void run_phase(PprState& state, const GraphState& g, const PushParams& params,
               const std::vector<NodeId>& candidates, Violates violates,
               const PushObserver& observer, std::uint64_t& push_count) {
  Frontier frontier(g.known_node_count());
  for (NodeId u : candidates) {
    if (violates(u, state.residual.get(u))) frontier.enqueue(u);
  }

  while (!frontier.empty()) {
    NodeId u = frontier.pop();
    const double ru = state.residual.get(u);
    if (!violates(u, ru)) continue;

    const std::uint32_t d = g.degree(u);
    estimate_add(state, u, params.alpha * ru);
    const double spread = (1.0 - params.alpha) * ru * (1.0 - params.beta) / d;
    auto nbrs = g.neighbors(u);
    for (NodeId v : nbrs) {
      state.residual.prefetch(v);
      g.prefetch_degree(v);
    }
    for (NodeId v : nbrs) {
      double rv = state.residual.add_and_get(v, spread);
      if (violates(v, rv)) frontier.enqueue(v);
    }
    const double left = (1.0 - params.alpha) * ru * params.beta;
    state.residual.set(u, left);
    if (violates(u, left)) frontier.enqueue(u);
    state.work_counter += d;
    if (state.work_counter > params.work_ceiling) {
      throw Error(ErrorKind::kBudgetExceeded,
                  "forward_push exceeded work ceiling of " +
                      std::to_string(params.work_ceiling));
    }
    ++push_count;
    if (observer) observer(state, push_count);
  }
}

}  // namespace

void forward_push(PprState& state, const GraphState& g,
                  const PushParams& params, const PushObserver& observer) {
  params.validate();
  if (!state.initialized) {
    throw Error(ErrorKind::kConfig, "forward_push on uninitialized state");
  }
  const double eps = params.epsilon_t;
  std::uint64_t push_count = 0;

  // Every node satisfied |r| <= pushed_epsilon * d after the previous call,
  // and only adjustment endpoints changed since, so when the threshold did
  // not tighten the dirty list covers all possible seeds. Otherwise scan
  // the whole residual support.
  std::vector<NodeId> candidates;
  if (state.pushed_epsilon >= 0.0 && eps >= state.pushed_epsilon) {
    candidates = state.dirty;
  } else {
    candidates.reserve(state.residual.nnz());
    state.residual.for_each(
        [&](NodeId u, double) { candidates.push_back(u); });
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());

  // Boundary residuals (|r| == eps * d exactly) are still pushed. Negative
  // violations cannot appear during the positive phase (positive pushes only
  // raise residuals), so one candidate list serves both phases.
  run_phase(
      state, g, params, candidates,
      [&](NodeId u, double r) {
        std::uint32_t d = g.degree(u);
        return d >= 1 && r >= eps * d;
      },
      observer, push_count);
  run_phase(
      state, g, params, candidates,
      [&](NodeId u, double r) {
        std::uint32_t d = g.degree(u);
        return d >= 1 && r <= -eps * d;
      },
      observer, push_count);

  state.dirty.clear();
  state.pushed_epsilon = eps;
}

namespace {

// One ordered half of the adjustment: the estimate correction at `a`
// driven by a's post-event degree, with the residual counterpart at `b`.
void adjust_half(PprState& state, NodeId a, NodeId b, std::uint32_t degree_a,
                 EdgeOp op, double alpha) {
  const double pa = state.estimate.get(a);
  if (pa == 0.0) return;
  double delta_p;
  if (op == EdgeOp::kInsert) {
    if (degree_a <= 1) {
      throw Error(ErrorKind::kDegenerateDenominator,
                  "insert adjustment at node " + std::to_string(a) +
                      " with nonzero estimate and no prior edges");
    }
    delta_p = pa / (static_cast<double>(degree_a) - 1.0);
  } else {
    delta_p = -pa / (static_cast<double>(degree_a) + 1.0);
  }
  estimate_add(state, a, delta_p);
  state.residual.add(a, -delta_p / alpha);
  state.residual.add(b, delta_p / alpha - delta_p);
}

}  // namespace

void adjust_for_event(PprState& state, const AppliedEvent& applied,
                      double alpha) {
  const EdgeEvent& e = applied.event;
  // Both endpoints changed degree, so both must be re-examined by the next
  // push even when their estimate halves are no-ops.
  state.dirty.push_back(e.u);
  state.dirty.push_back(e.v);
  adjust_half(state, e.u, e.v, applied.degree_u, e.op, alpha);
  adjust_half(state, e.v, e.u, applied.degree_v, e.op, alpha);
}

void adjust_for_event(PprState& state, const EdgeEvent& e, const GraphState& g,
                      double alpha) {
  adjust_for_event(state, AppliedEvent{e, g.degree(e.u), g.degree(e.v)},
                   alpha);
}

void update_from_trace(PprState& state, const DeltaTrace& trace,
                       const GraphState& g, const PushParams& params) {
  if (!state.initialized) {
    throw Error(ErrorKind::kConfig, "update on uninitialized state");
  }
  const std::size_t lookahead = 8;
  for (std::size_t i = 0; i < trace.applied.size(); ++i) {
    if (i + lookahead < trace.applied.size()) {
      const EdgeEvent& ahead = trace.applied[i + lookahead].event;
      state.estimate.prefetch(ahead.u);
      state.estimate.prefetch(ahead.v);
    }
    adjust_for_event(state, trace.applied[i], params.alpha);
  }
  forward_push(state, g, params);
}

void update_batch(PprState& state, const SnapshotDelta& delta, GraphState& g,
                  const PushParams& params) {
  DeltaTrace trace = g.apply_delta_traced(delta);
  update_from_trace(state, trace, g, params);
}

double residual_l1(const PprState& state) { return state.residual.l1_norm(); }

std::size_t estimate_nnz(const PprState& state) {
  return state.estimate.nnz();
}

std::string dump_state(const PprState& state) {
  std::vector<NodeId> nodes;
  state.estimate.for_each([&](NodeId u, double) { nodes.push_back(u); });
  state.residual.for_each([&](NodeId u, double) { nodes.push_back(u); });
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

  std::ostringstream out;
  out.precision(17);
  for (NodeId u : nodes) {
    out << u << '\t' << state.estimate.get(u) << '\t' << state.residual.get(u)
        << '\n';
  }
  return out.str();
}

}  // namespace dynppe
