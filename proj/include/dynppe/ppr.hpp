#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "dynppe/graph.hpp"
#include "dynppe/sparse_vector.hpp"

namespace dynppe {

// Parameters of the push primitive. epsilon_t is the per-snapshot precision:
// the push loop runs until |r(u)| <= epsilon_t * d(u) for every node with
// d(u) >= 1.
struct PushParams {
  double alpha = 0.15;       // teleport probability, (0, 1]
  double beta = 0.0;         // laziness, [0, 1)
  double epsilon_t = 0.0;    // push threshold, > 0
  std::uint64_t work_ceiling = 10'000'000'000ULL;

  void validate() const;
};

// Per-source push state: sparse estimate p_s, signed sparse residual r_s,
// and the accumulated push work (sum of d(u) over executed pushes).
//
// dirty/pushed_epsilon let forward_push seed its frontier from the nodes
// touched since the last push instead of rescanning every residual entry.
// Between pushes all residual and degree changes must flow through
// adjust_for_event (update_from_trace does this); any other edit to the
// residual map requires a fresh full scan, which make_fresh_state and the
// public push() arrange by resetting pushed_epsilon.
//
// When journal_estimate is set, every estimate write is appended to
// estimate_journal as (node, stored value) so a consumer can mirror the
// estimate without rescanning it; the consumer clears the journal.
struct PprState {
  NodeId source = 0;
  SparseVector estimate;
  SparseVector residual;
  std::uint64_t work_counter = 0;
  bool initialized = false;
  std::vector<NodeId> dirty;
  double pushed_epsilon = -1.0;  // < 0 forces a full seeding scan
  bool journal_estimate = false;
  std::vector<std::pair<NodeId, double>> estimate_journal;
};

// Fresh state: p = 0, r = 1_s.
PprState make_fresh_state(NodeId source);

// Invoked after every completed push with the current state and the number
// of pushes executed so far in this forward_push call.
using PushObserver =
    std::function<void(const PprState&, std::uint64_t push_count)>;

// One push at u: p(u) += alpha * r(u); each neighbor gains
// (1 - alpha) * r(u) * (1 - beta) / d(u); r(u) becomes (1 - alpha) * r(u) * beta.
// Throws Error(kDegenerateNode) if d(u) == 0.
void push(PprState& state, NodeId u, const GraphState& g,
          const PushParams& params);

// Runs the positive push loop to completion, then the negative one, with a
// FIFO frontier and in-queue flags. On return every node u with d(u) >= 1
// satisfies |r(u)| <= epsilon_t * d(u). Zero-degree nodes are skipped and
// keep their residual. Throws Error(kBudgetExceeded) past the work ceiling.
void forward_push(PprState& state, const GraphState& g,
                  const PushParams& params, const PushObserver& observer = {});

// Estimate/residual adjustment for one applied event, using the recorded
// post-event degrees. The rule is applied to the ordered pair (u, v) and
// then to (v, u), since both endpoint degrees change on an undirected edge.
// A half whose estimate entry is zero is a no-op.
void adjust_for_event(PprState& state, const AppliedEvent& applied,
                      double alpha);

// Convenience overload reading post-event degrees from a graph that already
// reflects exactly this event.
void adjust_for_event(PprState& state, const EdgeEvent& e, const GraphState& g,
                      double alpha);

// Replays a delta trace against a graph already at snapshot t: adjusts per
// applied event in stream order, then runs forward_push at params.epsilon_t.
void update_from_trace(PprState& state, const DeltaTrace& trace,
                       const GraphState& g, const PushParams& params);

// Single-state batch update: applies the delta to g event by event (with
// per-event adjustment), then pushes. Equivalent to apply_delta_traced
// followed by update_from_trace.
void update_batch(PprState& state, const SnapshotDelta& delta, GraphState& g,
                  const PushParams& params);

double residual_l1(const PprState& state);
std::size_t estimate_nnz(const PprState& state);

// Debug dump: one "node<TAB>p<TAB>r" line per touched node, sorted by id.
std::string dump_state(const PprState& state);

}  // namespace dynppe
