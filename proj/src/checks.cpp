#include "dynppe/checks.hpp"

#include <algorithm>
#include <cmath>

#include "dynppe/errors.hpp"
#include "dynppe/ppr.hpp"

namespace dynppe {

namespace {

double l1_error(const SparseVector& p, const ExactPpv& pi,
                std::size_t node_count) {
  double err = 0.0;
  for (NodeId u = 0; u < node_count; ++u) {
    err += std::abs(p.get(u) - pi.at(u));
  }
  return err;
}

std::vector<NodeId> choose_sources(const GraphState& g, std::size_t limit) {
  std::vector<NodeId> sources;
  for (NodeId u = 0; u < g.known_node_count() && sources.size() < limit; ++u) {
    if (g.degree(u) >= 1) sources.push_back(u);
  }
  return sources;
}

}  // namespace

std::vector<CheckResult> run_check_suite(const ParsedStream& stream,
                                         const RunConfig& cfg,
                                         const CheckOptions& options) {
  cfg.validate();

  // The final graph must fit the oracle caps.
  GraphState final_graph = build_initial_graph(stream);
  for (const SnapshotDelta& d : stream.deltas) final_graph.apply_delta(d);
  if (final_graph.known_node_count() > options.caps.all_pairs_cap) {
    throw Error(ErrorKind::kCapExceeded,
                "stream grows past the oracle all-pairs cap of " +
                    std::to_string(options.caps.all_pairs_cap) + " nodes");
  }
  std::vector<NodeId> sources =
      choose_sources(final_graph, options.max_sources);
  if (sources.empty()) {
    throw Error(ErrorKind::kConfig, "stream produces no positive-degree node");
  }

  const double tol = options.oracle_tol;
  const std::size_t n = final_graph.known_node_count();

  double max_l1 = 0.0;
  double max_entry_ratio = 0.0;
  double max_invariant = 0.0;

  Pipeline pipeline(build_initial_graph(stream), sources, cfg);
  auto inspect = [&](const Pipeline& p) {
    const GraphState& g = p.graph();
    if (g.degree_sum() == 0) return;
    const double eps_t = p.epsilon_log().back();
    for (const TrackedNode& t : p.tracked()) {
      if (!t.ppr.initialized) continue;
      ExactPpv pi = exact_ppr(g, t.node, cfg.alpha, tol, options.caps);
      max_l1 =
          std::max(max_l1, l1_error(t.ppr.estimate, pi, g.known_node_count()));
      for (NodeId v = 0; v < g.known_node_count(); ++v) {
        if (g.degree(v) == 0) continue;
        double entry = std::abs(t.ppr.estimate.get(v) - pi.at(v)) /
                       g.degree(v);
        max_entry_ratio = std::max(max_entry_ratio, entry / eps_t);
      }
      max_invariant = std::max(
          max_invariant, check_invariant(g, t.node, t.ppr.estimate,
                                         t.ppr.residual, cfg.alpha, tol,
                                         options.caps));
    }
  };

  inspect(pipeline);
  for (const SnapshotDelta& d : stream.deltas) {
    pipeline.process_snapshot(d);
    inspect(pipeline);
  }

  if (options.corrupt_residual) {
    // Negative control: a corrupted residual must blow the invariant check.
    for (TrackedNode& t : pipeline.tracked()) {
      if (!t.ppr.initialized) continue;
      const double eps_t = pipeline.epsilon_log().back();
      NodeId u = t.node;
      t.ppr.residual.add(u, 10.0 * eps_t * pipeline.graph().degree(u));
      max_invariant = std::max(
          max_invariant,
          check_invariant(pipeline.graph(), t.node, t.ppr.estimate,
                          t.ppr.residual, cfg.alpha, tol, options.caps));
      break;
    }
  }

  // Fresh pushes on the final graph: work bound and precision monotonicity.
  double max_work_ratio = 0.0;
  double max_monotonicity_gap = 0.0;
  const std::uint64_t m_final = final_graph.degree_sum();
  if (m_final > 0) {
    for (NodeId s : sources) {
      ExactPpv pi = exact_ppr(final_graph, s, cfg.alpha, tol, options.caps);
      double previous_error = -1.0;
      for (double factor : {0.5, 0.1, 0.02, 0.004}) {
        double eps_t = factor / static_cast<double>(m_final);
        PprState state = make_fresh_state(s);
        forward_push(state, final_graph,
                     {cfg.alpha, cfg.beta, eps_t, cfg.work_ceiling});
        double bound =
            (1.0 - residual_l1(state)) / (cfg.alpha * eps_t);
        max_work_ratio = std::max(
            max_work_ratio, static_cast<double>(state.work_counter) / bound);
        double err = l1_error(state.estimate, pi, n);
        if (previous_error >= 0.0) {
          max_monotonicity_gap =
              std::max(max_monotonicity_gap, err - previous_error);
        }
        previous_error = err;
      }
    }
  }

  double symmetry = check_symmetry(final_graph, cfg.alpha,
                                   options.symmetry_tol, options.caps);
  double mass = 0.0;
  for (NodeId u = 0; u < n; ++u) {
    if (final_graph.degree(u) == 0) continue;
    mass = std::max(mass, check_mass_bound(final_graph, u, cfg.alpha,
                                           options.symmetry_tol,
                                           options.caps));
  }

  std::vector<CheckResult> results;
  auto report = [&](std::string name, double measured, double threshold) {
    results.push_back(
        {std::move(name), measured, threshold, measured <= threshold});
  };
  report("l1 estimation bound", max_l1, cfg.epsilon);
  report("per-entry estimation bound (ratio to eps_t * d)", max_entry_ratio,
         1.0);
  report("fresh push work bound (ratio)", max_work_ratio, 1.0);
  report("push invariant identity", max_invariant, options.invariant_bound);
  report("degree-weighted symmetry", symmetry, 10.0 * options.symmetry_tol);
  report("mass ratio bound", mass, 1.0 + 10.0 * options.symmetry_tol);
  report("precision monotonicity (max error increase)", max_monotonicity_gap,
         1e-12);
  return results;
}

}  // namespace dynppe
