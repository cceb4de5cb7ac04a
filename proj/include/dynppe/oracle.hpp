#pragma once

#include <cstddef>
#include <vector>

#include "dynppe/graph.hpp"
#include "dynppe/sparse_vector.hpp"

namespace dynppe {

// Exact personalized PageRank vector computed by fixed-point iteration.
struct ExactPpv {
  NodeId source = 0;
  double tolerance = 0.0;
  std::vector<double> values;  // indexed by NodeId, zero for untouched ids

  double at(NodeId u) const {
    return u < values.size() ? values[u] : 0.0;
  }
};

struct OracleCaps {
  std::size_t all_pairs_cap = 200;     // node limit for all-pairs checks
  std::size_t single_source_cap = 2000;
  std::size_t max_iterations = 1'000'000;
};

// Solves pi = alpha * 1_s + (1 - alpha) * pi * W entrywise, iterating until
// the l1 change falls to tol; the result is within tol / alpha of the unique
// solution in l1. The source must have degree >= 1 (on an undirected graph
// every node reachable from it then has degree >= 1 as well).
ExactPpv exact_ppr(const GraphState& g, NodeId s, double alpha, double tol,
                   const OracleCaps& caps = {});

// Max over u of |pi_s(u) - p(u) - sum_v r(v) * pi_v(u)|, the deviation from
// the push invariant. Requires an exact PPV for every node carrying residual
// mass, so all such nodes must have degree >= 1.
double check_invariant(const GraphState& g, NodeId s, const SparseVector& p,
                       const SparseVector& r, double alpha, double tol,
                       const OracleCaps& caps = {});

// Max over node pairs of |d(u) pi_u(v) - d(v) pi_v(u)|. Passing means the
// value is at most 10 * tol.
double check_symmetry(const GraphState& g, double alpha, double tol,
                      const OracleCaps& caps = {});

// Returns sum_x pi_x(t) / d(t) over all positive-degree sources x. Passing
// means the value is at most 1 + 10 * tol.
double check_mass_bound(const GraphState& g, NodeId t, double alpha,
                        double tol, const OracleCaps& caps = {});

}  // namespace dynppe
