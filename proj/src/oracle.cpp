#include "dynppe/oracle.hpp"

#include <cmath>
#include <string>

#include "dynppe/errors.hpp"

namespace dynppe {

namespace {

void require_positive_degree(const GraphState& g, NodeId s) {
  if (g.degree(s) == 0) {
    throw Error(ErrorKind::kUnsupportedTopology,
                "exact PPR undefined for zero-degree node " +
                    std::to_string(s));
  }
}

void require_within(std::size_t n, std::size_t cap, const char* what) {
  if (n > cap) {
    throw Error(ErrorKind::kCapExceeded,
                std::string(what) + ": graph has " + std::to_string(n) +
                    " nodes, cap is " + std::to_string(cap));
  }
}

}  // namespace

ExactPpv exact_ppr(const GraphState& g, NodeId s, double alpha, double tol,
                   const OracleCaps& caps) {
  if (alpha <= 0.0 || alpha > 1.0) {
    throw Error(ErrorKind::kConfig, "alpha must be in (0, 1]");
  }
  if (tol <= 0.0) {
    throw Error(ErrorKind::kConfig, "oracle tolerance must be positive");
  }
  require_positive_degree(g, s);
  require_within(g.known_node_count(), caps.single_source_cap,
                 "exact_ppr single-source cap");

  const std::size_t n = g.known_node_count();
  std::vector<double> cur(n, 0.0);
  std::vector<double> next(n, 0.0);
  cur[s] = 1.0;

  for (std::size_t iter = 0; iter < caps.max_iterations; ++iter) {
    double change = 0.0;
    for (NodeId u = 0; u < n; ++u) {
      double acc = 0.0;
      for (NodeId v : g.neighbors(u)) {
        acc += cur[v] / g.degree(v);
      }
      double value = (1.0 - alpha) * acc;
      if (u == s) value += alpha;
      next[u] = value;
      change += std::abs(value - cur[u]);
    }
    cur.swap(next);
    if (change <= tol) {
      ExactPpv out;
      out.source = s;
      out.tolerance = tol;
      out.values = std::move(cur);
      return out;
    }
  }
  throw Error(ErrorKind::kBudgetExceeded,
              "exact_ppr did not converge within iteration cap");
}

double check_invariant(const GraphState& g, NodeId s, const SparseVector& p,
                       const SparseVector& r, double alpha, double tol,
                       const OracleCaps& caps) {
  require_within(g.known_node_count(), caps.all_pairs_cap,
                 "check_invariant cap");
  const std::size_t n = g.known_node_count();

  ExactPpv pi_s = exact_ppr(g, s, alpha, tol, caps);
  std::vector<double> lhs(n, 0.0);
  for (NodeId u = 0; u < n; ++u) {
    lhs[u] = pi_s.at(u) - p.get(u);
  }
  for (const auto& [v, rv] : r.sorted_entries()) {
    ExactPpv pi_v = exact_ppr(g, v, alpha, tol, caps);
    for (NodeId u = 0; u < n; ++u) {
      lhs[u] -= rv * pi_v.at(u);
    }
  }
  double deviation = 0.0;
  for (double x : lhs) deviation = std::max(deviation, std::abs(x));
  return deviation;
}

double check_symmetry(const GraphState& g, double alpha, double tol,
                      const OracleCaps& caps) {
  require_within(g.known_node_count(), caps.all_pairs_cap,
                 "check_symmetry cap");
  const std::size_t n = g.known_node_count();

  std::vector<ExactPpv> pi(n);
  for (NodeId u = 0; u < n; ++u) {
    if (g.degree(u) >= 1) pi[u] = exact_ppr(g, u, alpha, tol, caps);
  }
  double deviation = 0.0;
  for (NodeId u = 0; u < n; ++u) {
    if (g.degree(u) == 0) continue;
    for (NodeId v = u; v < n; ++v) {
      if (g.degree(v) == 0) continue;
      double lhs = g.degree(u) * pi[u].at(v);
      double rhs = g.degree(v) * pi[v].at(u);
      deviation = std::max(deviation, std::abs(lhs - rhs));
    }
  }
  return deviation;
}

double check_mass_bound(const GraphState& g, NodeId t, double alpha,
                        double tol, const OracleCaps& caps) {
  require_within(g.known_node_count(), caps.all_pairs_cap,
                 "check_mass_bound cap");
  require_positive_degree(g, t);
  const std::size_t n = g.known_node_count();

  double sum = 0.0;
  for (NodeId x = 0; x < n; ++x) {
    if (g.degree(x) == 0) continue;
    sum += exact_ppr(g, x, alpha, tol, caps).at(t);
  }
  return sum / g.degree(t);
}

}  // namespace dynppe
