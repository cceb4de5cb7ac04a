#pragma once

#include <string>
#include <vector>

#include "dynppe/event_stream.hpp"
#include "dynppe/oracle.hpp"
#include "dynppe/pipeline.hpp"

namespace dynppe {

struct CheckResult {
  std::string name;
  double measured = 0.0;
  double threshold = 0.0;
  bool passed = false;
};

struct CheckOptions {
  std::size_t max_sources = 5;      // tracked sources, lowest active ids
  double oracle_tol = 1e-12;
  double symmetry_tol = 1e-11;      // pass bound is 10x this
  double invariant_bound = 1e-8;
  OracleCaps caps;
  // Test hook: corrupt one residual entry by 10 * eps_t * d before the
  // invariant check so a healthy suite must report the failure.
  bool corrupt_residual = false;
};

// Runs every oracle-backed invariant suite over the stream: the l1 and
// per-entry estimation bounds, the fresh-push work bound, the push
// invariant identity, PPR symmetry and mass bounds, and precision
// monotonicity on the final graph.
std::vector<CheckResult> run_check_suite(const ParsedStream& stream,
                                         const RunConfig& cfg,
                                         const CheckOptions& options);

}  // namespace dynppe
