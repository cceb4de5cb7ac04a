#include <doctest.h>

#include <cmath>
#include <random>

#include "dynppe/errors.hpp"
#include "dynppe/oracle.hpp"
#include "dynppe/ppr.hpp"
#include "support/synthetic.hpp"

using namespace dynppe;
using namespace dynppe::testing;

namespace {

constexpr double kOracleTol = 1e-12;

double l1_diff(const SparseVector& a, const SparseVector& b, std::size_t n) {
  double out = 0.0;
  for (NodeId u = 0; u < n; ++u) out += std::abs(a.get(u) - b.get(u));
  return out;
}

double l1_error(const SparseVector& p, const ExactPpv& pi, std::size_t n) {
  double out = 0.0;
  for (NodeId u = 0; u < n; ++u) out += std::abs(p.get(u) - pi.at(u));
  return out;
}

}  // namespace

TEST_CASE("single push on a path") {
  GraphState g = path_graph(2);
  PprState state = make_fresh_state(0);
  push(state, 0, g, {0.15, 0.0, 1.0});
  CHECK(state.estimate.get(0) == doctest::Approx(0.15).epsilon(1e-12));
  CHECK(state.residual.get(0) == 0.0);
  CHECK(state.residual.get(1) == doctest::Approx(0.85).epsilon(1e-12));
  CHECK(state.work_counter == 1);
}

TEST_CASE("lazy push keeps beta fraction at the frontier") {
  GraphState g = path_graph(2);
  PprState state = make_fresh_state(0);
  push(state, 0, g, {0.15, 0.5, 1.0});
  CHECK(state.estimate.get(0) == doctest::Approx(0.15).epsilon(1e-12));
  CHECK(state.residual.get(0) == doctest::Approx(0.425).epsilon(1e-12));
  CHECK(state.residual.get(1) == doctest::Approx(0.425).epsilon(1e-12));
}

TEST_CASE("push is linear in signed residual") {
  GraphState g = path_graph(2);
  PprState state = make_fresh_state(0);
  state.residual.set(0, -0.2);
  push(state, 0, g, {0.15, 0.0, 1.0});
  CHECK(state.estimate.get(0) == doctest::Approx(-0.03).epsilon(1e-12));
  CHECK(state.residual.get(1) == doctest::Approx(-0.17).epsilon(1e-12));
}

TEST_CASE("push on an isolated node fails") {
  GraphState g = path_graph(2);
  g.apply_event({5, 6, EdgeOp::kInsert, 0});
  g.apply_event({5, 6, EdgeOp::kDelete, 1});
  PprState state = make_fresh_state(5);
  try {
    push(state, 5, g, {0.15, 0.0, 1.0});
    FAIL("expected degenerate node error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kDegenerateNode);
  }
}

TEST_CASE("forward_push stops after one push at loose precision") {
  GraphState g = path_graph(2);
  PprState state = make_fresh_state(0);
  forward_push(state, g, {0.15, 0.0, 1.0});
  CHECK(state.estimate.get(0) == doctest::Approx(0.15).epsilon(1e-12));
  CHECK(state.residual.get(1) == doctest::Approx(0.85).epsilon(1e-12));
  CHECK(state.work_counter == 1);
}

TEST_CASE("forward_push converges to the triangle PPV") {
  GraphState g = triangle_graph();
  PprState state = make_fresh_state(0);
  forward_push(state, g, {0.15, 0.0, 1e-7});
  CHECK(std::abs(state.estimate.get(0) - 0.403509) < 1e-6);
  CHECK(std::abs(state.estimate.get(1) - 0.298246) < 1e-6);
  CHECK(std::abs(state.estimate.get(2) - 0.298246) < 1e-6);
}

TEST_CASE("fresh push satisfies the per-entry bound, threshold and work bound") {
  std::mt19937_64 rng(31);
  GraphState g = graph_from_edges(random_edge_set(60, 150, rng));
  const double eps = 1e-8;
  const double alpha = 0.15;
  for (NodeId s : {NodeId{0}, NodeId{5}, NodeId{17}}) {
    if (g.degree(s) == 0) continue;
    PprState state = make_fresh_state(s);
    forward_push(state, g, {alpha, 0.0, eps});

    ExactPpv pi = exact_ppr(g, s, alpha, kOracleTol);
    for (NodeId v = 0; v < 60; ++v) {
      if (g.degree(v) == 0) continue;
      CHECK(std::abs(state.estimate.get(v) - pi.at(v)) <=
            eps * g.degree(v) + 1e-13);
      CHECK(std::abs(state.residual.get(v)) <= eps * g.degree(v));
    }
    double bound = (1.0 - residual_l1(state)) / (alpha * eps);
    CHECK(static_cast<double>(state.work_counter) <= bound);
    CHECK(estimate_nnz(state) <= static_cast<std::size_t>(1.0 / (eps * alpha)));
  }
}

TEST_CASE("estimates move monotonically within a signed phase") {
  GraphState g = triangle_graph();

  PprState pos = make_fresh_state(0);
  SparseVector last = pos.estimate;
  forward_push(pos, g, {0.15, 0.0, 1e-6},
               [&](const PprState& s, std::uint64_t) {
                 for (NodeId u = 0; u < 3; ++u) {
                   CHECK(s.estimate.get(u) >= last.get(u) - 1e-15);
                 }
                 last = s.estimate;
               });

  PprState neg;
  neg.source = 0;
  neg.initialized = true;
  neg.residual.set(0, -1.0);
  last = neg.estimate;
  forward_push(neg, g, {0.15, 0.0, 1e-6},
               [&](const PprState& s, std::uint64_t) {
                 for (NodeId u = 0; u < 3; ++u) {
                   CHECK(s.estimate.get(u) <= last.get(u) + 1e-15);
                 }
                 last = s.estimate;
               });
}

TEST_CASE("work ceiling aborts runaway pushes") {
  GraphState g = triangle_graph();
  PprState state = make_fresh_state(0);
  try {
    forward_push(state, g, {0.15, 0.0, 1e-9, 10});
    FAIL("expected budget error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kBudgetExceeded);
  }
}

TEST_CASE("insert adjustment matches the update rule") {
  PprState state;
  state.source = 9;
  state.initialized = true;
  state.estimate.set(3, 0.4);
  AppliedEvent applied{{3, 7, EdgeOp::kInsert, 0}, 5, 1};
  adjust_for_event(state, applied, 0.15);
  CHECK(state.estimate.get(3) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(state.residual.get(3) == doctest::Approx(-0.1 / 0.15).epsilon(1e-12));
  CHECK(state.residual.get(7) ==
        doctest::Approx(0.1 / 0.15 - 0.1).epsilon(1e-12));
}

TEST_CASE("delete adjustment matches the update rule") {
  PprState state;
  state.source = 9;
  state.initialized = true;
  state.estimate.set(3, 0.4);
  AppliedEvent applied{{3, 7, EdgeOp::kDelete, 0}, 3, 2};
  adjust_for_event(state, applied, 0.15);
  CHECK(state.estimate.get(3) == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(state.residual.get(3) == doctest::Approx(0.1 / 0.15).epsilon(1e-12));
  CHECK(state.residual.get(7) ==
        doctest::Approx(-(0.1 / 0.15 - 0.1)).epsilon(1e-12));
}

TEST_CASE("adjustment with zero estimates is a no-op") {
  PprState state = make_fresh_state(0);
  AppliedEvent applied{{4, 5, EdgeOp::kInsert, 0}, 2, 3};
  adjust_for_event(state, applied, 0.15);
  CHECK(state.estimate.nnz() == 0);
  CHECK(state.residual.get(0) == 1.0);
  CHECK(state.residual.nnz() == 1);
}

TEST_CASE("insert adjustment with a first edge and mass is degenerate") {
  PprState state;
  state.source = 0;
  state.initialized = true;
  state.estimate.set(4, 0.2);
  AppliedEvent applied{{4, 5, EdgeOp::kInsert, 0}, 1, 3};
  try {
    adjust_for_event(state, applied, 0.15);
    FAIL("expected degenerate denominator error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kDegenerateDenominator);
  }
}

TEST_CASE("empty batch equals a plain forward push") {
  std::mt19937_64 rng(41);
  GraphState g = graph_from_edges(random_edge_set(30, 70, rng));
  REQUIRE(g.degree(0) >= 1);

  PprState direct = make_fresh_state(0);
  double eps = 0.1 / g.degree_sum();
  forward_push(direct, g, {0.15, 0.0, eps});

  GraphState g2 = g;
  PprState batched = make_fresh_state(0);
  forward_push(batched, g2, {0.15, 0.0, eps});
  update_batch(batched, {g2.snapshot_index() + 1, {}}, g2, {0.15, 0.0, eps});
  CHECK(l1_diff(direct.estimate, batched.estimate, 30) <= 1e-14);
}

TEST_CASE("dynamic updates track a from-scratch push") {
  std::mt19937_64 rng(43);
  const std::size_t n = 100;
  EdgeList edges = random_edge_set(n, 300, rng);
  EdgeList initial(edges.begin(), edges.end() - 50);
  GraphState g = graph_from_edges(initial);
  const double alpha = 0.15;
  const double epsilon = 0.1;
  REQUIRE(g.degree(0) >= 1);

  PprState state = make_fresh_state(0);
  forward_push(state, g, {alpha, 0.0, epsilon / g.degree_sum()});

  SnapshotDelta d;
  d.snapshot_index = 1;
  std::int64_t ts = 0;
  for (auto it = edges.end() - 50; it != edges.end(); ++it) {
    d.events.push_back({it->first, it->second, EdgeOp::kInsert, ts++});
  }
  // epsilon_t is chosen on the post-delta graph.
  GraphState final_graph = g;
  final_graph.apply_delta(d);
  double eps_t = epsilon / final_graph.degree_sum();
  update_batch(state, d, g, {alpha, 0.0, eps_t});

  PprState scratch = make_fresh_state(0);
  forward_push(scratch, g, {alpha, 0.0, eps_t});

  CHECK(l1_diff(state.estimate, scratch.estimate, n) <= 2 * epsilon);

  ExactPpv pi = exact_ppr(g, 0, alpha, kOracleTol);
  CHECK(l1_error(state.estimate, pi, n) <= epsilon);
  CHECK(l1_error(scratch.estimate, pi, n) <= epsilon);
}

TEST_CASE("insert-then-delete round trip returns to the old PPV") {
  std::mt19937_64 rng(47);
  const std::size_t n = 60;
  GraphState g = graph_from_edges(random_edge_set(n, 150, rng));
  const double alpha = 0.15;
  const double epsilon = 0.1;
  REQUIRE(g.degree(2) >= 1);
  GraphState original = g;

  PprState state = make_fresh_state(2);
  forward_push(state, g, {alpha, 0.0, epsilon / g.degree_sum()});

  std::vector<std::pair<NodeId, NodeId>> fresh_edges;
  std::uniform_int_distribution<NodeId> pick(0, n - 1);
  while (fresh_edges.size() < 10) {
    NodeId u = pick(rng), v = pick(rng);
    if (u == v || g.has_edge(u, v)) continue;
    bool dup = false;
    for (auto [a, b] : fresh_edges) {
      if ((a == u && b == v) || (a == v && b == u)) dup = true;
    }
    if (!dup) fresh_edges.push_back({u, v});
  }

  SnapshotDelta ins{1, {}};
  std::int64_t ts = 0;
  for (auto [u, v] : fresh_edges) {
    ins.events.push_back({u, v, EdgeOp::kInsert, ts++});
  }
  GraphState after_ins = g;
  after_ins.apply_delta(ins);
  update_batch(state, ins, g, {alpha, 0.0, epsilon / after_ins.degree_sum()});

  SnapshotDelta del{2, {}};
  for (auto [u, v] : fresh_edges) {
    del.events.push_back({u, v, EdgeOp::kDelete, ts++});
  }
  update_batch(state, del, g, {alpha, 0.0, epsilon / original.degree_sum()});

  ExactPpv pi = exact_ppr(original, 2, alpha, kOracleTol);
  CHECK(l1_error(state.estimate, pi, n) <= epsilon);
}

TEST_CASE("push invariant survives mixed deltas with deletions") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 5; ++trial) {
    const std::size_t n = 30;
    GraphState g = graph_from_edges(random_edge_set(n, 70, rng));
    NodeId s = 0;
    while (g.degree(s) == 0) ++s;
    const double alpha = 0.15;
    const double epsilon = 0.1;

    PprState state = make_fresh_state(s);
    forward_push(state, g, {alpha, 0.0, epsilon / g.degree_sum()});
    std::int64_t ts = 0;
    for (int t = 0; t < 3; ++t) {
      SnapshotDelta d = random_mixed_delta(g, n, 6, 4, rng, ts);
      GraphState next = g;
      next.apply_delta(d);
      double eps_t = epsilon / next.degree_sum();
      update_batch(state, d, g, {alpha, 0.0, eps_t});
      double deviation = check_invariant(g, s, state.estimate, state.residual,
                                         alpha, kOracleTol);
      CHECK(deviation <= 1e-8);
    }
  }
}

TEST_CASE("fresh-push error is non-increasing in precision") {
  std::mt19937_64 rng(61);
  GraphState g = graph_from_edges(random_edge_set(80, 240, rng));
  NodeId s = 0;
  while (g.degree(s) == 0) ++s;
  ExactPpv pi = exact_ppr(g, s, 0.15, kOracleTol);

  double previous = -1.0;
  for (double factor : {0.5, 0.1, 0.02, 0.004}) {
    PprState state = make_fresh_state(s);
    forward_push(state, g, {0.15, 0.0, factor / g.degree_sum()});
    double err = l1_error(state.estimate, pi, 80);
    if (previous >= 0.0) CHECK(err <= previous + 1e-12);
    previous = err;
  }
}

TEST_CASE("residual l1 and estimate nnz") {
  PprState fresh = make_fresh_state(4);
  CHECK(residual_l1(fresh) == 1.0);
  CHECK(estimate_nnz(fresh) == 0);

  PprState mixed;
  mixed.residual.set(1, 0.3);
  mixed.residual.set(2, -0.2);
  CHECK(residual_l1(mixed) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("state dump golden content") {
  GraphState g = path_graph(2);
  PprState state = make_fresh_state(0);
  forward_push(state, g, {0.15, 0.0, 1.0});
  CHECK(dump_state(state) ==
        "0\t0.14999999999999999\t0\n1\t0\t0.84999999999999998\n");
}

TEST_CASE("state dump is deterministic and sorted") {
  std::mt19937_64 rng(59);
  GraphState g = graph_from_edges(random_edge_set(25, 60, rng));
  REQUIRE(g.degree(3) >= 1);

  auto run = [&]() {
    PprState state = make_fresh_state(3);
    forward_push(state, g, {0.15, 0.0, 1e-5});
    return dump_state(state);
  };
  std::string a = run();
  std::string b = run();
  CHECK(a == b);
  CHECK(a.find('\t') != std::string::npos);
}
