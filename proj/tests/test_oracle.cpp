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
constexpr double kTol = 1e-12;
}

TEST_CASE("teleport-only limit: alpha = 1 gives the unit vector") {
  GraphState g = triangle_graph();
  ExactPpv pi = exact_ppr(g, 1, 1.0, kTol);
  CHECK(pi.at(1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pi.at(0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(pi.at(2) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("single edge closed form") {
  GraphState g = path_graph(2);
  ExactPpv pi = exact_ppr(g, 0, 0.15, kTol);
  // alpha / (1 - (1 - alpha)^2) = 20/37 at the source.
  CHECK(std::abs(pi.at(0) - 0.540541) < 1e-6);
  CHECK(std::abs(pi.at(1) - 0.459459) < 1e-6);
}

TEST_CASE("triangle closed form") {
  GraphState g = triangle_graph();
  ExactPpv pi = exact_ppr(g, 0, 0.15, kTol);
  CHECK(std::abs(pi.at(0) - 0.403509) < 1e-6);
  CHECK(std::abs(pi.at(1) - 0.298246) < 1e-6);
  CHECK(std::abs(pi.at(2) - 0.298246) < 1e-6);
}

TEST_CASE("mass conservation and self-consistency") {
  std::mt19937_64 rng(3);
  GraphState g = graph_from_edges(random_edge_set(40, 100, rng));
  for (NodeId s : {NodeId{0}, NodeId{7}, NodeId{21}}) {
    if (g.degree(s) == 0) continue;
    ExactPpv pi = exact_ppr(g, s, 0.15, kTol);
    double sum = 0.0;
    for (double x : pi.values) sum += x;
    CHECK(std::abs(sum - 1.0) <= 40 * kTol);

    ExactPpv finer = exact_ppr(g, s, 0.15, kTol / 10);
    double diff = 0.0;
    for (NodeId u = 0; u < 40; ++u) diff += std::abs(pi.at(u) - finer.at(u));
    CHECK(diff <= kTol);
  }
}

TEST_CASE("relabeling equivariance") {
  std::mt19937_64 rng(5);
  EdgeList edges = random_edge_set(25, 60, rng);
  GraphState g = graph_from_edges(edges);

  std::vector<NodeId> perm(25);
  for (NodeId u = 0; u < 25; ++u) perm[u] = u;
  std::shuffle(perm.begin(), perm.end(), rng);
  EdgeList relabeled;
  for (auto [u, v] : edges) relabeled.push_back({perm[u], perm[v]});
  GraphState h = graph_from_edges(relabeled);

  NodeId s = 0;
  REQUIRE(g.degree(s) >= 1);
  ExactPpv pi_g = exact_ppr(g, s, 0.15, kTol);
  ExactPpv pi_h = exact_ppr(h, perm[s], 0.15, kTol);
  for (NodeId u = 0; u < 25; ++u) {
    CHECK(std::abs(pi_g.at(u) - pi_h.at(perm[u])) < 1e-10);
  }
}

TEST_CASE("invariant check on exact and fresh states") {
  GraphState g = triangle_graph();
  ExactPpv pi = exact_ppr(g, 0, 0.15, kTol);

  SparseVector p, r;
  for (NodeId u = 0; u < 3; ++u) p.set(u, pi.at(u));
  CHECK(check_invariant(g, 0, p, r, 0.15, kTol) <= 1e-11);

  SparseVector p0, r0;
  r0.set(0, 1.0);
  CHECK(check_invariant(g, 0, p0, r0, 0.15, kTol) <= 1e-11);
}

TEST_CASE("invariant holds mid-push on the triangle") {
  GraphState g = triangle_graph();
  PprState state = make_fresh_state(0);
  double worst = 0.0;
  forward_push(state, g, {0.15, 0.0, 1e-7, 1'000'000'000},
               [&](const PprState& s, std::uint64_t) {
                 worst = std::max(
                     worst, check_invariant(g, 0, s.estimate, s.residual,
                                            0.15, kTol));
               });
  CHECK(worst <= 1e-8);
}

TEST_CASE("degree-weighted symmetry") {
  GraphState path = path_graph(2);
  CHECK(check_symmetry(path, 0.15, 1e-11) <= 1e-10);
  ExactPpv pi0 = exact_ppr(path, 0, 0.15, kTol);
  CHECK(std::abs(1.0 * pi0.at(1) - 0.459459) < 1e-6);

  GraphState star = star_graph(4);
  ExactPpv pi_center = exact_ppr(star, 0, 0.15, kTol);
  ExactPpv pi_leaf = exact_ppr(star, 1, 0.15, kTol);
  CHECK(std::abs(4.0 * pi_center.at(1) - 1.0 * pi_leaf.at(0)) < 1e-10);
  CHECK(check_symmetry(star, 0.15, 1e-11) <= 1e-10);
}

TEST_CASE("mass ratio bound") {
  GraphState edge = path_graph(2);
  CHECK(check_mass_bound(edge, 0, 0.15, 1e-11) ==
        doctest::Approx(1.0).epsilon(1e-9));

  GraphState k3 = triangle_graph();
  CHECK(check_mass_bound(k3, 1, 0.15, 1e-11) ==
        doctest::Approx(0.5).epsilon(1e-9));

  CHECK(check_mass_bound(k3, 2, 1.0, 1e-11) ==
        doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("caps and topology errors") {
  std::mt19937_64 rng(9);
  GraphState big = graph_from_edges(random_edge_set(300, 600, rng));
  OracleCaps caps;
  caps.all_pairs_cap = 200;
  SparseVector p, r;
  CHECK_THROWS_AS(check_symmetry(big, 0.15, 1e-11, caps), Error);
  try {
    check_invariant(big, 0, p, r, 0.15, kTol, caps);
    FAIL("expected cap error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kCapExceeded);
  }

  GraphState g = path_graph(2);
  g.apply_event({5, 6, EdgeOp::kInsert, 0});
  g.apply_event({5, 6, EdgeOp::kDelete, 1});
  try {
    exact_ppr(g, 5, 0.15, kTol);
    FAIL("expected topology error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kUnsupportedTopology);
  }
}
