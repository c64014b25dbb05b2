#include <doctest.h>

#include <cstdint>
#include <vector>

#include "rpptu/exactrank.hpp"
#include "rpptu/fixtures.hpp"
#include "rpptu/polyhedra.hpp"

using namespace rpptu;

namespace {

// Smallest service instance: two vertices, one service arc.
Instance two_vertex(int agents = 1) {
  InstanceSpec spec;
  spec.name = "pq";
  spec.num_agents = agents;
  spec.horizon = 0;
  spec.vertices = {"p", "q"};
  spec.depot = "p";
  spec.arcs = {{"e0", "p", "q", 1, false},
               {"e1", "q", "p", 1, false},
               {"s", "p", "q", 1, true}};
  return build_instance(spec);
}

Instance triangle(std::vector<TimeWindow> bc_windows = {}) {
  InstanceSpec spec;
  spec.name = "tri";
  spec.num_agents = 1;
  spec.horizon = 30;
  spec.vertices = {"a", "b", "c"};
  spec.depot = "a";
  spec.arcs = {{"d0", "a", "b", 1, false},
               {"d1", "b", "c", 2, false},
               {"d2", "c", "a", 3, false},
               {"s0", "b", "c", 2, true}};
  if (!bc_windows.empty()) {
    spec.windows["d1"] = bc_windows;
    spec.windows["s0"] = bc_windows;
  }
  return build_instance(spec);
}

}  // namespace

TEST_CASE("full enumeration of the two-vertex polyhedron") {
  Instance inst = two_vertex();
  ReplicatedGraph rg = build_replicated(inst);
  REQUIRE(rg.num_vertices() == 6);
  REQUIRE(rg.num_arcs() == 9);
  PointCloud cloud = enumerate_cgf_points(rg);
  CHECK_FALSE(cloud.truncated);
  CHECK(cloud.num_cols == 9);
  CHECK(cloud.num_points() > 0);
  CHECK(cloud.rays.size() == 2);  // one deadhead cycle per layer

  // every enumerated point is a relaxed-feasible integer point
  for (std::size_t i = 0; i < cloud.num_points(); ++i) {
    std::vector<double> x(cloud.point(i), cloud.point(i) + cloud.num_cols);
    CHECK(check_feasible_integer(rg, x, CoverageMode::AtLeastOnce).ok);
  }

  // a single agent has no idle/serve freedom: the skeleton is unique and
  // only the two layer cycles move, one short of the arc/vertex gap
  CHECK(affine_dimension(cloud) == 2);
  CHECK(equality_rank(rg) == 6);

  // rays are circulations: balanced at every vertex
  for (const auto& ray : cloud.rays) {
    REQUIRE(static_cast<int>(ray.size()) == rg.num_arcs());
    for (int v = 0; v < rg.num_vertices(); ++v) {
      int net = 0;
      for (int a : rg.out_arcs[v]) net += ray[a];
      for (int a : rg.in_arcs[v]) net -= ray[a];
      CHECK(net == 0);
    }
  }
}

TEST_CASE("arc/vertex gap is attained with a second agent") {
  Instance inst = two_vertex(2);
  ReplicatedGraph rg = build_replicated(inst);
  REQUIRE(rg.num_vertices() == 12);
  REQUIRE(rg.num_arcs() == 18);
  PointCloud cloud = enumerate_cgf_points(rg);
  CHECK_FALSE(cloud.truncated);
  CHECK(cloud.rays.size() == 4);
  CHECK(affine_dimension(cloud) == 6);  // |arcs| - |vertices|
  CHECK(equality_rank(rg) == 12);

  auto family = construct_lemma1_family(rg);
  REQUIRE(family.size() == 7);  // dim + 1
  CHECK(affine_rank_of(family, {}, rg.num_arcs()) == 6);
}

TEST_CASE("deadhead cycle basis has the circuit-rank size") {
  Instance s3 = make_small3();
  auto cyc = deadhead_cycle_basis(s3.graph);
  CHECK(cyc.size() == 2);  // 4 deadheads - 3 vertices + 1
  for (const auto& usage : cyc) {
    REQUIRE(usage.size() == s3.graph.arcs.size());
    for (std::size_t a = 0; a < usage.size(); ++a)
      if (s3.graph.arcs[a].service) CHECK(usage[a] == 0);
    // balanced at every base vertex
    for (std::size_t v = 0; v < s3.graph.vertex_ids.size(); ++v) {
      int net = 0;
      for (std::size_t a = 0; a < usage.size(); ++a) {
        if (s3.graph.arcs[a].tail == static_cast<int>(v)) net += usage[a];
        if (s3.graph.arcs[a].head == static_cast<int>(v)) net -= usage[a];
      }
      CHECK(net == 0);
    }
  }

  Instance tri = triangle();
  CHECK(deadhead_cycle_basis(tri.graph).size() == 1);
}

TEST_CASE("constructive dimension family on the 3-vertex fixture") {
  Instance inst = make_small3();
  ReplicatedGraph rg = build_replicated(inst);
  auto family = construct_lemma1_family(rg);
  REQUIRE(family.size() == 21);  // dim + 1 affinely independent solutions
  CHECK(affine_rank_of(family, {}, rg.num_arcs()) == 20);
  for (const auto& pt : family) {
    std::vector<double> x(pt.begin(), pt.end());
    CHECK(check_feasible_integer(rg, x, CoverageMode::AtLeastOnce).ok);
  }
}

TEST_CASE("dimension family requires a second agent") {
  Instance inst = two_vertex();
  ReplicatedGraph rg = build_replicated(inst);
  CHECK_THROWS_AS(construct_lemma1_family(rg), ValidationError);
}

TEST_CASE("valid but slack inequality is not a facet") {
  Instance inst = two_vertex();
  ReplicatedGraph rg = build_replicated(inst);
  PointCloud cloud = enumerate_cgf_points(rg);
  Cut cut;
  cut.coeffs = {{0, 1.0}};
  cut.rhs = -1.0;  // x >= 0 >= -1 everywhere, never tight
  FacetReport rep = verify_facet(rg, cut, cloud);
  CHECK(rep.valid);
  CHECK(rep.tight_points == 0);
  CHECK_FALSE(rep.facet);
  CHECK(rep.dim == 2);
}

TEST_CASE("exhaustive oracle on the triangle") {
  OracleResult plain = oracle_optimum(triangle());
  CHECK(plain.cost == 12);
  CHECK(plain.fuel == 6);
  CHECK(plain.gamma == 6);
  REQUIRE(plain.finishes.size() == 1);
  CHECK(plain.finishes[0] == 6);

  // closing b->c between 2 and 4 delays the service run by 3
  OracleResult waited = oracle_optimum(triangle({{2, 4}}));
  CHECK(waited.cost == 15);
  CHECK(waited.fuel == 6);
  CHECK(waited.gamma == 9);
}

TEST_CASE("oracle refuses instances beyond its budget") {
  Instance tri = triangle();
  OracleLimits tight;
  tight.max_vertices = 2;
  CHECK_THROWS_AS(oracle_optimum(tri, tight), LimitError);
}

TEST_CASE("restricting the oracle to the optimal orders reproduces it") {
  Instance inst = make_small3();
  OracleResult best = oracle_optimum(inst);
  CHECK(best.cost == 18);
  // one agent sweeps both services in layer order, the other stays home
  OracleResult fixed = oracle_restricted(inst, {{0, 1}, {}});
  CHECK(fixed.cost == best.cost);
  CHECK(fixed.fuel == 9);
  CHECK(fixed.gamma == 9);
  // the wrong split is strictly worse
  OracleResult split = oracle_restricted(inst, {{0}, {1}});
  CHECK(split.cost > best.cost);
}

TEST_CASE("incremental exact rank with gcd-free reduction") {
  RationalRankAccumulator acc(3);
  CHECK(acc.dim() == 3);
  CHECK(acc.add_row({1, 0, 0}));
  CHECK(acc.add_row({0, 1, 0}));
  CHECK_FALSE(acc.add_row({7, -5, 0}));
  CHECK(acc.rank() == 2);
  CHECK(acc.add_row({0, 0, 5}));
  CHECK(acc.rank() == 3);
  CHECK_FALSE(acc.add_row({123, 456, 789}));

  CHECK(exact_rank({{2, 4}, {1, 2}}, 2) == 1);
  CHECK(exact_rank({}, 4) == 0);
}

TEST_CASE("exact rank survives cross-multiplication overflow") {
  // pivots near 2^32 force the fraction-free updates past int64
  const std::int64_t big = 4000000000LL;
  RationalRankAccumulator acc(3);
  CHECK(acc.add_row({big, 1, 0}));
  CHECK(acc.add_row({big + 1, 1, 0}));  // determinant -1, independent
  CHECK(acc.rank() == 2);
  CHECK_FALSE(acc.add_row({big, big, 0}));  // in the span of the first two
  CHECK(acc.add_row({big, big, big}));
  CHECK(acc.rank() == 3);
}
