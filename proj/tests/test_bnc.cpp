#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "crafted.hpp"
#include "rpptu/bnc.hpp"
#include "rpptu/fixtures.hpp"
#include "rpptu/gen.hpp"
#include "rpptu/polyhedra.hpp"
#include "rpptu/spatial.hpp"

using namespace rpptu;

namespace {

// |V| in {4,5,6}, 1..3 services, 1..2 agents: inside the oracle's budget
std::vector<GenConfig> sweep_configs() {
  std::vector<GenConfig> cfgs;
  for (int V : {4, 5, 6})
    for (int q : {1, 2, 3})
      for (int K : {1, 2})
        for (std::uint64_t seed : {1u, 2u}) {
          GenConfig cfg;
          cfg.num_vertices = V;
          cfg.arc_ratio = 1.5;
          cfg.beta = static_cast<double>(q) / std::llround(1.5 * V);
          cfg.num_agents = K;
          cfg.seed = seed;
          cfgs.push_back(cfg);
        }
  return cfgs;
}

}  // namespace

TEST_CASE("3-vertex fixture solves to its known optimum") {
  Instance inst = make_small3();
  Solution sol = solve(inst, {});
  REQUIRE(sol.status == "optimal");
  CHECK(sol.objective == 18);
  CHECK(sol.fuel == 9);
  CHECK(sol.gamma == 9);
  CHECK(sol.objective == sol.fuel + sol.gamma);
  CHECK(sol.stats.optimal);
  CHECK(sol.stats.lower_bound == doctest::Approx(18.0));
  CHECK(sol.stats.upper_bound == 18);
  CHECK(sol.stats.lp_solves >= 1);

  ReplicatedGraph rg = build_replicated(inst);
  REQUIRE(sol.x.size() == static_cast<std::size_t>(rg.num_arcs()));
  CHECK(check_feasible_integer(rg, sol.x, CoverageMode::Strict).ok);
  CHECK(spatial_cost(rg, sol.x) == sol.fuel);

  REQUIRE(sol.trajectory.status == TemporalStatus::Feasible);
  Minutes latest = 0;
  for (const AgentTrajectory& a : sol.trajectory.agents)
    latest = std::max(latest, a.finish);
  CHECK(latest == sol.gamma);
}

TEST_CASE("4-vertex two-service instance matches hand count and oracle") {
  Instance inst = rpptu_test::crafted_instance();
  Solution sol = solve(inst, {});
  REQUIRE(sol.status == "optimal");
  // one agent does everything: d-u 2, serve u-w 3, w-z 2, serve z-d 4
  CHECK(sol.objective == 22);
  CHECK(sol.objective == oracle_optimum(inst).cost);
}

TEST_CASE("solver equals the exhaustive oracle across a seeded sweep") {
  for (const GenConfig& cfg : sweep_configs()) {
    Instance inst = generate(cfg);
    CAPTURE(inst.name);
    OracleResult want = oracle_optimum(inst);
    Solution sol = solve(inst, {});
    REQUIRE(sol.status == "optimal");
    CHECK(sol.objective == want.cost);

    ReplicatedGraph rg = build_replicated(inst);
    CHECK(check_feasible_integer(rg, sol.x, CoverageMode::Strict).ok);
    CHECK(spatial_cost(rg, sol.x) == sol.fuel);
    CHECK(sol.fuel + sol.gamma == sol.objective);
  }
}

TEST_CASE("cutting planes never change the optimum") {
  for (const GenConfig& cfg : sweep_configs()) {
    Instance inst = generate(cfg);
    CAPTURE(inst.name);
    Solution with = solve(inst, {});
    SolveOptions off;
    off.use_cuts = false;
    Solution without = solve(inst, off);
    REQUIRE(with.status == "optimal");
    REQUIRE(without.status == "optimal");
    CHECK(with.objective == without.objective);
    CHECK(without.stats.cuts_added == 0);
  }
}

TEST_CASE("cut callback sees every pooled cut") {
  GenConfig cfg;
  cfg.num_vertices = 5;
  cfg.arc_ratio = 1.5;
  cfg.beta = 3.0 / 8;
  cfg.num_agents = 2;
  cfg.seed = 2;
  Instance inst = generate(cfg);
  SolveOptions opts;
  std::vector<Cut> seen;
  opts.on_cut = [&seen](const Cut& c) { seen.push_back(c); };
  Solution sol = solve(inst, opts);
  REQUIRE(sol.status == "optimal");
  CHECK(static_cast<int>(seen.size()) == sol.stats.cuts_added);
  for (const Cut& c : seen) {
    CHECK(c.rhs == 1.0);
    CHECK_FALSE(c.coeffs.empty());
    CHECK(c.service_arc >= 0);
    CHECK(c.service_arc < static_cast<int>(inst.graph.service_arcs.size()));
  }
}

TEST_CASE("exhausting the node budget yields an honest bound") {
  GenConfig cfg;
  cfg.num_vertices = 5;
  cfg.arc_ratio = 1.5;
  cfg.beta = 3.0 / 8;  // three services force branching
  cfg.num_agents = 2;
  cfg.seed = 2;
  Instance inst = generate(cfg);
  OracleResult want = oracle_optimum(inst);

  SolveOptions tight;
  tight.node_budget = 5;
  Solution sol = solve(inst, tight);
  CHECK(sol.status == "gap");
  CHECK_FALSE(sol.stats.optimal);
  CHECK(sol.stats.lower_bound > 0.0);
  CHECK(sol.stats.lower_bound <= static_cast<double>(want.cost));
  if (sol.stats.upper_bound >= 0) {
    CHECK(sol.stats.upper_bound >= want.cost);
    CHECK(sol.objective == sol.stats.upper_bound);
  } else {
    CHECK(sol.objective == -1);
  }

  // the full run settles at the oracle value
  Solution full = solve(inst, {});
  REQUIRE(full.status == "optimal");
  CHECK(full.objective == want.cost);
}

TEST_CASE("repeat solves serialize identically") {
  std::vector<Instance> insts{make_small3(), rpptu_test::crafted_instance()};
  GenConfig cfg;
  cfg.num_vertices = 6;
  cfg.arc_ratio = 1.5;
  cfg.beta = 2.0 / 9;
  cfg.num_agents = 2;
  cfg.seed = 7;
  insts.push_back(generate(cfg));
  for (const Instance& inst : insts) {
    CAPTURE(inst.name);
    Solution a = solve(inst, {});
    Solution b = solve(inst, {});
    CHECK(solution_to_json(inst, a, false) == solution_to_json(inst, b, false));
  }
}

TEST_CASE("solution serialization carries wall time only on request") {
  Instance inst = make_small3();
  Solution sol = solve(inst, {});
  std::string with = solution_to_json(inst, sol, true);
  std::string without = solution_to_json(inst, sol, false);
  CHECK(with.find("wall_seconds") != std::string::npos);
  CHECK(without.find("wall_seconds") == std::string::npos);
}
