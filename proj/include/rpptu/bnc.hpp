#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "rpptu/instance.hpp"
#include "rpptu/spatial.hpp"
#include "rpptu/temporal.hpp"

namespace rpptu {

struct SolveOptions {
  int node_budget = 1000;  // branch-generated nodes; cut re-queues are free
  double time_budget_seconds = std::numeric_limits<double>::infinity();
  bool use_cuts = true;
  TemporalEstimateMode estimate = TemporalEstimateMode::PerAgent;
  std::function<void(const Cut&)> on_cut;  // fires once per pooled cut
};

struct SolveStats {
  int nodes_explored = 0;  // popped and LP-solved
  int nodes_branched = 0;  // children created, the budget basis
  int cut_rounds = 0;      // re-queues caused by new cuts
  int cuts_added = 0;
  int lp_solves = 0;
  double wall_seconds = 0.0;
  double lower_bound = -std::numeric_limits<double>::infinity();
  Minutes upper_bound = -1;  // -1 while no incumbent exists
  bool optimal = false;
};

// status: "optimal" | "gap" | "infeasible"
struct Solution {
  std::string status = "infeasible";
  Minutes objective = -1;
  Minutes fuel = -1;
  Minutes gamma = -1;
  Trajectory trajectory;
  std::vector<double> x;  // incumbent point over replicated arcs
  SolveStats stats;
};

Solution solve(const Instance& inst, const SolveOptions& opts = {});

std::string solution_to_json(const Instance& inst, const Solution& sol,
                             bool include_wall_time = true);

}  // namespace rpptu
