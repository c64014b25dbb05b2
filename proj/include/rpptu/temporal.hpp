#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "rpptu/instance.hpp"
#include "rpptu/replicated.hpp"

namespace rpptu {

// Earliest-arrival movement over the deadhead subgraph, waiting allowed at
// vertices. Service spans without a parallel deadhead are not traversable.
struct PathResult {
  bool reachable = false;
  std::vector<int> arcs;  // base arc indices in traversal order
  Minutes arrive = 0;
  Minutes fuel = 0;   // sum of traversed weights
  Minutes delay = 0;  // (arrive - start) - fuel
};

PathResult fastest_path(const Instance& inst, int from, int to, Minutes start);

struct TrajectoryStep {
  int rep_arc = -1;  // replicated arc id
  Minutes depart = 0;
  Minutes arrive = 0;
  Minutes wait_before = 0;  // time spent at the tail before departing
};

struct AgentTrajectory {
  int agent = 0;
  std::vector<TrajectoryStep> steps;  // source to sink, virtual arcs included
  Minutes finish = 0;
  Minutes fuel = 0;
  Minutes waiting = 0;
};

enum class TemporalStatus {
  Feasible,
  Infeasible,  // unreachable in practice: every window closes by the horizon
  MalformedX,  // walk extraction hit a vertex with out-degree != 1
};

struct Trajectory {
  TemporalStatus status = TemporalStatus::Feasible;
  std::vector<AgentTrajectory> agents;
  Minutes gamma = 0;       // max agent finish time
  Minutes total_fuel = 0;  // over extracted walks only
  std::string note;
};

// Fixed integral x: extract each agent's source-to-sink walk and propagate
// earliest departures. Greedy propagation minimizes gamma because waiting is
// free and earliest-departure is monotone in arrival time.
Trajectory solve_temporal(const ReplicatedGraph& rg, const std::vector<double>& x);

nlohmann::json trajectory_to_json(const ReplicatedGraph& rg, const Trajectory& t);
std::string trajectory_gantt(const ReplicatedGraph& rg, const Trajectory& t);

}  // namespace rpptu
