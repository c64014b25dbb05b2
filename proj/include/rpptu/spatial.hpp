#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rpptu/instance.hpp"
#include "rpptu/lp.hpp"
#include "rpptu/replicated.hpp"

namespace rpptu {

// Connectivity cut: sum over delta+(S) plus the copies of one service arc
// outside S is at least 1. Identified by (service_arc, vertex_set).
struct Cut {
  int service_arc = -1;         // index into graph.service_arcs
  int agent = -1;               // agent block the set S lives in
  std::vector<int> vertex_set;  // S, sorted replicated vertex ids
  std::vector<std::pair<int, double>> coeffs;
  double rhs = 1.0;
};

// Branching state a node imposes on the spatial LP.
struct NodeFixings {
  std::vector<int> fixed_one;   // replicated arc ids, sorted
  std::vector<int> fixed_zero;  // replicated arc ids, sorted
};

// How the per-agent finish-time estimate rows sum running time. PerAgent
// charges each row only its own agent's arcs. Pooled charges every row the
// running time of all agents; with two agents working in parallel that row
// exceeds the true optimum, so PerAgent is the default and Pooled exists to
// demonstrate the difference.
enum class TemporalEstimateMode { PerAgent, Pooled };

struct SpatialModel {
  LpProblem lp;
  int gamma_hat_col = -1;
};

SpatialModel assemble(const ReplicatedGraph& rg, const NodeFixings& node,
                      const std::vector<Cut>& cuts,
                      TemporalEstimateMode mode = TemporalEstimateMode::PerAgent);

// Fuel of a spatial point: weighted sum over real arcs (virtual arcs are free).
Minutes spatial_cost(const ReplicatedGraph& rg, const std::vector<double>& x);

enum class CoverageMode { Strict, AtLeastOnce };

struct FeasibilityReport {
  bool ok = true;
  std::string violation;
};

// Integer feasibility of x against flow balance, source degree and service
// coverage (exactly-once in Strict, >= 1 in AtLeastOnce).
FeasibilityReport check_feasible_integer(const ReplicatedGraph& rg,
                                         const std::vector<double>& x,
                                         CoverageMode mode = CoverageMode::Strict);

double cut_lhs(const Cut& cut, const std::vector<double>& x);

}  // namespace rpptu
