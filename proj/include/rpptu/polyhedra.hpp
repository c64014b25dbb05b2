#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "rpptu/instance.hpp"
#include "rpptu/replicated.hpp"
#include "rpptu/spatial.hpp"

namespace rpptu {

struct LimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EnumerationOptions {
  int intra_cap = 2;
  int inter_cap = 1;  // inter-layer and virtual arcs
  int arc_limit = 50;
  std::size_t max_points = 200000;
  bool with_circulations = true;
};

// Integer points of the relaxed (at-least-once, multiplicity-capped) spatial
// polyhedron plus its recession directions. Points are stored row-major and
// sorted; rays are the intra-layer cycle vectors.
struct PointCloud {
  int num_cols = 0;
  std::vector<std::uint8_t> flat;
  std::vector<std::vector<int>> rays;
  bool truncated = false;

  std::size_t num_points() const {
    return num_cols == 0 ? 0 : flat.size() / static_cast<std::size_t>(num_cols);
  }
  const std::uint8_t* point(std::size_t i) const {
    return flat.data() + i * static_cast<std::size_t>(num_cols);
  }
};

PointCloud enumerate_cgf_points(const ReplicatedGraph& rg,
                                const EnumerationOptions& opts = {});

// Directed cycle basis of the deadhead subgraph via ear decomposition:
// exactly |A_D| - |V| + 1 cycles, each a 0/1 usage vector over base arcs.
std::vector<std::vector<int>> deadhead_cycle_basis(const BaseGraph& g);

// Rank of {p - p0} over the points joined with the rays; stops early once
// `early_stop` is reached (sound: rank is monotone).
int affine_dimension(const PointCloud& cloud, int early_stop = -1);
int affine_rank_of(const std::vector<std::vector<int>>& points,
                   const std::vector<std::vector<int>>& rays, int num_cols,
                   int early_stop = -1);

// The constructive affinely independent family behind the dimension claim:
// base tour, multi-service variants per later agent, the second base tour,
// leftover first-agent copies, early depot exits, one solution per cycle.
std::vector<std::vector<int>> construct_lemma1_family(const ReplicatedGraph& rg);

// Exact rank of the flow-balance plus source-degree equality rows.
int equality_rank(const ReplicatedGraph& rg);

struct FacetReport {
  bool valid = false;
  int tight_points = 0;
  int dim = -1;
  int tight_dim = -1;
  bool facet = false;
};

FacetReport verify_facet(const ReplicatedGraph& rg, const Cut& cut,
                         const PointCloud& cloud);

struct OracleLimits {
  int max_vertices = 6;
  int max_services = 3;
  int max_agents = 2;
};

struct OracleResult {
  Minutes cost = 0;
  Minutes fuel = 0;
  Minutes gamma = 0;
  std::vector<std::vector<int>> walks;  // per agent, base arc ids in order
  std::vector<Minutes> finishes;
};

// Exhaustive ground truth: every assignment of service arcs to agents, every
// service order, every simple connecting path, greedy earliest departures.
// Non-simple connecting walks are dominated because waiting in place is free.
OracleResult oracle_optimum(const Instance& inst, const OracleLimits& limits = {});

// Same evaluation with the per-agent service order fixed by the caller.
OracleResult oracle_restricted(const Instance& inst,
                               const std::vector<std::vector<int>>& orders);

}  // namespace rpptu
