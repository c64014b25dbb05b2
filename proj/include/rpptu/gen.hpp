#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rpptu/bnc.hpp"
#include "rpptu/instance.hpp"

namespace rpptu {

struct GenConfig {
  int num_vertices = 20;
  double arc_ratio = 1.2;  // arcs per vertex before connectivity repairs
  double beta = 0.3;       // service share of the generated arcs
  int num_agents = 2;
  std::uint64_t seed = 0;
  Minutes period = 74;  // train timetable repeat
  int num_trains = 2;
  int horizon_periods = 3;
};

// Seeded, reproducible instance: a random Hamiltonian cycle, extra arcs on
// distinct vertex pairs, a uniform service subset of round(beta * |A|) arcs
// with parallel deadheads added while the deadhead subgraph is disconnected,
// and periodic train windows on the cycle arcs only.
Instance generate(const GenConfig& cfg);

struct BatchCell {
  int num_vertices = 8;
  double arc_ratio = 1.6;
  double beta = 0.5;
};

struct BatchRow {
  BatchCell cell;
  std::uint64_t seed = 0;
  bool with_cuts = true;
  std::string status;      // optimal | gap | infeasible | error
  double objective = -1;   // -1 when no incumbent
  long long nodes = 0;     // branch-generated nodes
  double seconds = 0;
  long long cuts = 0;
};

struct BatchResult {
  std::vector<BatchRow> rows;
  // beta,V,A,variant,OPT,NODES,TIME_s,nCP  (one row per instance and variant)
  std::string csv() const;
};

// Solves count seeded instances per cell twice, with and without cutting
// planes, under the given per-solve options. Solver failures are recorded as
// error rows, never thrown.
BatchResult run_batch(const std::vector<BatchCell>& cells, int count,
                      std::uint64_t seed, int num_agents,
                      const SolveOptions& solver);

}  // namespace rpptu
