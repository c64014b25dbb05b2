#pragma once

#include <cstddef>
#include <vector>

#include "rpptu/polyhedra.hpp"
#include "rpptu/replicated.hpp"
#include "rpptu/spatial.hpp"

namespace rpptu {

// Finds violated connectivity cuts at a fractional point x. For every agent
// block and every service arc with at least two fractional copies, a shortest
// path through the fractional support links two copies; its vertices (depot
// copies excluded) become S. A candidate passes only when the complement
// stays strongly connected, no other service arc touches S, and every weak
// component of the arcs at S carries a copy of the separating service arc.
// Results are violated by x and deduplicated against `pool` and each other.
std::vector<Cut> find_cuts(const ReplicatedGraph& rg,
                           const std::vector<double>& x,
                           const std::vector<Cut>& pool);

struct CutCheck {
  bool valid = true;
  bool witness_found = false;
  std::vector<std::uint8_t> witness;  // violating integer point, if any
};

// Brute-force validity over the enumerated integer points. Circulations can
// only raise the left side (coefficients are nonnegative), so checking walk
// skeletons alone is exact.
CutCheck check_cut_validity(const ReplicatedGraph& rg, const Cut& cut,
                            EnumerationOptions opts = {});

}  // namespace rpptu
