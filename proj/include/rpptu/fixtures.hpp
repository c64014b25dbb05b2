#pragma once

#include <vector>

#include "rpptu/instance.hpp"

namespace rpptu {

// Bundled suburban-rail inspection scenario (KTVK): 36 stations around four
// terminals (Kurla v01, junction v02, Thane v03, Vashi v04) joined by one-way
// running lines. Thane-Vashi splits into a harbour viaduct and a short
// cutoff, Vashi-Kurla into an east and a west corridor, so each circuit
// commits to one branch per leg. Nine tracks are due for inspection (each a
// service arc in parallel with its deadhead twin), five local trains sweep
// the lines every 74 minutes, and engineering possessions close the
// inspection sites for part of each period, all over a 222 minute horizon.
// The topology is a reconstruction: the published scenario does not include
// the full arc list or timetable, so weights, train offsets and possessions
// here are chosen so that the reported two-agent tour structure is optimal.
Instance make_ktvk();

// The reported tour structure for make_ktvk(), as per-agent service orders
// (indices into the ascending service-arc list): agent 0 works the express
// track onto the harbour viaduct, its three inspection sites, and the west
// corridor track on the way home; agent 1 covers the junction-Thane stretch
// and the three east corridor tracks.
std::vector<std::vector<int>> ktvk_reference_orders(const Instance& inst);

// Three vertices, four deadhead arcs (a cycle plus one chord), two service
// arcs, two agents. Small enough for full vertex enumeration; the replicated
// graph has 22 vertices and 42 arcs.
Instance make_small3();

}  // namespace rpptu
