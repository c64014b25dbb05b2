#ifndef RPPTU_INSTANCE_HPP
#define RPPTU_INSTANCE_HPP

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace rpptu {

using Minutes = std::int64_t;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One directed arc of the base network. Weights are integer minutes.
struct Arc {
  std::string id;
  int tail = -1;
  int head = -1;
  Minutes weight = 0;
  bool service = false;
};

/// Directed multigraph with a depot. Parallel arcs are allowed and are
/// distinguished by id, never by endpoint pair.
struct BaseGraph {
  std::vector<std::string> vertex_ids;  // sorted; position = dense vertex index
  std::vector<Arc> arcs;                // sorted by id; position = dense arc index
  int depot = -1;

  std::unordered_map<std::string, int> vertex_index;
  std::unordered_map<std::string, int> arc_index;
  std::vector<int> service_arcs;   // indices into arcs, ascending
  std::vector<int> deadhead_arcs;  // indices into arcs, ascending

  int num_vertices() const { return static_cast<int>(vertex_ids.size()); }
  int num_arcs() const { return static_cast<int>(arcs.size()); }
};

struct TimeWindow {
  Minutes lo = 0;
  Minutes hi = 0;
};

/// Per-arc unavailability windows, canonical form: sorted, disjoint, touching
/// intervals merged, all ending at or before the horizon.
struct UnavailabilityCalendar {
  std::vector<std::vector<TimeWindow>> windows;  // indexed by base arc
  Minutes horizon = 0;

  const std::vector<TimeWindow>& of(int arc) const;
  std::size_t total_windows() const;
};

struct Instance {
  BaseGraph graph;
  UnavailabilityCalendar calendar;
  int num_agents = 1;
  std::string name;
};

/// Raw, pre-validation description used by loaders and generators.
struct InstanceSpec {
  std::string name;
  int num_agents = 1;
  Minutes horizon = 0;
  std::string depot;
  std::vector<std::string> vertices;
  struct ArcSpec {
    std::string id, tail, head;
    Minutes weight;
    bool service;
  };
  std::vector<ArcSpec> arcs;
  std::map<std::string, std::vector<TimeWindow>> windows;  // by arc id
};

/// Validates and canonicalizes a raw description. Throws ValidationError
/// naming the offending element.
Instance build_instance(const InstanceSpec& spec);

Instance load_instance(const std::string& path);
void save_instance(const Instance& inst, const std::string& path);
std::string instance_to_json(const Instance& inst);
Instance instance_from_json(const std::string& text);

/// Departure `depart` on `arc` (running time `weight`) is blocked iff some
/// window (lo,hi) has lo - weight < depart < hi. Both adjusted endpoints are
/// feasible. Unknown arcs are never blocked.
bool is_window_blocked(const UnavailabilityCalendar& cal, int arc, Minutes depart,
                       Minutes weight);

/// Earliest t' >= t such that departing `arc` at t' is not blocked.
Minutes earliest_departure(const UnavailabilityCalendar& cal, int arc, Minutes t,
                           Minutes weight);

/// Strong connectivity of the subgraph spanned by `arcs` (indices into
/// g.arcs) over all vertices of g.
bool strongly_connected(const BaseGraph& g, const std::vector<int>& arcs);

}  // namespace rpptu

#endif
