#ifndef RPPTU_REPLICATED_HPP
#define RPPTU_REPLICATED_HPP

#include <string>
#include <vector>

#include "rpptu/instance.hpp"

namespace rpptu {

enum class ArcCategory {
  IntraLayer,   // deadhead copy inside layer (agent, l)
  InterLayer,   // service copy crossing layer l -> l+1
  SourceSink,   // agent stays idle
  SinkSource,   // cascade to the next agent's source
  SourceDepot,  // enter layer 1 at the depot
  DepotSink,    // leave from the depot copy of layer l >= 2
};

struct RepArc {
  ArcCategory cat;
  int base_arc = -1;  // -1 for virtual arcs
  int agent = -1;
  int layer = 0;  // 0 for pure virtual endpoints
  int tail = -1;
  int head = -1;
  Minutes weight = 0;  // 0 on virtual arcs
};

struct RepVertex {
  int base_vertex = -1;  // -1 for sources and sinks
  int agent = -1;
  int layer = 0;  // 0 for sources and sinks
  bool source = false;
  bool sink = false;
};

/// Layered replication of the base graph: one block of |A_*|+1 layers per
/// agent plus a source/sink pair per agent, all chained into one cycle by the
/// sink-source cascade.
struct ReplicatedGraph {
  const Instance* inst = nullptr;
  int num_layers = 0;  // |A_*| + 1
  int agents = 0;

  std::vector<RepVertex> vertices;
  std::vector<RepArc> arcs;
  std::vector<std::vector<int>> out_arcs, in_arcs;
  // copies_of[s] lists the replicated ids of service arc s (s indexes
  // graph.service_arcs), ordered by (agent, layer)
  std::vector<std::vector<int>> copies_of;

  int num_vertices() const { return static_cast<int>(vertices.size()); }
  int num_arcs() const { return static_cast<int>(arcs.size()); }

  int vertex_id(int base_vertex, int agent, int layer) const;
  int source_id(int agent) const;
  int sink_id(int agent) const;
  bool is_depot_copy(int v) const;

  std::string vertex_name(int v) const;
  std::string arc_name(int a) const;
};

ReplicatedGraph build_replicated(const Instance& inst);

struct Boundary {
  std::vector<int> delta_plus;   // arcs leaving S
  std::vector<int> delta_minus;  // arcs entering S
  std::vector<int> inner;        // arcs with both endpoints in S
};

/// Arc partition induced by a vertex set S (replicated vertex ids).
Boundary boundary(const ReplicatedGraph& rg, const std::vector<int>& S);

/// Weakly connected components of the subgraph spanned by `arc_set`;
/// each component is returned as a sorted vertex list.
std::vector<std::vector<int>> components_within(const ReplicatedGraph& rg,
                                                const std::vector<int>& arc_set);

/// Strong connectivity of the replicated graph restricted to a vertex subset.
bool strongly_connected_within(const ReplicatedGraph& rg,
                               const std::vector<char>& keep);

std::string to_dot(const ReplicatedGraph& rg);

}  // namespace rpptu

#endif
