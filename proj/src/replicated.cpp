#include "rpptu/replicated.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <sstream>

namespace rpptu {

int ReplicatedGraph::vertex_id(int base_vertex, int agent, int layer) const {
  assert(layer >= 1 && layer <= num_layers);
  int nv = inst->graph.num_vertices();
  return (agent * num_layers + (layer - 1)) * nv + base_vertex;
}

int ReplicatedGraph::source_id(int agent) const {
  return inst->graph.num_vertices() * agents * num_layers + agent;
}

int ReplicatedGraph::sink_id(int agent) const {
  return inst->graph.num_vertices() * agents * num_layers + agents + agent;
}

bool ReplicatedGraph::is_depot_copy(int v) const {
  return vertices[v].base_vertex == inst->graph.depot;
}

std::string ReplicatedGraph::vertex_name(int v) const {
  const RepVertex& rv = vertices[v];
  std::ostringstream os;
  if (rv.source)
    os << "src_k" << rv.agent;
  else if (rv.sink)
    os << "snk_k" << rv.agent;
  else
    os << inst->graph.vertex_ids[rv.base_vertex] << "_k" << rv.agent << "_l" << rv.layer;
  return os.str();
}

std::string ReplicatedGraph::arc_name(int a) const {
  const RepArc& ra = arcs[a];
  std::ostringstream os;
  switch (ra.cat) {
    case ArcCategory::IntraLayer:
      os << inst->graph.arcs[ra.base_arc].id << "_k" << ra.agent << "_l" << ra.layer;
      break;
    case ArcCategory::InterLayer:
      os << inst->graph.arcs[ra.base_arc].id << "_k" << ra.agent << "_l" << ra.layer
         << "~" << ra.layer + 1;
      break;
    case ArcCategory::SourceSink:
      os << "st_k" << ra.agent;
      break;
    case ArcCategory::SinkSource:
      os << "ts_k" << ra.agent;
      break;
    case ArcCategory::SourceDepot:
      os << "sd_k" << ra.agent;
      break;
    case ArcCategory::DepotSink:
      os << "dt_k" << ra.agent << "_l" << ra.layer;
      break;
  }
  return os.str();
}

ReplicatedGraph build_replicated(const Instance& inst) {
  ReplicatedGraph rg;
  rg.inst = &inst;
  const BaseGraph& g = inst.graph;
  rg.agents = inst.num_agents;
  rg.num_layers = static_cast<int>(g.service_arcs.size()) + 1;

  const int nv = g.num_vertices();
  const int layer_verts = nv * rg.agents * rg.num_layers;
  rg.vertices.resize(layer_verts + 2 * rg.agents);
  for (int k = 0; k < rg.agents; ++k) {
    for (int l = 1; l <= rg.num_layers; ++l)
      for (int i = 0; i < nv; ++i) {
        RepVertex& v = rg.vertices[rg.vertex_id(i, k, l)];
        v.base_vertex = i;
        v.agent = k;
        v.layer = l;
      }
    rg.vertices[rg.source_id(k)].agent = k;
    rg.vertices[rg.source_id(k)].source = true;
    rg.vertices[rg.sink_id(k)].agent = k;
    rg.vertices[rg.sink_id(k)].sink = true;
  }

  auto add = [&rg](RepArc a) { rg.arcs.push_back(a); };

  for (int k = 0; k < rg.agents; ++k)
    for (int l = 1; l <= rg.num_layers; ++l)
      for (int b : g.deadhead_arcs)
        add({ArcCategory::IntraLayer, b, k, l, rg.vertex_id(g.arcs[b].tail, k, l),
             rg.vertex_id(g.arcs[b].head, k, l), g.arcs[b].weight});

  rg.copies_of.assign(g.service_arcs.size(), {});
  for (int k = 0; k < rg.agents; ++k)
    for (int l = 1; l < rg.num_layers; ++l)
      for (int s = 0; s < static_cast<int>(g.service_arcs.size()); ++s) {
        int b = g.service_arcs[s];
        rg.copies_of[s].push_back(static_cast<int>(rg.arcs.size()));
        add({ArcCategory::InterLayer, b, k, l, rg.vertex_id(g.arcs[b].tail, k, l),
             rg.vertex_id(g.arcs[b].head, k, l + 1), g.arcs[b].weight});
      }

  for (int k = 0; k < rg.agents; ++k)
    add({ArcCategory::SourceSink, -1, k, 0, rg.source_id(k), rg.sink_id(k), 0});
  for (int k = 0; k < rg.agents; ++k)
    add({ArcCategory::SinkSource, -1, k, 0, rg.sink_id(k),
         rg.source_id((k + 1) % rg.agents), 0});
  for (int k = 0; k < rg.agents; ++k)
    add({ArcCategory::SourceDepot, -1, k, 1, rg.source_id(k),
         rg.vertex_id(g.depot, k, 1), 0});
  for (int k = 0; k < rg.agents; ++k)
    for (int l = 2; l <= rg.num_layers; ++l)
      add({ArcCategory::DepotSink, -1, k, l, rg.vertex_id(g.depot, k, l),
           rg.sink_id(k), 0});

  rg.out_arcs.assign(rg.num_vertices(), {});
  rg.in_arcs.assign(rg.num_vertices(), {});
  for (int a = 0; a < rg.num_arcs(); ++a) {
    rg.out_arcs[rg.arcs[a].tail].push_back(a);
    rg.in_arcs[rg.arcs[a].head].push_back(a);
  }
  return rg;
}

Boundary boundary(const ReplicatedGraph& rg, const std::vector<int>& S) {
  std::vector<char> in_s(rg.num_vertices(), 0);
  for (int v : S) in_s[v] = 1;
  Boundary b;
  for (int a = 0; a < rg.num_arcs(); ++a) {
    bool t = in_s[rg.arcs[a].tail], h = in_s[rg.arcs[a].head];
    if (t && h)
      b.inner.push_back(a);
    else if (t)
      b.delta_plus.push_back(a);
    else if (h)
      b.delta_minus.push_back(a);
  }
  return b;
}

std::vector<std::vector<int>> components_within(const ReplicatedGraph& rg,
                                                const std::vector<int>& arc_set) {
  std::vector<int> parent(rg.num_vertices());
  for (int v = 0; v < rg.num_vertices(); ++v) parent[v] = v;
  auto find = [&parent](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  std::vector<char> used(rg.num_vertices(), 0);
  for (int a : arc_set) {
    int t = rg.arcs[a].tail, h = rg.arcs[a].head;
    used[t] = used[h] = 1;
    parent[find(t)] = find(h);
  }
  std::map<int, std::vector<int>> groups;
  for (int v = 0; v < rg.num_vertices(); ++v)
    if (used[v]) groups[find(v)].push_back(v);
  std::vector<std::vector<int>> out;
  out.reserve(groups.size());
  for (auto& [root, verts] : groups) out.push_back(std::move(verts));
  return out;
}

bool strongly_connected_within(const ReplicatedGraph& rg,
                               const std::vector<char>& keep) {
  int start = -1, total = 0;
  for (int v = 0; v < rg.num_vertices(); ++v)
    if (keep[v]) {
      if (start < 0) start = v;
      ++total;
    }
  if (start < 0) return true;
  auto sweep = [&](bool forward) {
    std::vector<char> seen(rg.num_vertices(), 0);
    std::vector<int> stack{start};
    seen[start] = 1;
    int count = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int a : forward ? rg.out_arcs[v] : rg.in_arcs[v]) {
        int w = forward ? rg.arcs[a].head : rg.arcs[a].tail;
        if (keep[w] && !seen[w]) {
          seen[w] = 1;
          ++count;
          stack.push_back(w);
        }
      }
    }
    return count == total;
  };
  return sweep(true) && sweep(false);
}

std::string to_dot(const ReplicatedGraph& rg) {
  std::ostringstream os;
  os << "digraph replicated {\n  rankdir=LR;\n";
  for (int v = 0; v < rg.num_vertices(); ++v)
    os << "  n" << v << " [label=\"" << rg.vertex_name(v) << "\"];\n";
  for (int a = 0; a < rg.num_arcs(); ++a) {
    const RepArc& ra = rg.arcs[a];
    os << "  n" << ra.tail << " -> n" << ra.head << " [label=\"" << rg.arc_name(a)
       << "\"";
    if (ra.cat == ArcCategory::InterLayer) os << ", style=bold";
    if (ra.base_arc < 0) os << ", style=dashed";
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace rpptu
