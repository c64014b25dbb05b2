#include "rpptu/temporal.hpp"

#include <algorithm>
#include <cassert>
#include <queue>
#include <sstream>
#include <tuple>

namespace rpptu {

PathResult fastest_path(const Instance& inst, int from, int to, Minutes start) {
  const BaseGraph& g = inst.graph;
  PathResult res;
  if (from == to) {
    res.reachable = true;
    res.arrive = start;
    return res;
  }
  std::vector<std::vector<int>> out(g.vertex_ids.size());
  for (int a : g.deadhead_arcs) out[g.arcs[a].tail].push_back(a);

  const Minutes unset = -1;
  std::vector<Minutes> best(g.vertex_ids.size(), unset);
  std::vector<int> via_arc(g.vertex_ids.size(), -1);
  std::vector<int> prev(g.vertex_ids.size(), -1);
  // (arrival, fuel, vertex, from, via); fuel and vertex only break arrival
  // ties deterministically, earliest arrival is the optimized quantity
  using Label = std::tuple<Minutes, Minutes, int, int, int>;
  std::priority_queue<Label, std::vector<Label>, std::greater<Label>> pq;
  pq.push({start, 0, from, -1, -1});
  std::vector<char> settled(g.vertex_ids.size(), 0);
  while (!pq.empty()) {
    auto [t, fuel, v, from_v, via] = pq.top();
    pq.pop();
    if (settled[v]) continue;
    settled[v] = 1;
    prev[v] = from_v;
    via_arc[v] = via;
    if (v == to) {
      res.reachable = true;
      res.arrive = t;
      res.fuel = fuel;
      for (int u = to; u != from; u = prev[u]) res.arcs.push_back(via_arc[u]);
      std::reverse(res.arcs.begin(), res.arcs.end());
      res.delay = (t - start) - fuel;
      return res;
    }
    for (int a : out[v]) {
      const Arc& arc = g.arcs[a];
      if (settled[arc.head]) continue;
      Minutes dep = earliest_departure(inst.calendar, a, t, arc.weight);
      Minutes arr = dep + arc.weight;
      if (best[arc.head] == unset || arr < best[arc.head]) {
        best[arc.head] = arr;
        pq.push({arr, fuel + arc.weight, arc.head, v, a});
      }
    }
  }
  return res;
}

namespace {

Trajectory malformed(std::string why) {
  Trajectory t;
  t.status = TemporalStatus::MalformedX;
  t.note = std::move(why);
  return t;
}

}  // namespace

Trajectory solve_temporal(const ReplicatedGraph& rg, const std::vector<double>& x) {
  const Instance& inst = *rg.inst;
  Trajectory result;
  for (int k = 0; k < inst.num_agents; ++k) {
    AgentTrajectory traj;
    traj.agent = k;
    int v = rg.source_id(k);
    const int sink = rg.sink_id(k);
    std::size_t guard = rg.arcs.size() + 1;
    std::vector<int> walk;
    while (v != sink) {
      int taken = -1;
      for (int a : rg.out_arcs[v]) {
        if (x[a] <= 0.5) continue;
        if (taken >= 0)
          return malformed("two occupied arcs leave " + rg.vertex_name(v));
        taken = a;
      }
      if (taken < 0) return malformed("no occupied arc leaves " + rg.vertex_name(v));
      walk.push_back(taken);
      v = rg.arcs[taken].head;
      if (walk.size() > guard) return malformed("walk never reaches the sink");
    }

    Minutes t = 0;  // sources are exempt from timing, every agent starts at 0
    for (int a : walk) {
      const RepArc& ra = rg.arcs[a];
      TrajectoryStep step;
      step.rep_arc = a;
      if (ra.base_arc < 0) {
        step.depart = step.arrive = t;
      } else {
        step.depart = earliest_departure(inst.calendar, ra.base_arc, t, ra.weight);
        step.arrive = step.depart + ra.weight;
        step.wait_before = step.depart - t;
        traj.fuel += ra.weight;
        t = step.arrive;
      }
      traj.steps.push_back(step);
    }
    traj.finish = t;
    traj.waiting = traj.finish - traj.fuel;
    assert(traj.waiting >= 0);
    result.total_fuel += traj.fuel;
    result.gamma = std::max(result.gamma, traj.finish);
    result.agents.push_back(std::move(traj));
  }
  return result;
}

nlohmann::json trajectory_to_json(const ReplicatedGraph& rg, const Trajectory& t) {
  nlohmann::json out;
  out["status"] = t.status == TemporalStatus::Feasible ? "feasible"
                  : t.status == TemporalStatus::Infeasible ? "infeasible"
                                                           : "malformed";
  out["gamma"] = t.gamma;
  out["fuel"] = t.total_fuel;
  nlohmann::json agents = nlohmann::json::array();
  for (const AgentTrajectory& a : t.agents) {
    nlohmann::json ja;
    ja["agent"] = a.agent;
    ja["finish"] = a.finish;
    ja["fuel"] = a.fuel;
    ja["waiting"] = a.waiting;
    nlohmann::json steps = nlohmann::json::array();
    for (const TrajectoryStep& s : a.steps) {
      const RepArc& ra = rg.arcs[s.rep_arc];
      if (ra.base_arc < 0) continue;  // virtual hops carry no schedule
      nlohmann::json js;
      js["arc"] = rg.inst->graph.arcs[ra.base_arc].id;
      js["service"] = ra.cat == ArcCategory::InterLayer;
      js["depart"] = s.depart;
      js["arrive"] = s.arrive;
      js["wait_before"] = s.wait_before;
      steps.push_back(std::move(js));
    }
    ja["steps"] = std::move(steps);
    agents.push_back(std::move(ja));
  }
  out["agents"] = std::move(agents);
  return out;
}

std::string trajectory_gantt(const ReplicatedGraph& rg, const Trajectory& t) {
  const int width = 72;
  Minutes span = std::max<Minutes>(t.gamma, 1);
  std::ostringstream os;
  os << "time 0.." << t.gamma << "  (# service, = deadhead, . wait)\n";
  for (const AgentTrajectory& a : t.agents) {
    std::string bar(width, ' ');
    auto col = [&](Minutes m) {
      return static_cast<int>(std::min<Minutes>(width - 1, m * width / span));
    };
    for (const TrajectoryStep& s : a.steps) {
      const RepArc& ra = rg.arcs[s.rep_arc];
      if (ra.base_arc < 0) continue;
      for (int c = col(s.depart - s.wait_before); c < col(s.depart); ++c) bar[c] = '.';
      char glyph = ra.cat == ArcCategory::InterLayer ? '#' : '=';
      for (int c = col(s.depart); c <= col(s.arrive - 1); ++c) bar[c] = glyph;
    }
    os << "agent " << a.agent << " |" << bar << "| finish " << a.finish
       << " wait " << a.waiting << "\n";
  }
  return os.str();
}

}  // namespace rpptu
