#include "rpptu/bnc.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>
#include <numeric>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "rpptu/lp.hpp"
#include "rpptu/polyhedra.hpp"
#include "rpptu/replicated.hpp"
#include "rpptu/separation.hpp"

namespace rpptu {

namespace {

struct Node {
  int id = 0;
  double lb = -kInf;
  NodeFixings fix;
  std::vector<std::vector<int>> orders;  // per agent, assigned services in order
  std::vector<char> agent_available;
  std::vector<char> assigned;  // per service arc
  int depth = 0;
};

bool frac(double v) { return v > kEpsInt && v < 1.0 - kEpsInt; }

double fractionality(double v) {
  double f = v - std::floor(v);
  return std::min(f, 1.0 - f);
}

Minutes lift(double lb) {
  return static_cast<Minutes>(std::ceil(lb - kEpsObj));
}

void sorted_insert(std::vector<int>& v, int a) {
  auto it = std::lower_bound(v.begin(), v.end(), a);
  if (it == v.end() || *it != a) v.insert(it, a);
}

int copy_id(const ReplicatedGraph& rg, int q, int k, int l) {
  const int steps = rg.num_layers - 1;
  return rg.copies_of[q][static_cast<std::size_t>(k) * steps + (l - 1)];
}

// Replicated usage vector of one concrete set of agent walks (base arc lists,
// services embedded at their ordered positions).
std::vector<double> lift_walks(const ReplicatedGraph& rg,
                               const std::vector<std::vector<int>>& orders,
                               const std::vector<std::vector<int>>& walks) {
  const BaseGraph& g = rg.inst->graph;
  std::vector<double> x(rg.arcs.size(), 0.0);
  for (int k = 0; k < rg.inst->num_agents; ++k) {
    int v = rg.source_id(k);
    auto take = [&](ArcCategory cat, int base) {
      for (int a : rg.out_arcs[v])
        if (rg.arcs[a].cat == cat && rg.arcs[a].base_arc == base) {
          x[a] = 1.0;
          v = rg.arcs[a].head;
          return;
        }
      throw std::logic_error("agent walk does not fit the replicated graph");
    };
    if (orders[k].empty()) {
      take(ArcCategory::SourceSink, -1);
      continue;
    }
    take(ArcCategory::SourceDepot, -1);
    std::size_t next = 0;
    for (int b : walks[k]) {
      if (next < orders[k].size() && b == g.service_arcs[orders[k][next]]) {
        take(ArcCategory::InterLayer, b);
        ++next;
      } else {
        take(ArcCategory::IntraLayer, b);
      }
    }
    take(ArcCategory::DepotSink, -1);
  }
  for (std::size_t a = 0; a < rg.arcs.size(); ++a)
    if (rg.arcs[a].cat == ArcCategory::SinkSource) x[a] = 1.0;
  return x;
}

std::vector<double> x_of_trajectory(const ReplicatedGraph& rg,
                                    const Trajectory& t) {
  std::vector<double> x(rg.arcs.size(), 0.0);
  for (const AgentTrajectory& a : t.agents)
    for (const TrajectoryStep& s : a.steps) x[s.rep_arc] = 1.0;
  for (std::size_t a = 0; a < rg.arcs.size(); ++a)
    if (rg.arcs[a].cat == ArcCategory::SinkSource) x[a] = 1.0;
  return x;
}

struct Target {
  int agent = -1;
  int layer = 0;
};

// Branch target: (a) an available agent whose next layer holds a fractional
// copy of an available service arc; (c) otherwise an available agent whose
// block is fractional anywhere; (b) otherwise the smallest next layer.
Target pick_target(const ReplicatedGraph& rg, const Node& node,
                   const std::vector<double>& x, bool x_fractional) {
  const int K = rg.inst->num_agents;
  const int steps = rg.num_layers - 1;
  const int nQ = static_cast<int>(rg.copies_of.size());
  auto next_layer = [&](int k) {
    return static_cast<int>(node.orders[k].size()) + 1;
  };

  for (int k = 0; k < K; ++k) {
    if (!node.agent_available[k]) continue;
    int l = next_layer(k);
    if (l > steps) continue;
    for (int q = 0; q < nQ; ++q)
      if (!node.assigned[q] && frac(x[copy_id(rg, q, k, l)])) return {k, l};
  }
  if (x_fractional)
    for (int k = 0; k < K; ++k) {
      if (!node.agent_available[k]) continue;
      int l = next_layer(k);
      if (l > steps) continue;
      for (std::size_t a = 0; a < rg.arcs.size(); ++a) {
        const RepArc& ra = rg.arcs[a];
        if (ra.agent != k || !frac(x[a])) continue;
        if (ra.cat == ArcCategory::IntraLayer ||
            ra.cat == ArcCategory::InterLayer)
          return {k, l};
      }
    }
  Target best;
  for (int k = 0; k < K; ++k) {
    if (!node.agent_available[k]) continue;
    int l = next_layer(k);
    if (l > steps) continue;
    if (best.agent < 0 || l < best.layer) best = {k, l};
  }
  return best;
}

}  // namespace

Solution solve(const Instance& inst, const SolveOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&t0]() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  };

  ReplicatedGraph rg = build_replicated(inst);
  const int K = inst.num_agents;
  const int nQ = static_cast<int>(rg.copies_of.size());
  const int na = rg.num_arcs();
  std::vector<int> arc_cols(na);
  std::iota(arc_cols.begin(), arc_cols.end(), 0);

  std::vector<Cut> pool;
  std::deque<Node> nodes;
  std::set<std::pair<double, int>> queue;  // (lb, id), best-first

  Node root;
  root.orders.assign(K, {});
  root.agent_available.assign(K, 1);
  root.assigned.assign(nQ, 0);
  nodes.push_back(root);
  queue.insert({root.lb, root.id});

  Solution best;
  SolveStats stats;
  Minutes ub = -1;
  double global_lb = -kInf;
  bool budget_hit = false;

  auto update_incumbent = [&](Minutes value, Trajectory traj,
                              std::vector<double> x) {
    if (ub >= 0 && value >= ub) return;
    ub = value;
    best.objective = value;
    best.fuel = traj.total_fuel;
    best.gamma = traj.gamma;
    best.trajectory = std::move(traj);
    best.x = std::move(x);
  };

  while (!queue.empty()) {
    auto [lb, id] = *queue.begin();
    global_lb = std::max(global_lb, lb);
    if (ub >= 0 && lb > -kInf && lift(lb) >= ub) {
      stats.optimal = true;
      break;
    }
    if (stats.nodes_branched >= opts.node_budget ||
        elapsed() > opts.time_budget_seconds) {
      budget_hit = true;
      break;
    }
    queue.erase(queue.begin());
    Node node = std::move(nodes[id]);

    SpatialModel model = assemble(rg, node.fix, pool, opts.estimate);
    LpResult lp = solve_lp(model.lp);
    ++stats.lp_solves;
    ++stats.nodes_explored;
    if (lp.status == LpStatus::Infeasible) continue;
    if (lp.status == LpStatus::Unbounded)
      throw std::logic_error("spatial relaxation unbounded");
    node.lb = std::max(node.lb, lp.objective);
    if (ub >= 0 && lift(node.lb) >= ub) continue;

    IntegralityReport rep = integrality(lp.x, arc_cols);
    if (rep.integral) {
      Trajectory traj = solve_temporal(rg, lp.x);
      if (traj.status == TemporalStatus::Feasible) {
        Minutes value = traj.total_fuel + traj.gamma;
        std::vector<double> xi = x_of_trajectory(rg, traj);
        update_incumbent(value, std::move(traj), std::move(xi));
        if (ub >= 0 && lift(node.lb) >= ub) continue;
      }
    } else if (opts.use_cuts) {
      std::vector<Cut> cuts = find_cuts(rg, lp.x, pool);
      if (!cuts.empty()) {
        for (Cut& c : cuts) {
          if (opts.on_cut) opts.on_cut(c);
          pool.push_back(std::move(c));
        }
        stats.cuts_added += static_cast<int>(cuts.size());
        ++stats.cut_rounds;
        Node again = std::move(node);
        again.id = static_cast<int>(nodes.size());
        queue.insert({again.lb, again.id});
        nodes.push_back(std::move(again));
        continue;
      }
    }

    bool all_assigned = std::all_of(node.assigned.begin(), node.assigned.end(),
                                    [](char c) { return c != 0; });
    if (all_assigned) {
      // every service placed: the spatial completion is fixed up to routing,
      // evaluate the assignment profile exactly and fathom
      OracleResult exact = oracle_restricted(inst, node.orders);
      if (ub < 0 || exact.cost < ub) {
        std::vector<double> xl = lift_walks(rg, node.orders, exact.walks);
        Trajectory traj = solve_temporal(rg, xl);
        update_incumbent(exact.cost, std::move(traj), std::move(xl));
      }
      continue;
    }

    Target tgt = pick_target(rg, node, lp.x, !rep.integral);
    if (tgt.agent < 0) continue;

    std::vector<int> avail;
    for (int q = 0; q < nQ; ++q)
      if (!node.assigned[q]) avail.push_back(q);
    std::stable_sort(avail.begin(), avail.end(), [&](int a, int b) {
      return fractionality(lp.x[copy_id(rg, a, tgt.agent, tgt.layer)]) >
             fractionality(lp.x[copy_id(rg, b, tgt.agent, tgt.layer)]);
    });

    for (int q : avail) {
      Node child;
      child.id = static_cast<int>(nodes.size());
      child.lb = node.lb;
      child.fix = node.fix;
      child.orders = node.orders;
      child.agent_available = node.agent_available;
      child.assigned = node.assigned;
      child.depth = node.depth + 1;
      sorted_insert(child.fix.fixed_one, copy_id(rg, q, tgt.agent, tgt.layer));
      child.orders[tgt.agent].push_back(q);
      child.assigned[q] = 1;
      queue.insert({child.lb, child.id});
      nodes.push_back(std::move(child));
      ++stats.nodes_branched;
    }
    int open_agents = 0;
    for (int k = 0; k < K; ++k) open_agents += node.agent_available[k] != 0;
    if (open_agents > 1) {
      Node child;
      child.id = static_cast<int>(nodes.size());
      child.lb = node.lb;
      child.fix = node.fix;
      child.orders = node.orders;
      child.agent_available = node.agent_available;
      child.assigned = node.assigned;
      child.depth = node.depth + 1;
      child.agent_available[tgt.agent] = 0;
      const int steps = rg.num_layers - 1;
      for (int q = 0; q < nQ; ++q) {
        if (node.assigned[q]) continue;
        for (int l = 1; l <= steps; ++l)
          sorted_insert(child.fix.fixed_zero, copy_id(rg, q, tgt.agent, l));
      }
      if (node.orders[tgt.agent].empty()) {
        for (int a : rg.out_arcs[rg.source_id(tgt.agent)]) {
          if (rg.arcs[a].cat == ArcCategory::SourceSink)
            sorted_insert(child.fix.fixed_one, a);
          if (rg.arcs[a].cat == ArcCategory::SourceDepot)
            sorted_insert(child.fix.fixed_zero, a);
        }
      }
      queue.insert({child.lb, child.id});
      nodes.push_back(std::move(child));
      ++stats.nodes_branched;
    }
  }

  stats.wall_seconds = elapsed();
  stats.upper_bound = ub;
  if (queue.empty() && !budget_hit) stats.optimal = ub >= 0;
  if (stats.optimal) {
    stats.lower_bound = static_cast<double>(ub);
    best.status = "optimal";
  } else if (budget_hit) {
    // open nodes remain: report the bound, never claim infeasibility
    stats.lower_bound = queue.empty() ? static_cast<double>(ub) : global_lb;
    best.status = "gap";
  } else {
    stats.lower_bound = global_lb;
    best.status = "infeasible";
  }
  best.stats = stats;
  return best;
}

std::string solution_to_json(const Instance& inst, const Solution& sol,
                             bool include_wall_time) {
  ReplicatedGraph rg = build_replicated(inst);
  nlohmann::json j;
  j["status"] = sol.status;
  j["objective"] = sol.objective;
  j["fuel"] = sol.fuel;
  j["gamma"] = sol.gamma;
  j["schedule"] = sol.objective >= 0 ? trajectory_to_json(rg, sol.trajectory)
                                     : nlohmann::json();
  nlohmann::json s;
  s["nodes_explored"] = sol.stats.nodes_explored;
  s["nodes_branched"] = sol.stats.nodes_branched;
  s["cut_rounds"] = sol.stats.cut_rounds;
  s["cuts_added"] = sol.stats.cuts_added;
  s["lp_solves"] = sol.stats.lp_solves;
  if (std::isfinite(sol.stats.lower_bound))
    s["lower_bound"] = sol.stats.lower_bound;
  else
    s["lower_bound"] = nullptr;
  s["upper_bound"] = sol.stats.upper_bound;
  s["optimal"] = sol.stats.optimal;
  if (include_wall_time) s["wall_seconds"] = sol.stats.wall_seconds;
  j["stats"] = std::move(s);
  return j.dump(2);
}

}  // namespace rpptu
