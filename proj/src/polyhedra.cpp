#include "rpptu/polyhedra.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <map>
#include <queue>

#include "rpptu/exactrank.hpp"

namespace rpptu {

namespace {

constexpr std::size_t kPathGuard = 500000;

// Fewest-arc path over deadhead arcs, deterministic: adjacency follows arc id
// order. Returns base arc ids; empty for from == to.
std::vector<int> bfs_deadhead_path(const BaseGraph& g, int from, int to) {
  if (from == to) return {};
  std::vector<std::vector<int>> out(g.vertex_ids.size());
  for (int a : g.deadhead_arcs) out[g.arcs[a].tail].push_back(a);
  std::vector<int> via(g.vertex_ids.size(), -1);
  std::queue<int> q;
  q.push(from);
  std::vector<char> seen(g.vertex_ids.size(), 0);
  seen[from] = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int a : out[v]) {
      int h = g.arcs[a].head;
      if (seen[h]) continue;
      seen[h] = 1;
      via[h] = a;
      if (h == to) {
        std::vector<int> path;
        for (int u = to; u != from; u = g.arcs[via[u]].tail) path.push_back(via[u]);
        std::reverse(path.begin(), path.end());
        return path;
      }
      q.push(h);
    }
  }
  throw ValidationError("deadhead graph is not strongly connected");
}

// Lookup tables from (agent, layer, base arc) into replicated arc ids.
struct RepIndex {
  int K = 0, L = 0, nD = 0;
  std::vector<int> deadhead_pos;  // base arc id -> index among deadheads
  std::vector<int> intra;         // (k*L + l-1)*nD + pos
  std::vector<int> st, ts, sd;    // per agent
  std::vector<int> dt;            // k*(L-1) + (l-2), layers 2..L

  explicit RepIndex(const ReplicatedGraph& rg) {
    const BaseGraph& g = rg.inst->graph;
    K = rg.inst->num_agents;
    L = rg.num_layers;
    nD = static_cast<int>(g.deadhead_arcs.size());
    deadhead_pos.assign(g.arcs.size(), -1);
    for (int i = 0; i < nD; ++i) deadhead_pos[g.deadhead_arcs[i]] = i;
    intra.assign(static_cast<std::size_t>(K) * L * nD, -1);
    st.assign(K, -1);
    ts.assign(K, -1);
    sd.assign(K, -1);
    dt.assign(static_cast<std::size_t>(K) * (L - 1), -1);
    for (int a = 0; a < static_cast<int>(rg.arcs.size()); ++a) {
      const RepArc& ra = rg.arcs[a];
      switch (ra.cat) {
        case ArcCategory::IntraLayer:
          intra[(static_cast<std::size_t>(ra.agent) * L + (ra.layer - 1)) * nD +
                deadhead_pos[ra.base_arc]] = a;
          break;
        case ArcCategory::SourceSink: st[ra.agent] = a; break;
        case ArcCategory::SinkSource: ts[ra.agent] = a; break;
        case ArcCategory::SourceDepot: sd[ra.agent] = a; break;
        case ArcCategory::DepotSink:
          dt[static_cast<std::size_t>(ra.agent) * (L - 1) + (ra.layer - 2)] = a;
          break;
        default: break;
      }
    }
  }

  int intra_id(int k, int l, int base) const {
    return intra[(static_cast<std::size_t>(k) * L + (l - 1)) * nD +
                 deadhead_pos[base]];
  }
  int dt_id(int k, int l) const {
    return dt[static_cast<std::size_t>(k) * (L - 1) + (l - 2)];
  }
};

int service_copy(const ReplicatedGraph& rg, int q, int k, int l) {
  const int steps = rg.num_layers - 1;
  return rg.copies_of[q][static_cast<std::size_t>(k) * steps + (l - 1)];
}

// All vertex-simple source-to-sink paths of one agent, DFS in arc id order.
void enum_agent_paths(const ReplicatedGraph& rg, int k,
                      std::vector<std::vector<int>>& out) {
  std::vector<char> visited(rg.vertices.size(), 0);
  std::vector<int> walk;
  const int sink = rg.sink_id(k);
  auto dfs = [&](auto&& self, int v) -> void {
    if (v == sink) {
      out.push_back(walk);
      if (out.size() > kPathGuard)
        throw LimitError("too many agent walks to enumerate");
      return;
    }
    visited[v] = 1;
    for (int a : rg.out_arcs[v]) {
      int h = rg.arcs[a].head;
      if (visited[h] && h != sink) continue;
      walk.push_back(a);
      self(self, h);
      walk.pop_back();
    }
    visited[v] = 0;
  };
  dfs(dfs, rg.source_id(k));
}

// All integer deadhead circulations with entries in [0, cap], zero vector
// first, remaining in generation (lexicographic) order.
std::vector<std::vector<std::uint8_t>> enumerate_circulations(const BaseGraph& g,
                                                              int cap) {
  const int nD = static_cast<int>(g.deadhead_arcs.size());
  std::vector<std::vector<std::uint8_t>> result;
  std::vector<std::uint8_t> usage(nD, 0);
  std::vector<int> balance(g.vertex_ids.size(), 0);
  auto rec = [&](auto&& self, int pos) -> void {
    if (pos == nD) {
      for (int b : balance)
        if (b != 0) return;
      result.push_back(usage);
      return;
    }
    const Arc& arc = g.arcs[g.deadhead_arcs[pos]];
    for (int v = 0; v <= cap; ++v) {
      usage[pos] = static_cast<std::uint8_t>(v);
      balance[arc.tail] += v;
      balance[arc.head] -= v;
      self(self, pos + 1);
      balance[arc.tail] -= v;
      balance[arc.head] += v;
    }
    usage[pos] = 0;
  };
  rec(rec, 0);
  std::stable_sort(result.begin(), result.end(),
                   [](const auto& a, const auto& b) {
                     int na = 0, nb = 0;
                     for (auto v : a) na += v != 0;
                     for (auto v : b) nb += v != 0;
                     if (na != nb) return na < nb;
                     return a < b;
                   });
  return result;
}

std::vector<std::int64_t> to_i64(const std::uint8_t* p, int n) {
  std::vector<std::int64_t> v(n);
  for (int i = 0; i < n; ++i) v[i] = p[i];
  return v;
}

std::vector<std::int64_t> to_i64(const std::vector<int>& p) {
  return std::vector<std::int64_t>(p.begin(), p.end());
}

Minutes oracle_depart(const std::vector<TimeWindow>& ws, Minutes t, Minutes w) {
  for (const TimeWindow& win : ws) {
    if (t >= win.hi) continue;
    if (t > win.lo - w) t = win.hi;
  }
  return t;
}

struct ParetoEntry {
  Minutes time = 0;
  Minutes fuel = 0;
  std::vector<int> walk;
};

void pareto_prune(std::vector<ParetoEntry>& states) {
  std::stable_sort(states.begin(), states.end(), [](const auto& a, const auto& b) {
    return a.time != b.time ? a.time < b.time : a.fuel < b.fuel;
  });
  std::vector<ParetoEntry> keep;
  Minutes best_fuel = -1;
  for (ParetoEntry& s : states) {
    if (best_fuel >= 0 && s.fuel >= best_fuel) continue;
    best_fuel = s.fuel;
    keep.push_back(std::move(s));
  }
  states = std::move(keep);
}

class SimplePathCache {
 public:
  explicit SimplePathCache(const BaseGraph& g) : g_(g) {
    out_.resize(g.vertex_ids.size());
    for (int a : g.deadhead_arcs) out_[g.arcs[a].tail].push_back(a);
  }

  const std::vector<std::vector<int>>& paths(int from, int to) {
    auto key = std::make_pair(from, to);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    std::vector<std::vector<int>> result;
    if (from == to) {
      result.push_back({});
    } else {
      std::vector<char> visited(g_.vertex_ids.size(), 0);
      std::vector<int> walk;
      auto dfs = [&](auto&& self, int v) -> void {
        if (v == to) {
          result.push_back(walk);
          if (result.size() > kPathGuard)
            throw LimitError("too many simple paths to enumerate");
          return;
        }
        visited[v] = 1;
        for (int a : out_[v]) {
          int h = g_.arcs[a].head;
          if (visited[h]) continue;
          walk.push_back(a);
          self(self, h);
          walk.pop_back();
        }
        visited[v] = 0;
      };
      dfs(dfs, from);
    }
    return cache_.emplace(key, std::move(result)).first->second;
  }

 private:
  const BaseGraph& g_;
  std::vector<std::vector<int>> out_;
  std::map<std::pair<int, int>, std::vector<std::vector<int>>> cache_;
};

// Every Pareto-optimal (finish, fuel) completion of the given ordered service
// list for one agent, over all simple connecting paths.
std::vector<ParetoEntry> evaluate_order(const Instance& inst,
                                        const std::vector<int>& order,
                                        SimplePathCache& cache) {
  const BaseGraph& g = inst.graph;
  std::vector<ParetoEntry> states{{0, 0, {}}};
  int pos = g.depot;
  auto traverse_gap = [&](int target) {
    std::vector<ParetoEntry> next;
    for (const ParetoEntry& s : states) {
      for (const std::vector<int>& path : cache.paths(pos, target)) {
        ParetoEntry e = s;
        for (int a : path) {
          const Arc& arc = g.arcs[a];
          Minutes dep = oracle_depart(inst.calendar.of(a), e.time, arc.weight);
          e.time = dep + arc.weight;
          e.fuel += arc.weight;
          e.walk.push_back(a);
        }
        next.push_back(std::move(e));
      }
    }
    states = std::move(next);
    pareto_prune(states);
    pos = target;
  };
  for (int q : order) {
    int base = g.service_arcs[q];
    const Arc& arc = g.arcs[base];
    traverse_gap(arc.tail);
    for (ParetoEntry& s : states) {
      Minutes dep = oracle_depart(inst.calendar.of(base), s.time, arc.weight);
      s.time = dep + arc.weight;
      s.fuel += arc.weight;
      s.walk.push_back(base);
    }
    pos = arc.head;
    pareto_prune(states);
  }
  traverse_gap(g.depot);
  return states;
}

OracleResult combine_agents(const std::vector<std::vector<ParetoEntry>>& per_agent) {
  OracleResult best;
  best.cost = -1;
  std::vector<std::size_t> choice(per_agent.size(), 0);
  for (;;) {
    Minutes fuel = 0, gamma = 0;
    for (std::size_t k = 0; k < per_agent.size(); ++k) {
      const ParetoEntry& e = per_agent[k][choice[k]];
      fuel += e.fuel;
      gamma = std::max(gamma, e.time);
    }
    Minutes cost = fuel + gamma;
    if (best.cost < 0 || cost < best.cost) {
      best.cost = cost;
      best.fuel = fuel;
      best.gamma = gamma;
      best.walks.clear();
      best.finishes.clear();
      for (std::size_t k = 0; k < per_agent.size(); ++k) {
        best.walks.push_back(per_agent[k][choice[k]].walk);
        best.finishes.push_back(per_agent[k][choice[k]].time);
      }
    }
    std::size_t k = 0;
    while (k < choice.size() && ++choice[k] == per_agent[k].size()) {
      choice[k] = 0;
      ++k;
    }
    if (k == choice.size()) break;
  }
  return best;
}

}  // namespace

std::vector<std::vector<int>> deadhead_cycle_basis(const BaseGraph& g) {
  const int n = static_cast<int>(g.vertex_ids.size());
  std::vector<char> cov_v(n, 0), cov_a(g.arcs.size(), 0);

  // BFS restricted to a given arc filter, first hit of `stop` wins
  auto bfs = [&g, n](int from, auto&& arc_ok, auto&& stop) -> std::vector<int> {
    std::vector<int> via(n, -1);
    std::vector<char> seen(n, 0);
    std::queue<int> q;
    q.push(from);
    seen[from] = 1;
    auto unwind = [&](int end) {
      std::vector<int> path;
      for (int u = end; u != from; u = g.arcs[via[u]].tail) path.push_back(via[u]);
      std::reverse(path.begin(), path.end());
      return path;
    };
    if (stop(from)) return {};
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int a : g.deadhead_arcs) {
        if (g.arcs[a].tail != v || !arc_ok(a)) continue;
        int h = g.arcs[a].head;
        if (seen[h]) continue;
        seen[h] = 1;
        via[h] = a;
        if (stop(h)) return unwind(h);
        q.push(h);
      }
    }
    throw ValidationError("deadhead graph is not strongly connected");
  };

  std::vector<std::vector<int>> cycles;
  auto emit = [&](const std::vector<int>& arcs) {
    std::vector<int> usage(g.arcs.size(), 0);
    for (int a : arcs) {
      ++usage[a];
      cov_a[a] = 1;
      cov_v[g.arcs[a].tail] = cov_v[g.arcs[a].head] = 1;
    }
    cycles.push_back(std::move(usage));
  };

  // seed cycle through the first deadhead arc
  int a0 = g.deadhead_arcs.front();
  std::vector<int> seed = bfs(
      g.arcs[a0].head, [](int) { return true; },
      [&](int v) { return v == g.arcs[a0].tail; });
  seed.insert(seed.begin(), a0);
  emit(seed);

  for (;;) {
    int ear_start = -1;
    for (int a : g.deadhead_arcs)
      if (!cov_a[a] && cov_v[g.arcs[a].tail]) {
        ear_start = a;
        break;
      }
    if (ear_start < 0) break;
    std::vector<int> ear{ear_start};
    int v = g.arcs[ear_start].head;
    if (!cov_v[v]) {
      std::vector<int> fresh = bfs(
          v, [](int) { return true; }, [&](int u) { return cov_v[u] != 0; });
      ear.insert(ear.end(), fresh.begin(), fresh.end());
      v = ear.empty() ? v : g.arcs[ear.back()].head;
    }
    // close through the already-covered subgraph, strongly connected by induction
    std::vector<int> back = bfs(
        v, [&](int a) { return cov_a[a] != 0; },
        [&](int u) { return u == g.arcs[ear_start].tail; });
    std::vector<int> cycle = ear;
    cycle.insert(cycle.end(), back.begin(), back.end());
    emit(cycle);
  }
  const int expected =
      static_cast<int>(g.deadhead_arcs.size()) - n + 1;
  assert(static_cast<int>(cycles.size()) == expected);
  (void)expected;
  return cycles;
}

PointCloud enumerate_cgf_points(const ReplicatedGraph& rg,
                                const EnumerationOptions& opts) {
  const int cols = static_cast<int>(rg.arcs.size());
  if (cols > opts.arc_limit)
    throw LimitError("replicated graph exceeds the enumeration arc limit (" +
                     std::to_string(cols) + " > " +
                     std::to_string(opts.arc_limit) + ")");
  const Instance& inst = *rg.inst;
  const BaseGraph& g = inst.graph;
  const int K = inst.num_agents, L = rg.num_layers;
  const int nQ = static_cast<int>(g.service_arcs.size());
  RepIndex idx(rg);

  std::vector<std::vector<std::vector<int>>> agent_paths(K);
  for (int k = 0; k < K; ++k) enum_agent_paths(rg, k, agent_paths[k]);

  // coverage mask and usage per path
  std::vector<int> service_pos(g.arcs.size(), -1);
  for (int q = 0; q < nQ; ++q) service_pos[g.service_arcs[q]] = q;
  std::vector<std::vector<std::uint32_t>> path_mask(K);
  for (int k = 0; k < K; ++k)
    for (const std::vector<int>& p : agent_paths[k]) {
      std::uint32_t m = 0;
      for (int a : p)
        if (rg.arcs[a].cat == ArcCategory::InterLayer)
          m |= 1u << service_pos[rg.arcs[a].base_arc];
      path_mask[k].push_back(m);
    }
  const std::uint32_t full = nQ == 32 ? ~0u : (1u << nQ) - 1;

  PointCloud cloud;
  cloud.num_cols = cols;
  std::vector<std::vector<std::uint8_t>> points;
  std::vector<std::vector<int>> combos;
  bool budget_left = true;
  auto push = [&](std::vector<std::uint8_t> x) {
    if (points.size() >= opts.max_points) {
      cloud.truncated = true;
      budget_left = false;
      return;
    }
    points.push_back(std::move(x));
  };

  // walk skeletons: one simple source-sink path per agent, services covered
  std::vector<int> pick(K, 0);
  for (;;) {
    std::uint32_t m = 0;
    for (int k = 0; k < K; ++k) m |= path_mask[k][pick[k]];
    if (m == full) {
      std::vector<std::uint8_t> x(cols, 0);
      for (int k = 0; k < K; ++k)
        for (int a : agent_paths[k][pick[k]]) ++x[a];
      // the cascade arcs close the agent walks into the one solution cycle
      for (int k = 0; k < K; ++k) x[idx.ts[k]] = 1;
      if (budget_left) {
        combos.push_back(pick);
        push(std::move(x));
      }
    }
    int k = 0;
    while (k < K && ++pick[k] == static_cast<int>(agent_paths[k].size())) {
      pick[k] = 0;
      ++k;
    }
    if (k == K || !budget_left) break;
  }
  if (points.empty()) throw ValidationError("no feasible spatial point exists");

  auto circulations = enumerate_circulations(g, opts.intra_cap);
  const int slots = K * L;
  auto add_circ = [&](std::vector<std::uint8_t>& x, int slot, int ci) -> bool {
    int k = slot / L, l = slot % L + 1;
    for (int pos = 0; pos < idx.nD; ++pos) {
      int u = circulations[ci][pos];
      if (u == 0) continue;
      int a = idx.intra[(static_cast<std::size_t>(k) * L + (l - 1)) * idx.nD + pos];
      if (x[a] + u > opts.intra_cap) return false;
      x[a] = static_cast<std::uint8_t>(x[a] + u);
    }
    return true;
  };

  // one cycle at a time on every skeleton, then deeper combinations
  if (opts.with_circulations && circulations.size() > 1) {
    for (const std::vector<int>& combo : combos) {
      if (!budget_left) break;
      std::vector<std::uint8_t> base(cols, 0);
      for (int k = 0; k < K; ++k)
        for (int a : agent_paths[k][combo[k]]) ++base[a];
      for (int k = 0; k < K; ++k) base[idx.ts[k]] = 1;
      for (int slot = 0; slot < slots && budget_left; ++slot)
        for (std::size_t ci = 1; ci < circulations.size() && budget_left; ++ci) {
          std::vector<std::uint8_t> x = base;
          if (add_circ(x, slot, static_cast<int>(ci))) push(std::move(x));
        }
    }
    for (const std::vector<int>& combo : combos) {
      if (!budget_left) break;
      std::vector<std::uint8_t> base(cols, 0);
      for (int k = 0; k < K; ++k)
        for (int a : agent_paths[k][combo[k]]) ++base[a];
      for (int k = 0; k < K; ++k) base[idx.ts[k]] = 1;
      std::vector<std::size_t> ci(slots, 0);
      for (;;) {
        int s = 0;
        while (s < slots && ++ci[s] == circulations.size()) {
          ci[s] = 0;
          ++s;
        }
        if (s == slots || !budget_left) break;
        int nonzero = 0;
        for (std::size_t v : ci) nonzero += v != 0;
        if (nonzero < 2) continue;
        std::vector<std::uint8_t> x = base;
        bool ok = true;
        for (int slot = 0; slot < slots && ok; ++slot)
          if (ci[slot] != 0) ok = add_circ(x, slot, static_cast<int>(ci[slot]));
        if (ok) push(std::move(x));
      }
    }
  }

  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  cloud.flat.reserve(points.size() * static_cast<std::size_t>(cols));
  for (const std::vector<std::uint8_t>& p : points)
    cloud.flat.insert(cloud.flat.end(), p.begin(), p.end());

  auto base_cycles = deadhead_cycle_basis(g);
  for (int k = 0; k < K; ++k)
    for (int l = 1; l <= L; ++l)
      for (const std::vector<int>& c : base_cycles) {
        std::vector<int> ray(cols, 0);
        for (int b : g.deadhead_arcs)
          if (c[b] != 0) ray[idx.intra_id(k, l, b)] = c[b];
        cloud.rays.push_back(std::move(ray));
      }
  return cloud;
}

int affine_rank_of(const std::vector<std::vector<int>>& points,
                   const std::vector<std::vector<int>>& rays, int num_cols,
                   int early_stop) {
  RationalRankAccumulator acc(num_cols);
  for (const std::vector<int>& r : rays) {
    acc.add_row(to_i64(r));
    if (early_stop >= 0 && acc.rank() >= early_stop) return acc.rank();
  }
  if (points.empty()) return acc.rank();
  std::vector<std::int64_t> p0 = to_i64(points.front());
  for (std::size_t i = 1; i < points.size(); ++i) {
    std::vector<std::int64_t> d = to_i64(points[i]);
    for (int c = 0; c < num_cols; ++c) d[c] -= p0[c];
    acc.add_row(d);
    if (early_stop >= 0 && acc.rank() >= early_stop) return acc.rank();
  }
  return acc.rank();
}

int affine_dimension(const PointCloud& cloud, int early_stop) {
  if (cloud.num_points() == 0) return -1;
  RationalRankAccumulator acc(cloud.num_cols);
  for (const std::vector<int>& r : cloud.rays) {
    acc.add_row(to_i64(r));
    if (early_stop >= 0 && acc.rank() >= early_stop) return acc.rank();
  }
  std::vector<std::int64_t> p0 = to_i64(cloud.point(0), cloud.num_cols);
  for (std::size_t i = 1; i < cloud.num_points(); ++i) {
    std::vector<std::int64_t> d = to_i64(cloud.point(i), cloud.num_cols);
    for (int c = 0; c < cloud.num_cols; ++c) d[c] -= p0[c];
    acc.add_row(d);
    if (early_stop >= 0 && acc.rank() >= early_stop) return acc.rank();
  }
  return acc.rank();
}

std::vector<std::vector<int>> construct_lemma1_family(const ReplicatedGraph& rg) {
  const Instance& inst = *rg.inst;
  const BaseGraph& g = inst.graph;
  const int K = inst.num_agents, L = rg.num_layers;
  const int nQ = static_cast<int>(g.service_arcs.size());
  if (K < 2)
    throw ValidationError("the dimension family needs at least two agents");
  RepIndex idx(rg);
  const int cols = static_cast<int>(rg.arcs.size());

  // walk serving `serves[i]` while crossing from layer i+1, exiting at the
  // layer after the last service
  auto walk_for = [&](int k, const std::vector<int>& serves) {
    std::vector<int> walk{idx.sd[k]};
    int pos = g.depot;
    int layer = 1;
    for (int q : serves) {
      const Arc& arc = g.arcs[g.service_arcs[q]];
      for (int b : bfs_deadhead_path(g, pos, arc.tail))
        walk.push_back(idx.intra_id(k, layer, b));
      walk.push_back(service_copy(rg, q, k, layer));
      pos = arc.head;
      ++layer;
    }
    for (int b : bfs_deadhead_path(g, pos, g.depot))
      walk.push_back(idx.intra_id(k, layer, b));
    walk.push_back(idx.dt_id(k, layer));
    return walk;
  };

  std::vector<int> sigma(nQ);
  for (int q = 0; q < nQ; ++q) sigma[q] = q;

  auto usage_of = [&](const std::vector<std::vector<int>>& walks) {
    std::vector<int> x(cols, 0);
    for (const std::vector<int>& w : walks)
      for (int a : w) ++x[a];
    for (int k = 0; k < K; ++k) x[idx.ts[k]] = 1;  // close the solution cycle
    return x;
  };
  auto idle = [&](int k) { return std::vector<int>{idx.st[k]}; };

  std::vector<std::vector<int>> base_walks(K);
  base_walks[0] = walk_for(0, sigma);
  for (int k = 1; k < K; ++k) base_walks[k] = idle(k);

  std::vector<std::vector<int>> family;
  family.push_back(usage_of(base_walks));

  // one solution per later-agent service copy, stacking all earlier layers
  for (int k = 1; k < K; ++k)
    for (int q = 0; q < nQ; ++q)
      for (int l = 1; l <= L - 1; ++l) {
        std::vector<std::vector<int>> walks = base_walks;
        walks[k] = walk_for(k, std::vector<int>(l, q));
        family.push_back(usage_of(walks));
      }

  std::vector<std::vector<int>> alt_walks(K);
  alt_walks[0] = idle(0);
  alt_walks[1] = walk_for(1, sigma);
  for (int k = 2; k < K; ++k) alt_walks[k] = idle(k);
  family.push_back(usage_of(alt_walks));

  // first-agent copies untouched by the base tour, one each
  for (int l = 1; l <= L - 1; ++l)
    for (int q = 0; q < nQ; ++q) {
      if (q == sigma[l - 1]) continue;
      std::vector<int> serves = sigma;
      serves[l - 1] = q;
      std::vector<std::vector<int>> walks = alt_walks;
      walks[0] = walk_for(0, serves);
      family.push_back(usage_of(walks));
    }

  // early depot exits of the first agent, layers 2..L-1
  for (int l = 2; l <= L - 1; ++l) {
    std::vector<std::vector<int>> walks = alt_walks;
    walks[0] = walk_for(0, std::vector<int>(sigma.begin(), sigma.begin() + l - 1));
    family.push_back(usage_of(walks));
  }

  auto base_cycles = deadhead_cycle_basis(g);
  std::vector<int> base_usage = usage_of(base_walks);
  for (int k = 0; k < K; ++k)
    for (int l = 1; l <= L; ++l)
      for (const std::vector<int>& c : base_cycles) {
        std::vector<int> x = base_usage;
        for (int b : g.deadhead_arcs)
          if (c[b] != 0) x[idx.intra_id(k, l, b)] += c[b];
        family.push_back(std::move(x));
      }
  return family;
}

int equality_rank(const ReplicatedGraph& rg) {
  const int cols = static_cast<int>(rg.arcs.size());
  RationalRankAccumulator acc(cols);
  for (int v = 0; v < static_cast<int>(rg.vertices.size()); ++v) {
    std::vector<std::int64_t> row(cols, 0);
    for (int a : rg.out_arcs[v]) row[a] += 1;
    for (int a : rg.in_arcs[v]) row[a] -= 1;
    acc.add_row(row);
  }
  for (int k = 0; k < rg.inst->num_agents; ++k) {
    std::vector<std::int64_t> row(cols, 0);
    for (int a : rg.out_arcs[rg.source_id(k)]) row[a] += 1;
    acc.add_row(row);
  }
  return acc.rank();
}

FacetReport verify_facet(const ReplicatedGraph& rg, const Cut& cut,
                         const PointCloud& cloud) {
  FacetReport rep;
  const double eps = 1e-9;
  const int cols = cloud.num_cols;
  rep.dim = affine_dimension(
      cloud, static_cast<int>(rg.arcs.size()) - equality_rank(rg));

  rep.valid = true;
  std::vector<std::vector<int>> tight;
  for (std::size_t i = 0; i < cloud.num_points(); ++i) {
    double lhs = 0;
    const std::uint8_t* p = cloud.point(i);
    for (auto [a, c] : cut.coeffs) lhs += c * p[a];
    if (lhs < cut.rhs - eps) rep.valid = false;
    if (std::fabs(lhs - cut.rhs) <= eps)
      tight.push_back(std::vector<int>(p, p + cols));
  }
  std::vector<std::vector<int>> ortho_rays;
  for (const std::vector<int>& r : cloud.rays) {
    double dot = 0;
    for (auto [a, c] : cut.coeffs) dot += c * r[a];
    if (dot < -eps) rep.valid = false;
    if (std::fabs(dot) <= eps) ortho_rays.push_back(r);
  }
  rep.tight_points = static_cast<int>(tight.size());
  if (!tight.empty())
    rep.tight_dim = affine_rank_of(tight, ortho_rays, cols, rep.dim);
  rep.facet = rep.valid && rep.tight_dim == rep.dim - 1;
  return rep;
}

OracleResult oracle_optimum(const Instance& inst, const OracleLimits& limits) {
  const BaseGraph& g = inst.graph;
  const int K = inst.num_agents;
  const int nQ = static_cast<int>(g.service_arcs.size());
  if (static_cast<int>(g.vertex_ids.size()) > limits.max_vertices ||
      nQ > limits.max_services || K > limits.max_agents)
    throw LimitError("instance too large for the exhaustive oracle");

  SimplePathCache cache(g);
  OracleResult best;
  best.cost = -1;
  std::vector<int> owner(nQ, 0);
  for (;;) {
    std::vector<std::vector<ParetoEntry>> per_agent(K);
    bool viable = true;
    for (int k = 0; k < K && viable; ++k) {
      std::vector<int> mine;
      for (int q = 0; q < nQ; ++q)
        if (owner[q] == k) mine.push_back(q);
      std::vector<ParetoEntry> states;
      std::sort(mine.begin(), mine.end());
      do {
        std::vector<ParetoEntry> s = evaluate_order(inst, mine, cache);
        states.insert(states.end(), std::make_move_iterator(s.begin()),
                      std::make_move_iterator(s.end()));
      } while (std::next_permutation(mine.begin(), mine.end()));
      pareto_prune(states);
      if (states.empty()) viable = false;
      per_agent[k] = std::move(states);
    }
    if (viable) {
      OracleResult cand = combine_agents(per_agent);
      if (best.cost < 0 || cand.cost < best.cost) best = cand;
    }
    int q = 0;
    while (q < nQ && ++owner[q] == K) {
      owner[q] = 0;
      ++q;
    }
    if (q == nQ) break;
  }
  return best;
}

OracleResult oracle_restricted(const Instance& inst,
                               const std::vector<std::vector<int>>& orders) {
  SimplePathCache cache(inst.graph);
  std::vector<std::vector<ParetoEntry>> per_agent;
  for (const std::vector<int>& order : orders)
    per_agent.push_back(evaluate_order(inst, order, cache));
  return combine_agents(per_agent);
}

}  // namespace rpptu
