#include "rpptu/gen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <stdexcept>
#include <utility>

namespace rpptu {
namespace {

// Uniform integer in [lo, hi] by rejection, so results do not depend on the
// standard library's distribution implementation.
std::int64_t rand_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
  const std::uint64_t limit = std::mt19937_64::max() - std::mt19937_64::max() % range;
  std::uint64_t v = rng();
  while (v >= limit) v = rng();
  return lo + static_cast<std::int64_t>(v % range);
}

std::string tag(char prefix, int i) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%c%02d", prefix, i);
  return buf;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

// Strong connectivity of the deadhead arcs of a raw spec, before validation.
bool deadheads_strongly_connected(const InstanceSpec& spec) {
  std::map<std::string, int> idx;
  for (const auto& v : spec.vertices) idx.emplace(v, static_cast<int>(idx.size()));
  const int n = static_cast<int>(spec.vertices.size());
  std::vector<std::vector<int>> fwd(n), rev(n);
  for (const auto& a : spec.arcs) {
    if (a.service) continue;
    fwd[idx.at(a.tail)].push_back(idx.at(a.head));
    rev[idx.at(a.head)].push_back(idx.at(a.tail));
  }
  auto reaches_all = [n](const std::vector<std::vector<int>>& adj) {
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int w : adj[u])
        if (!seen[w]) {
          seen[w] = 1;
          ++count;
          stack.push_back(w);
        }
    }
    return count == n;
  };
  return reaches_all(fwd) && reaches_all(rev);
}

}  // namespace

Instance generate(const GenConfig& cfg) {
  if (cfg.num_vertices < 2) throw ValidationError("generator needs at least 2 vertices");
  if (cfg.num_agents < 1) throw ValidationError("generator needs at least 1 agent");
  const int n = cfg.num_vertices;
  std::mt19937_64 rng(cfg.seed);

  InstanceSpec spec;
  spec.num_agents = cfg.num_agents;
  spec.horizon = cfg.period * cfg.horizon_periods;
  spec.name = "gen-v" + std::to_string(n) + "-r" + num(cfg.arc_ratio) + "-b" +
              num(cfg.beta) + "-k" + std::to_string(cfg.num_agents) + "-s" +
              std::to_string(cfg.seed);
  for (int i = 0; i < n; ++i) spec.vertices.push_back(tag('v', i));
  spec.depot = spec.vertices.front();

  // Hamiltonian cycle over a random vertex permutation.
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  for (int i = n - 1; i > 0; --i)
    std::swap(perm[i], perm[static_cast<int>(rand_int(rng, 0, i))]);
  std::set<std::pair<int, int>> used;
  std::vector<Minutes> cycle_weight(n);
  for (int i = 0; i < n; ++i) {
    int u = perm[i], w = perm[(i + 1) % n];
    cycle_weight[i] = rand_int(rng, 1, 10);
    spec.arcs.push_back({tag('c', i), spec.vertices[u], spec.vertices[w],
                         cycle_weight[i], false});
    used.emplace(u, w);
  }

  // Extra arcs on fresh ordered pairs up to the requested density.
  long long target =
      std::min<long long>(std::llround(cfg.arc_ratio * n),
                          static_cast<long long>(n) * (n - 1));
  int extras = 0;
  while (static_cast<long long>(spec.arcs.size()) < target) {
    int u = static_cast<int>(rand_int(rng, 0, n - 1));
    int w = static_cast<int>(rand_int(rng, 0, n - 1));
    if (u == w || used.count({u, w})) continue;
    Minutes weight = rand_int(rng, 1, 10);
    spec.arcs.push_back(
        {tag('e', extras++), spec.vertices[u], spec.vertices[w], weight, false});
    used.emplace(u, w);
  }

  // Uniform service subset of the arcs placed so far.
  const int total = static_cast<int>(spec.arcs.size());
  int services = std::max(1, static_cast<int>(std::llround(cfg.beta * total)));
  services = std::min(services, total);
  std::vector<int> pick(total);
  for (int i = 0; i < total; ++i) pick[i] = i;
  for (int i = 0; i < services; ++i)
    std::swap(pick[i], pick[static_cast<int>(rand_int(rng, i, total - 1))]);
  pick.resize(services);
  std::sort(pick.begin(), pick.end());
  for (int i : pick) spec.arcs[i].service = true;

  // Periodic trains run the cycle; each occupies cycle arc i for its running
  // time starting at departure + (prefix of earlier cycle weights).
  std::vector<Minutes> prefix(n + 1, 0);
  for (int i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + cycle_weight[i];
  for (int train = 0; train < cfg.num_trains; ++train) {
    Minutes offset = cfg.period * train / cfg.num_trains;
    for (int rep = 0; rep < cfg.horizon_periods; ++rep) {
      Minutes depart = offset + cfg.period * rep;
      for (int i = 0; i < n; ++i) {
        Minutes lo = depart + prefix[i];
        Minutes hi = std::min<Minutes>(lo + cycle_weight[i], spec.horizon);
        if (lo >= hi) continue;
        spec.windows[tag('c', i)].push_back({lo, hi});
      }
    }
  }

  // Service arcs must stay spannable by pure deadheading: add a parallel twin
  // (same endpoints, weight and windows) while the deadhead subgraph is not
  // strongly connected. Twins of cycle arcs share the track, so they inherit
  // the train windows.
  const std::size_t placed = spec.arcs.size();
  for (std::size_t j = 0; j < placed; ++j) {
    const auto a = spec.arcs[j];
    if (!a.service) continue;
    if (deadheads_strongly_connected(spec)) break;
    spec.arcs.push_back({"p" + a.id, a.tail, a.head, a.weight, false});
    auto it = spec.windows.find(a.id);
    if (it != spec.windows.end()) spec.windows["p" + a.id] = it->second;
  }

  return build_instance(spec);
}

namespace {

std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

BatchResult run_batch(const std::vector<BatchCell>& cells, int count,
                      std::uint64_t seed, int num_agents,
                      const SolveOptions& solver) {
  BatchResult out;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    for (int i = 0; i < count; ++i) {
      GenConfig cfg;
      cfg.num_vertices = cells[c].num_vertices;
      cfg.arc_ratio = cells[c].arc_ratio;
      cfg.beta = cells[c].beta;
      cfg.num_agents = num_agents;
      cfg.seed = mix(seed + mix(c * 1000003ULL + static_cast<std::uint64_t>(i)));
      for (bool with_cuts : {true, false}) {
        BatchRow row;
        row.cell = cells[c];
        row.seed = cfg.seed;
        row.with_cuts = with_cuts;
        try {
          Instance inst = generate(cfg);
          SolveOptions opts = solver;
          opts.use_cuts = with_cuts;
          Solution sol = solve(inst, opts);
          row.status = sol.status;
          row.objective = sol.objective;
          row.nodes = sol.stats.nodes_branched;
          row.seconds = sol.stats.wall_seconds;
          row.cuts = sol.stats.cuts_added;
        } catch (const std::exception&) {
          row.status = "error";
        }
        out.rows.push_back(std::move(row));
      }
    }
  }
  return out;
}

std::string BatchResult::csv() const {
  std::string text = "beta,V,A,variant,OPT,NODES,TIME_s,nCP\n";
  for (const auto& r : rows) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%g,%d,%lld,%s,%g,%lld,%.3f,%lld\n",
                  r.cell.beta, r.cell.num_vertices,
                  std::llround(r.cell.arc_ratio * r.cell.num_vertices),
                  r.with_cuts ? "cuts" : "nocuts",
                  r.status == "optimal" ? r.objective : -1.0, r.nodes, r.seconds,
                  r.cuts);
    text += buf;
  }
  return text;
}

}  // namespace rpptu
