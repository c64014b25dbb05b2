#include "rpptu/separation.hpp"

#include <algorithm>
#include <queue>

#include "rpptu/lp.hpp"

namespace rpptu {

namespace {

bool frac(double v) { return v > kEpsInt && v < 1.0 - kEpsInt; }

// Shortest path (fewest arcs) from `from` to `to` through arcs of one agent
// block whose x exceeds the integrality epsilon. Returns vertex ids on the
// path including both ends, or empty when unreachable.
std::vector<int> support_path(const ReplicatedGraph& rg,
                              const std::vector<double>& x, int agent, int from,
                              int to) {
  std::vector<int> via(rg.vertices.size(), -1);
  std::vector<char> seen(rg.vertices.size(), 0);
  std::queue<int> q;
  q.push(from);
  seen[from] = 1;
  auto unwind = [&]() {
    std::vector<int> verts{to};
    for (int u = to; u != from; u = rg.arcs[via[u]].tail)
      verts.push_back(rg.arcs[via[u]].tail);
    std::reverse(verts.begin(), verts.end());
    return verts;
  };
  if (from == to) return {from};
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int a : rg.out_arcs[v]) {
      const RepArc& ra = rg.arcs[a];
      if (ra.cat != ArcCategory::IntraLayer && ra.cat != ArcCategory::InterLayer)
        continue;
      if (ra.agent != agent || x[a] <= kEpsInt) continue;
      int h = ra.head;
      if (seen[h]) continue;
      seen[h] = 1;
      via[h] = a;
      if (h == to) return unwind();
      q.push(h);
    }
  }
  return {};
}

Cut build_cut(const ReplicatedGraph& rg, int q, int agent,
              std::vector<int> S) {
  Cut cut;
  cut.service_arc = q;
  cut.agent = agent;
  cut.vertex_set = std::move(S);
  std::vector<char> in_S(rg.vertices.size(), 0);
  for (int v : cut.vertex_set) in_S[v] = 1;
  for (int a = 0; a < static_cast<int>(rg.arcs.size()); ++a)
    if (in_S[rg.arcs[a].tail] && !in_S[rg.arcs[a].head])
      cut.coeffs.push_back({a, 1.0});
  for (int a : rg.copies_of[q])
    if (!in_S[rg.arcs[a].tail] && !in_S[rg.arcs[a].head])
      cut.coeffs.push_back({a, 1.0});
  std::sort(cut.coeffs.begin(), cut.coeffs.end());
  return cut;
}

bool side_conditions(const ReplicatedGraph& rg, int q, const std::vector<int>& S) {
  std::vector<char> in_S(rg.vertices.size(), 0);
  for (int v : S) in_S[v] = 1;

  std::vector<char> keep(rg.vertices.size(), 1);
  for (int v : S) keep[v] = 0;
  if (!strongly_connected_within(rg, keep)) return false;

  // no copy of any other service arc may touch S
  for (int q2 = 0; q2 < static_cast<int>(rg.copies_of.size()); ++q2) {
    if (q2 == q) continue;
    for (int a : rg.copies_of[q2])
      if (in_S[rg.arcs[a].tail] || in_S[rg.arcs[a].head]) return false;
  }

  // every weak component of the arcs at S holds a copy of the separating arc
  std::vector<int> touching;
  for (int a = 0; a < static_cast<int>(rg.arcs.size()); ++a)
    if (in_S[rg.arcs[a].tail] || in_S[rg.arcs[a].head]) touching.push_back(a);
  for (const std::vector<int>& comp : components_within(rg, touching)) {
    bool has_copy = false;
    for (int a : rg.copies_of[q]) {
      if (std::binary_search(comp.begin(), comp.end(), rg.arcs[a].tail) ||
          std::binary_search(comp.begin(), comp.end(), rg.arcs[a].head)) {
        has_copy = true;
        break;
      }
    }
    if (!has_copy) return false;
  }
  return true;
}

bool same_signature(const Cut& a, const Cut& b) {
  return a.service_arc == b.service_arc && a.vertex_set == b.vertex_set;
}

}  // namespace

std::vector<Cut> find_cuts(const ReplicatedGraph& rg,
                           const std::vector<double>& x,
                           const std::vector<Cut>& pool) {
  const int K = rg.inst->num_agents;
  const int steps = rg.num_layers - 1;
  std::vector<Cut> found;
  auto known = [&](const Cut& c) {
    for (const Cut& p : pool)
      if (same_signature(c, p)) return true;
    for (const Cut& p : found)
      if (same_signature(c, p)) return true;
    return false;
  };

  for (int k = 0; k < K; ++k) {
    for (int q = 0; q < static_cast<int>(rg.copies_of.size()); ++q) {
      std::vector<int> fracs;  // fractional copies of (q, k), layer order
      for (int l = 1; l <= steps; ++l) {
        int a = rg.copies_of[q][static_cast<std::size_t>(k) * steps + (l - 1)];
        if (frac(x[a])) fracs.push_back(a);
      }
      if (fracs.size() < 2) continue;
      bool emitted = false;
      for (std::size_t i = 0; i < fracs.size() && !emitted; ++i)
        for (std::size_t j = i + 1; j < fracs.size() && !emitted; ++j) {
          std::vector<int> verts = support_path(
              rg, x, k, rg.arcs[fracs[i]].head, rg.arcs[fracs[j]].tail);
          if (verts.empty()) continue;
          std::vector<int> S;
          for (int v : verts)
            if (!rg.is_depot_copy(v)) S.push_back(v);
          std::sort(S.begin(), S.end());
          S.erase(std::unique(S.begin(), S.end()), S.end());
          if (S.empty()) continue;
          if (!side_conditions(rg, q, S)) continue;
          Cut cut = build_cut(rg, q, k, std::move(S));
          if (cut_lhs(cut, x) >= cut.rhs - kEpsFeas) continue;
          if (known(cut)) continue;
          found.push_back(std::move(cut));
          emitted = true;
        }
    }
  }
  return found;
}

CutCheck check_cut_validity(const ReplicatedGraph& rg, const Cut& cut,
                            EnumerationOptions opts) {
  opts.with_circulations = false;
  PointCloud cloud = enumerate_cgf_points(rg, opts);
  if (cloud.truncated)
    throw LimitError("validity scan needs the full point set; raise max_points");
  CutCheck res;
  for (std::size_t i = 0; i < cloud.num_points(); ++i) {
    const std::uint8_t* p = cloud.point(i);
    double lhs = 0.0;
    for (auto [a, c] : cut.coeffs) lhs += c * p[a];
    if (lhs < cut.rhs - kEpsFeas) {
      res.valid = false;
      res.witness_found = true;
      res.witness.assign(p, p + cloud.num_cols);
      return res;
    }
  }
  for (const std::vector<int>& r : cloud.rays) {
    double dot = 0.0;
    for (auto [a, c] : cut.coeffs) dot += c * r[a];
    if (dot < -kEpsFeas) {
      res.valid = false;
      return res;
    }
  }
  return res;
}

}  // namespace rpptu
