#include "rpptu/spatial.hpp"

#include <algorithm>
#include <cmath>

namespace rpptu {

namespace {

bool contains(const std::vector<int>& sorted, int v) {
  return std::binary_search(sorted.begin(), sorted.end(), v);
}

void check_node(const ReplicatedGraph& rg, const NodeFixings& node) {
  for (int a : node.fixed_one)
    if (contains(node.fixed_zero, a))
      throw ValidationError("arc " + rg.arc_name(a) + " fixed to both 0 and 1");
}

bool is_real(const RepArc& a) {
  return a.cat == ArcCategory::IntraLayer || a.cat == ArcCategory::InterLayer;
}

}  // namespace

SpatialModel assemble(const ReplicatedGraph& rg, const NodeFixings& node,
                      const std::vector<Cut>& cuts, TemporalEstimateMode mode) {
  check_node(rg, node);
  const int na = static_cast<int>(rg.arcs.size());
  SpatialModel model;
  LpProblem& lp = model.lp;

  for (int a = 0; a < na; ++a) {
    const RepArc& ra = rg.arcs[a];
    bool forced = contains(node.fixed_one, a);
    double lo = 0.0, hi = 1.0;
    if (forced) lo = 1.0;
    if (contains(node.fixed_zero, a)) hi = 0.0;
    double c = is_real(ra) && !forced ? static_cast<double>(ra.weight) : 0.0;
    lp.add_col(c, lo, hi, rg.arc_name(a));
    if (forced && is_real(ra)) lp.cost_offset += static_cast<double>(ra.weight);
  }
  model.gamma_hat_col = lp.add_col(1.0, 0.0, kInf, "gamma_hat");

  for (int v = 0; v < static_cast<int>(rg.vertices.size()); ++v) {
    std::vector<std::pair<int, double>> coeffs;
    for (int a : rg.out_arcs[v]) coeffs.push_back({a, 1.0});
    for (int a : rg.in_arcs[v]) coeffs.push_back({a, -1.0});
    lp.add_row('=', 0.0, std::move(coeffs));
  }
  for (int k = 0; k < rg.inst->num_agents; ++k) {
    std::vector<std::pair<int, double>> coeffs;
    for (int a : rg.out_arcs[rg.source_id(k)]) coeffs.push_back({a, 1.0});
    lp.add_row('=', 1.0, std::move(coeffs));
  }
  for (const std::vector<int>& copies : rg.copies_of) {
    std::vector<std::pair<int, double>> coeffs;
    for (int a : copies) coeffs.push_back({a, 1.0});
    lp.add_row('=', 1.0, std::move(coeffs));
  }
  for (int k = 0; k < rg.inst->num_agents; ++k) {
    std::vector<std::pair<int, double>> coeffs{{model.gamma_hat_col, 1.0}};
    for (int a = 0; a < na; ++a) {
      const RepArc& ra = rg.arcs[a];
      if (!is_real(ra) || contains(node.fixed_one, a)) continue;
      if (mode == TemporalEstimateMode::PerAgent && ra.agent != k) continue;
      coeffs.push_back({a, -static_cast<double>(ra.weight)});
    }
    double rhs = 0.0;
    for (int a : node.fixed_one) {
      const RepArc& ra = rg.arcs[a];
      if (!is_real(ra)) continue;
      if (mode == TemporalEstimateMode::PerAgent && ra.agent != k) continue;
      rhs += static_cast<double>(ra.weight);
    }
    lp.add_row('>', rhs, std::move(coeffs));
  }
  for (const Cut& cut : cuts) lp.add_row('>', cut.rhs, cut.coeffs);
  return model;
}

Minutes spatial_cost(const ReplicatedGraph& rg, const std::vector<double>& x) {
  double total = 0.0;
  for (std::size_t a = 0; a < rg.arcs.size(); ++a)
    if (is_real(rg.arcs[a])) total += static_cast<double>(rg.arcs[a].weight) * x[a];
  return static_cast<Minutes>(std::llround(total));
}

FeasibilityReport check_feasible_integer(const ReplicatedGraph& rg,
                                         const std::vector<double>& x,
                                         CoverageMode mode) {
  auto val = [&x](int a) { return std::llround(x[a]); };
  for (std::size_t a = 0; a < rg.arcs.size(); ++a) {
    if (std::fabs(x[a] - static_cast<double>(val(static_cast<int>(a)))) > kEpsInt)
      return {false, "arc " + rg.arc_name(static_cast<int>(a)) + " is fractional"};
    if (val(static_cast<int>(a)) < 0)
      return {false, "arc " + rg.arc_name(static_cast<int>(a)) + " is negative"};
  }
  for (int v = 0; v < static_cast<int>(rg.vertices.size()); ++v) {
    Minutes net = 0;
    for (int a : rg.out_arcs[v]) net += val(a);
    for (int a : rg.in_arcs[v]) net -= val(a);
    if (net != 0) return {false, "flow imbalance at " + rg.vertex_name(v)};
  }
  for (int k = 0; k < rg.inst->num_agents; ++k) {
    Minutes deg = 0;
    for (int a : rg.out_arcs[rg.source_id(k)]) deg += val(a);
    if (deg != 1)
      return {false, "source of agent " + std::to_string(k) + " has degree " +
                         std::to_string(deg)};
  }
  for (std::size_t q = 0; q < rg.copies_of.size(); ++q) {
    Minutes served = 0;
    for (int a : rg.copies_of[q]) served += val(a);
    bool bad = mode == CoverageMode::Strict ? served != 1 : served < 1;
    if (bad) {
      const Arc& base = rg.inst->graph.arcs[rg.inst->graph.service_arcs[q]];
      return {false, "service arc " + base.id + " covered " +
                         std::to_string(served) + " times"};
    }
  }
  return {true, {}};
}

double cut_lhs(const Cut& cut, const std::vector<double>& x) {
  double lhs = 0.0;
  for (auto [a, c] : cut.coeffs) lhs += c * x[a];
  return lhs;
}

}  // namespace rpptu
