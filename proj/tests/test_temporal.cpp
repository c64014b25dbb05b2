#include <doctest.h>

#include "rpptu/fixtures.hpp"
#include "rpptu/temporal.hpp"

using namespace rpptu;

namespace {

// depot a, chain a->b->c->a; the b->c hop is the serviced one
Instance triangle(std::vector<TimeWindow> bc_windows = {}) {
  InstanceSpec spec;
  spec.name = "triangle";
  spec.num_agents = 1;
  spec.horizon = 30;
  spec.vertices = {"a", "b", "c"};
  spec.depot = "a";
  spec.arcs = {
      {"d0", "a", "b", 1, false},
      {"d1", "b", "c", 2, false},
      {"d2", "c", "a", 3, false},
      {"s0", "b", "c", 2, true},
  };
  if (!bc_windows.empty()) {
    spec.windows["d1"] = bc_windows;
    spec.windows["s0"] = bc_windows;
  }
  return build_instance(spec);
}

Instance two_vertex_windowed() {
  InstanceSpec spec;
  spec.name = "pair";
  spec.num_agents = 1;
  spec.horizon = 20;
  spec.vertices = {"a", "b"};
  spec.depot = "a";
  spec.arcs = {
      {"d0", "a", "b", 2, false},
      {"d1", "b", "a", 2, false},
      {"s0", "a", "b", 2, true},
  };
  spec.windows["d0"] = {{5, 9}};
  return build_instance(spec);
}

}  // namespace

TEST_CASE("fastest path adds weights without windows") {
  Instance inst = triangle();
  PathResult r = fastest_path(inst, 0, 2, 10);
  REQUIRE(r.reachable);
  CHECK(r.arrive == 13);  // 1 + 2
  CHECK(r.fuel == 3);
  CHECK(r.delay == 0);
  CHECK(r.arcs == std::vector<int>{0, 1});
}

TEST_CASE("fastest path waits out a window") {
  Instance inst = two_vertex_windowed();
  PathResult r = fastest_path(inst, 0, 1, 4);
  REQUIRE(r.reachable);
  CHECK(r.arrive == 11);  // blocked at 4, depart 9
  CHECK(r.fuel == 2);
  CHECK(r.delay == 5);
  // outside the window no waiting happens
  CHECK(fastest_path(inst, 0, 1, 9).arrive == 11);
  CHECK(fastest_path(inst, 0, 1, 3).arrive == 5);
}

TEST_CASE("fastest path ignores service arcs and handles from==to") {
  Instance inst = two_vertex_windowed();
  // s0 runs a->b in parallel; movement may not use it, so timing equals d0's
  PathResult r = fastest_path(inst, 0, 1, 4);
  CHECK(r.arcs == std::vector<int>{0});
  PathResult same = fastest_path(inst, 1, 1, 7);
  REQUIRE(same.reachable);
  CHECK(same.arrive == 7);
  CHECK(same.fuel == 0);
  CHECK(same.arcs.empty());
}

TEST_CASE("fastest path reports unreachable targets") {
  // hand-rolled graph that skips validation: one arc a->b, nothing back
  Instance inst;
  inst.graph.vertex_ids = {"a", "b"};
  inst.graph.vertex_index = {{"a", 0}, {"b", 1}};
  inst.graph.arcs = {{"d0", 0, 1, 1, false}};
  inst.graph.arc_index = {{"d0", 0}};
  inst.graph.deadhead_arcs = {0};
  inst.graph.depot = 0;
  inst.num_agents = 1;
  CHECK_FALSE(fastest_path(inst, 1, 0, 0).reachable);
}

namespace {

// x vector for: agent 0 runs depot -> s0 -> s1 -> g2 -> exit, agent 1 idle
std::vector<double> small3_tour(const ReplicatedGraph& rg) {
  std::vector<double> x(rg.num_arcs(), 0.0);
  const auto& g = rg.inst->graph;
  const int steps = rg.num_layers - 1;
  x[rg.copies_of[0][0 * steps + 0]] = 1.0;  // s0 in layer 1
  x[rg.copies_of[1][0 * steps + 1]] = 1.0;  // s1 in layer 2
  for (int a = 0; a < rg.num_arcs(); ++a) {
    const RepArc& ra = rg.arcs[a];
    switch (ra.cat) {
      case ArcCategory::SourceDepot:
        if (ra.agent == 0) x[a] = 1.0;
        break;
      case ArcCategory::IntraLayer:
        if (ra.agent == 0 && ra.layer == 3 && ra.base_arc == g.arc_index.at("g2"))
          x[a] = 1.0;
        break;
      case ArcCategory::DepotSink:
        if (ra.agent == 0 && ra.layer == 3) x[a] = 1.0;
        break;
      case ArcCategory::SourceSink:
        if (ra.agent == 1) x[a] = 1.0;
        break;
      case ArcCategory::SinkSource:
        x[a] = 1.0;
        break;
      default:
        break;
    }
  }
  return x;
}

}  // namespace

TEST_CASE("temporal propagation over an integral completion") {
  Instance inst = make_small3();
  ReplicatedGraph rg = build_replicated(inst);
  Trajectory t = solve_temporal(rg, small3_tour(rg));
  REQUIRE(t.status == TemporalStatus::Feasible);
  CHECK(t.total_fuel == 9);  // 2 + 3 + 4
  CHECK(t.gamma == 9);
  REQUIRE(t.agents.size() == 2);
  CHECK(t.agents[0].finish == 9);
  CHECK(t.agents[0].waiting == 0);
  CHECK(t.agents[1].finish == 0);
  CHECK(t.agents[1].fuel == 0);
}

TEST_CASE("malformed completions are flagged, not crashed") {
  Instance inst = make_small3();
  ReplicatedGraph rg = build_replicated(inst);
  std::vector<double> x(rg.num_arcs(), 0.0);
  for (int a = 0; a < rg.num_arcs(); ++a)
    if (rg.arcs[a].cat == ArcCategory::SourceDepot && rg.arcs[a].agent == 0)
      x[a] = 1.0;  // walk enters layer 1 and stops
  Trajectory t = solve_temporal(rg, x);
  CHECK(t.status == TemporalStatus::MalformedX);
  CHECK_FALSE(t.note.empty());
}

TEST_CASE("trajectory json and gantt render") {
  Instance inst = make_small3();
  ReplicatedGraph rg = build_replicated(inst);
  Trajectory t = solve_temporal(rg, small3_tour(rg));
  auto j = trajectory_to_json(rg, t);
  CHECK(j["gamma"] == 9);
  CHECK(j["fuel"] == 9);
  REQUIRE(j["agents"].size() == 2);
  CHECK(j["agents"][0]["steps"].size() == 3);  // virtual hops dropped
  std::string gantt = trajectory_gantt(rg, t);
  CHECK(gantt.find("agent 0") != std::string::npos);
  CHECK(gantt.find('#') != std::string::npos);  // service spans drawn
}

TEST_CASE("windows push departures during propagation") {
  Instance inst = triangle({{2, 4}});
  ReplicatedGraph rg = build_replicated(inst);
  std::vector<double> x(rg.num_arcs(), 0.0);
  x[rg.copies_of[0][0]] = 1.0;  // serve b->c in layer 1
  for (int a = 0; a < rg.num_arcs(); ++a) {
    const RepArc& ra = rg.arcs[a];
    if (ra.cat == ArcCategory::SourceDepot) x[a] = 1.0;
    if (ra.cat == ArcCategory::SinkSource) x[a] = 1.0;
    if (ra.cat == ArcCategory::DepotSink && ra.layer == 2) x[a] = 1.0;
    if (ra.cat == ArcCategory::IntraLayer && ra.base_arc == 0 && ra.layer == 1)
      x[a] = 1.0;  // a->b deadhead
    if (ra.cat == ArcCategory::IntraLayer && ra.base_arc == 2 && ra.layer == 2)
      x[a] = 1.0;  // c->a deadhead
  }
  Trajectory t = solve_temporal(rg, x);
  REQUIRE(t.status == TemporalStatus::Feasible);
  // arrive b at 1, wait out (2,4): depart 4, arrive c 6, home 9
  CHECK(t.gamma == 9);
  CHECK(t.agents[0].waiting == 3);
  CHECK(t.total_fuel == 6);
}
