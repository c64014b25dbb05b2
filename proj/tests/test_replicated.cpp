#include <doctest.h>

#include <algorithm>
#include <map>

#include "rpptu/fixtures.hpp"
#include "rpptu/replicated.hpp"

using namespace rpptu;

TEST_CASE("replication of the 3-vertex fixture") {
  Instance inst = make_small3();
  ReplicatedGraph rg = build_replicated(inst);
  CHECK(rg.num_layers == 3);  // |A_*| + 1
  CHECK(rg.num_vertices() == 22);  // |V| |K| |L| + 2|K|
  CHECK(rg.num_arcs() == 42);

  std::map<ArcCategory, int> count;
  for (const auto& a : rg.arcs) ++count[a.cat];
  CHECK(count[ArcCategory::IntraLayer] == 24);  // |A_D| |K| |L|
  CHECK(count[ArcCategory::InterLayer] == 8);   // |A_*|^2 |K|
  CHECK(count[ArcCategory::SourceSink] == 2);
  CHECK(count[ArcCategory::SinkSource] == 2);
  CHECK(count[ArcCategory::SourceDepot] == 2);
  CHECK(count[ArcCategory::DepotSink] == 4);  // layers 2..L

  for (const auto& copies : rg.copies_of) CHECK(copies.size() == 4);
  // copies ordered by (agent, layer)
  const auto& c = rg.copies_of[0];
  CHECK(rg.arcs[c[0]].agent == 0);
  CHECK(rg.arcs[c[0]].layer == 1);
  CHECK(rg.arcs[c[1]].layer == 2);
  CHECK(rg.arcs[c[2]].agent == 1);

  // inter-layer copies always ascend one layer
  for (const auto& a : rg.arcs)
    if (a.cat == ArcCategory::InterLayer) {
      CHECK(rg.vertices[a.tail].layer + 1 == rg.vertices[a.head].layer);
      CHECK(a.weight == inst.graph.arcs[a.base_arc].weight);
    }
}

TEST_CASE("vertex ids round trip") {
  Instance inst = make_small3();
  ReplicatedGraph rg = build_replicated(inst);
  for (int k = 0; k < 2; ++k) {
    CHECK(rg.vertices[rg.source_id(k)].source);
    CHECK(rg.vertices[rg.sink_id(k)].sink);
    for (int l = 1; l <= 3; ++l)
      for (int v = 0; v < 3; ++v) {
        int id = rg.vertex_id(v, k, l);
        CHECK(rg.vertices[id].base_vertex == v);
        CHECK(rg.vertices[id].agent == k);
        CHECK(rg.vertices[id].layer == l);
        CHECK(rg.is_depot_copy(id) == (v == inst.graph.depot));
      }
  }
}

TEST_CASE("strong connectivity of restricted vertex sets") {
  Instance inst = make_small3();
  ReplicatedGraph rg = build_replicated(inst);
  std::vector<char> keep(rg.num_vertices(), 1);
  CHECK(strongly_connected_within(rg, keep));
  // v03's only deadhead leads to the depot, so deleting the depot copy of
  // an inner layer strands the v03 copy beside it
  keep[rg.vertex_id(inst.graph.depot, 0, 2)] = 0;
  CHECK_FALSE(strongly_connected_within(rg, keep));
  // a last-layer v02 copy is not a cut vertex: the layer keeps an entrance
  // over the second service copy and an exit through v03 and the depot
  keep.assign(rg.num_vertices(), 1);
  const auto& ids = inst.graph.vertex_ids;
  int v02 = static_cast<int>(std::find(ids.begin(), ids.end(), "v02") - ids.begin());
  keep[rg.vertex_id(v02, 0, 3)] = 0;
  CHECK(strongly_connected_within(rg, keep));
}

TEST_CASE("boundary splits arcs around a vertex set") {
  Instance inst = make_small3();
  ReplicatedGraph rg = build_replicated(inst);
  std::vector<int> S = {rg.vertex_id(1, 0, 1), rg.vertex_id(2, 0, 1)};
  Boundary b = boundary(rg, S);
  for (int a : b.delta_plus) CHECK(rg.arcs[a].head >= 0);
  CHECK(!b.delta_plus.empty());
  CHECK(!b.delta_minus.empty());
  // g1 (v02->v03) copy in layer 1 of agent 0 joins the two chosen vertices
  bool found_inner = false;
  for (int a : b.inner)
    if (rg.arcs[a].cat == ArcCategory::IntraLayer && rg.arcs[a].layer == 1)
      found_inner = true;
  CHECK(found_inner);
}

TEST_CASE("components_within groups arc subsets") {
  Instance inst = make_small3();
  ReplicatedGraph rg = build_replicated(inst);
  // two intra arcs in different agent blocks are disconnected
  std::vector<int> arcs;
  for (int a = 0; a < rg.num_arcs(); ++a)
    if (rg.arcs[a].cat == ArcCategory::IntraLayer && rg.arcs[a].layer == 1 &&
        rg.arcs[a].base_arc == 0)
      arcs.push_back(a);
  REQUIRE(arcs.size() == 2);  // one per agent
  auto comps = components_within(rg, arcs);
  CHECK(comps.size() == 2);
}

TEST_CASE("case study fixture replicates to the published scale") {
  Instance inst = make_ktvk();
  CHECK(inst.graph.num_vertices() == 36);
  CHECK(inst.graph.num_arcs() == 54);
  CHECK(inst.graph.service_arcs.size() == 9);
  CHECK(inst.num_agents == 2);
  CHECK(inst.calendar.horizon == 222);
  ReplicatedGraph rg = build_replicated(inst);
  CHECK(rg.num_layers == 10);
  CHECK(rg.num_vertices() == 36 * 2 * 10 + 4);  // 724
}
