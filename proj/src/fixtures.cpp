#include "rpptu/fixtures.hpp"

#include <algorithm>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

namespace rpptu {
namespace {

constexpr Minutes kPeriod = 74;
constexpr int kRepeats = 3;  // horizon = 3 periods = 222 minutes

std::string vtx(int i) {
  char buf[8];
  std::snprintf(buf, sizeof(buf), "v%02d", i);
  return buf;
}

// One physical track section: every arc sharing the section is blocked while
// a train occupies it.
struct Section {
  std::vector<std::string> arcs;
  Minutes weight;
};

void add_train(InstanceSpec& spec, const std::vector<Section>& sections,
               Minutes offset) {
  for (int rep = 0; rep < kRepeats; ++rep) {
    Minutes t = offset + kPeriod * rep;
    for (const auto& s : sections) {
      Minutes lo = t;
      Minutes hi = std::min<Minutes>(lo + s.weight, spec.horizon);
      if (lo < hi)
        for (const auto& id : s.arcs) spec.windows[id].push_back({lo, hi});
      t += s.weight;
    }
  }
}

// Engineering possession: a set of arcs closed for a fixed interval of every
// period (other crews hold the track; no trains, no inspection vehicles).
void add_possession(InstanceSpec& spec, const std::vector<std::string>& arcs,
                    Minutes lo, Minutes hi) {
  for (int rep = 0; rep < kRepeats; ++rep) {
    Minutes a = lo + kPeriod * rep;
    Minutes b = std::min<Minutes>(hi + kPeriod * rep, spec.horizon);
    if (a < b)
      for (const auto& id : arcs) spec.windows[id].push_back({a, b});
  }
}

// Trains of different services can occupy a section back to back or at the
// same time; the track is simply closed for the union of those intervals.
void coalesce_windows(InstanceSpec& spec) {
  for (auto& [id, wins] : spec.windows) {
    std::sort(wins.begin(), wins.end(),
              [](const TimeWindow& a, const TimeWindow& b) {
                return a.lo != b.lo ? a.lo < b.lo : a.hi < b.hi;
              });
    std::vector<TimeWindow> merged;
    for (const auto& w : wins) {
      if (!merged.empty() && w.lo <= merged.back().hi)
        merged.back().hi = std::max(merged.back().hi, w.hi);
      else
        merged.push_back(w);
    }
    wins = std::move(merged);
  }
}

}  // namespace

Instance make_ktvk() {
  InstanceSpec spec;
  spec.name = "ktvk";
  spec.num_agents = 2;
  spec.horizon = kPeriod * kRepeats;
  for (int i = 1; i <= 36; ++i) spec.vertices.push_back(vtx(i));
  spec.depot = vtx(1);

  // Four terminals: Kurla (v01, the depot), the junction (v02), Thane (v03)
  // and Vashi (v04). One-way running lines. Thane-Vashi and Vashi-Kurla each
  // split into two parallel single-track branches, so a round trip commits to
  // one branch per leg and a missed branch costs another full circuit.
  struct Line {
    const char* id;
    int tail, head;
    Minutes weight;
  };
  // Weights are inspection-vehicle transit times: brisk on the passenger
  // lines, page-slow on goods and relief tracks with severe speed orders.
  const std::vector<Line> lines = {
      // Kurla-junction all-stops line over the old viaduct, 20 km/h order
      {"c00", 1, 5, 16},
      {"c01", 5, 6, 16},
      {"c02", 6, 2, 16},
      // junction-Thane stopping line
      {"c03", 2, 7, 7},
      {"c04", 7, 8, 8},
      {"c05", 8, 9, 3},
      {"c06", 9, 3, 10},
      // Thane-Vashi harbour viaduct, long blocks
      {"c07", 3, 10, 9},
      {"c08", 10, 11, 8},
      {"c09", 11, 12, 8},
      {"c10", 12, 13, 8},
      {"c11", 13, 4, 7},
      // Thane-Vashi cutoff, three short blocks
      {"c12", 3, 14, 2},
      {"c13", 14, 15, 1},
      {"c14", 15, 4, 1},
      // Vashi-Kurla east corridor
      {"c15", 4, 16, 4},
      {"c16", 16, 17, 4},
      {"c17", 17, 18, 3},
      {"c18", 18, 19, 4},
      {"c19", 19, 20, 4},
      {"c20", 20, 21, 3},
      {"c21", 21, 22, 4},
      {"c22", 22, 23, 4},
      {"c23", 23, 24, 4},
      {"c24", 24, 25, 3},
      {"c25", 25, 26, 3},
      {"c26", 26, 27, 3},
      {"c27", 27, 28, 4},
      {"c28", 28, 29, 4},
      {"c29", 29, 1, 3},
      // Vashi-Kurla west corridor
      {"c30", 4, 30, 4},
      {"c31", 30, 31, 4},
      {"c32", 31, 32, 3},
      {"c33", 32, 33, 3},
      {"c34", 33, 34, 4},
      {"c35", 34, 35, 4},
      {"c36", 35, 36, 3},
      {"c37", 36, 1, 3},
      // express track: Kurla non-stop through Thane onto the first viaduct
      // block, so an express working always continues over the viaduct
      {"x00", 1, 10, 26},
      {"x01", 1, 2, 10},  // skip-stop to the junction
      // goods and relief tracks
      {"y00", 2, 3, 45},  // junction-Thane goods line
      {"y01", 3, 4, 45},  // harbour goods line
      {"y02", 4, 3, 45},  // returning goods line
      {"y03", 1, 2, 45},  // Kurla relief line
      {"y04", 1, 3, 45},  // overnight freight line
  };
  for (const auto& a : lines)
    spec.arcs.push_back({a.id, vtx(a.tail), vtx(a.head), a.weight, false});

  // Nine tracks to inspect, each a service arc parallel to its deadhead twin.
  struct Job {
    const char* id;
    const char* twin;
  };
  const std::vector<Job> jobs = {
      {"s00", "x00"},  // the express track itself
      {"s01", "c17"},  // east corridor, v17-v18
      {"s02", "c21"},  // east corridor, v21-v22
      {"s03", "c26"},  // east corridor, v26-v27
      {"s04", "c08"},  // harbour viaduct, v10-v11
      {"s05", "c10"},  // harbour viaduct, v12-v13
      {"s06", "c11"},  // harbour viaduct, v13-Vashi
      {"s07", "c05"},  // junction-Thane stretch, v08-v09
      {"s08", "c33"},  // west corridor, v32-v33
  };
  for (const auto& j : jobs) {
    const auto twin = *std::find_if(spec.arcs.begin(), spec.arcs.end(),
                                    [&](const auto& a) { return a.id == j.twin; });
    spec.arcs.push_back({j.id, twin.tail, twin.head, twin.weight, true});
  }

  auto section = [&](std::string id, std::vector<std::string> extra = {}) {
    Section s;
    s.weight = std::find_if(lines.begin(), lines.end(),
                            [&](const auto& a) { return id == a.id; })
                   ->weight;
    s.arcs = {std::move(id)};
    for (auto& e : extra) s.arcs.push_back(std::move(e));
    return s;
  };

  // Five local trains sweep the running lines every period (blocking service
  // twins that share their track), staggered so no line is quiet for long.
  add_train(spec,
            {section("c07"), section("c08", {"s04"}), section("c09"),
             section("c10", {"s05"}), section("c11", {"s06"})},
            0);  // harbour local
  add_train(spec, {section("c12"), section("c13"), section("c14")},
            5);  // cutoff shuttle
  add_train(spec,
            {section("c15"), section("c16"), section("c17", {"s01"}),
             section("c18"), section("c19"), section("c20"),
             section("c21", {"s02"}), section("c22"), section("c23"),
             section("c24"), section("c25"), section("c26", {"s03"}),
             section("c27"), section("c28"), section("c29")},
            2);  // east corridor local
  add_train(spec,
            {section("c30"), section("c31"), section("c32"),
             section("c33", {"s08"}), section("c34"), section("c35"),
             section("c36"), section("c37")},
            32);  // west corridor local
  add_train(spec,
            {section("c00"), section("c01"), section("c02"), section("c03"),
             section("c04"), section("c05", {"s07"}), section("c06")},
            46);  // Kurla-Thane all-stops local

  // Per-period engineering possessions on the tracks due for inspection,
  // plus booked freight paths on the relief lines.
  add_possession(spec, {"x00", "s00"}, 0, 12);
  add_possession(spec, {"x00", "s00"}, 40, 52);
  add_possession(spec, {"c05", "s07"}, 2, 40);
  add_possession(spec,
                 {"c07", "c08", "c09", "c10", "c11", "s04", "s05", "s06"}, 24,
                 65);
  add_possession(spec, {"c12", "c13", "c14"}, 30, 55);
  add_possession(spec, {"c17", "s01"}, 62, 92);
  add_possession(spec, {"c21", "s02"}, 74, 109);
  add_possession(spec, {"c26", "s03"}, 89, 130);
  add_possession(spec, {"c33", "s08"}, 74, 111);
  add_possession(spec, {"c00", "c01", "c02"}, 12, 46);
  add_possession(spec, {"x01"}, 10, 22);
  add_possession(spec, {"y00"}, 5, 30);
  add_possession(spec, {"y01"}, 66, 74);
  add_possession(spec, {"y02"}, 0, 45);
  add_possession(spec, {"y03"}, 0, 26);
  add_possession(spec, {"y04"}, 15, 60);

  coalesce_windows(spec);
  return build_instance(spec);
}

std::vector<std::vector<int>> ktvk_reference_orders(const Instance& inst) {
  // positions in the ascending service list, not raw arc ids
  auto service = [&](const char* id) {
    const auto& sv = inst.graph.service_arcs;
    int a = inst.graph.arc_index.at(id);
    return static_cast<int>(std::lower_bound(sv.begin(), sv.end(), a) - sv.begin());
  };
  return {
      {service("s00"), service("s04"), service("s05"), service("s06"), service("s08")},
      {service("s07"), service("s01"), service("s02"), service("s03")},
  };
}

Instance make_small3() {
  InstanceSpec spec;
  spec.name = "small3";
  spec.num_agents = 2;
  spec.horizon = 0;
  spec.vertices = {"v01", "v02", "v03"};
  spec.depot = "v01";
  spec.arcs = {
      {"g0", "v01", "v02", 2, false},
      {"g1", "v02", "v03", 3, false},
      {"g2", "v03", "v01", 4, false},
      {"g3", "v02", "v01", 1, false},
      {"s0", "v01", "v02", 2, true},
      {"s1", "v02", "v03", 3, true},
  };
  return build_instance(spec);
}

}  // namespace rpptu
