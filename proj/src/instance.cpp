#include "rpptu/instance.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace rpptu {

using nlohmann::json;

const std::vector<TimeWindow>& UnavailabilityCalendar::of(int arc) const {
  static const std::vector<TimeWindow> kEmpty;
  if (arc < 0 || arc >= static_cast<int>(windows.size())) return kEmpty;
  return windows[arc];
}

std::size_t UnavailabilityCalendar::total_windows() const {
  std::size_t n = 0;
  for (const auto& w : windows) n += w.size();
  return n;
}

bool is_window_blocked(const UnavailabilityCalendar& cal, int arc, Minutes depart,
                       Minutes weight) {
  const auto& ws = cal.of(arc);
  // first window ending after the departure instant
  auto it = std::upper_bound(ws.begin(), ws.end(), depart,
                             [](Minutes t, const TimeWindow& w) { return t < w.hi; });
  return it != ws.end() && it->lo - weight < depart;
}

Minutes earliest_departure(const UnavailabilityCalendar& cal, int arc, Minutes t,
                           Minutes weight) {
  const auto& ws = cal.of(arc);
  auto it = std::upper_bound(ws.begin(), ws.end(), t,
                             [](Minutes tt, const TimeWindow& w) { return tt < w.hi; });
  // Blocked departure ranges (lo - weight, hi) of consecutive windows may
  // overlap, so keep jumping while the current instant stays blocked.
  while (it != ws.end() && it->lo - weight < t) {
    t = it->hi;
    ++it;
  }
  return t;
}

bool strongly_connected(const BaseGraph& g, const std::vector<int>& arcs) {
  const int n = g.num_vertices();
  if (n == 0) return false;
  std::vector<std::vector<int>> fwd(n), rev(n);
  for (int a : arcs) {
    fwd[g.arcs[a].tail].push_back(g.arcs[a].head);
    rev[g.arcs[a].head].push_back(g.arcs[a].tail);
  }
  auto reaches_all = [n](const std::vector<std::vector<int>>& adj) {
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : adj[v])
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

Instance build_instance(const InstanceSpec& spec) {
  if (spec.num_agents < 1)
    throw ValidationError("num_agents must be >= 1, got " + std::to_string(spec.num_agents));
  if (spec.horizon < 0) throw ValidationError("horizon must be >= 0");
  if (spec.vertices.empty()) throw ValidationError("instance has no vertices");

  Instance inst;
  inst.name = spec.name;
  inst.num_agents = spec.num_agents;
  BaseGraph& g = inst.graph;

  g.vertex_ids = spec.vertices;
  std::sort(g.vertex_ids.begin(), g.vertex_ids.end());
  for (int i = 0; i < static_cast<int>(g.vertex_ids.size()); ++i) {
    if (!g.vertex_index.emplace(g.vertex_ids[i], i).second)
      throw ValidationError("duplicate vertex id '" + g.vertex_ids[i] + "'");
  }

  auto it = g.vertex_index.find(spec.depot);
  if (it == g.vertex_index.end())
    throw ValidationError("depot '" + spec.depot + "' is not a vertex");
  g.depot = it->second;

  std::vector<InstanceSpec::ArcSpec> arcs = spec.arcs;
  std::sort(arcs.begin(), arcs.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });
  for (const auto& a : arcs) {
    auto ti = g.vertex_index.find(a.tail);
    auto hi = g.vertex_index.find(a.head);
    if (ti == g.vertex_index.end())
      throw ValidationError("arc '" + a.id + "' has unknown tail '" + a.tail + "'");
    if (hi == g.vertex_index.end())
      throw ValidationError("arc '" + a.id + "' has unknown head '" + a.head + "'");
    if (ti->second == hi->second)
      throw ValidationError("arc '" + a.id + "' is a self-loop");
    if (a.weight < 1)
      throw ValidationError("arc '" + a.id + "' has weight " + std::to_string(a.weight) +
                            "; real arcs need weight >= 1");
    Arc arc;
    arc.id = a.id;
    arc.tail = ti->second;
    arc.head = hi->second;
    arc.weight = a.weight;
    arc.service = a.service;
    int idx = static_cast<int>(g.arcs.size());
    if (!g.arc_index.emplace(arc.id, idx).second)
      throw ValidationError("duplicate arc id '" + arc.id + "'");
    g.arcs.push_back(arc);
    (arc.service ? g.service_arcs : g.deadhead_arcs).push_back(idx);
  }

  if (g.service_arcs.empty()) throw ValidationError("instance has no service arcs");
  if (!strongly_connected(g, g.deadhead_arcs))
    throw ValidationError("deadhead subgraph is not strongly connected");

  inst.calendar.horizon = spec.horizon;
  inst.calendar.windows.assign(g.arcs.size(), {});
  for (const auto& [arc_id, wins] : spec.windows) {
    auto ai = g.arc_index.find(arc_id);
    if (ai == g.arc_index.end())
      throw ValidationError("windows reference unknown arc '" + arc_id + "'");
    std::vector<TimeWindow> ws = wins;
    std::sort(ws.begin(), ws.end(), [](const TimeWindow& a, const TimeWindow& b) {
      return a.lo != b.lo ? a.lo < b.lo : a.hi < b.hi;
    });
    std::vector<TimeWindow> merged;
    for (const auto& w : ws) {
      if (w.lo < 0 || w.hi <= w.lo)
        throw ValidationError("arc '" + arc_id + "' has a malformed window [" +
                              std::to_string(w.lo) + "," + std::to_string(w.hi) + ")");
      if (w.hi > spec.horizon)
        throw ValidationError("arc '" + arc_id + "' has a window ending at " +
                              std::to_string(w.hi) + " past horizon " +
                              std::to_string(spec.horizon));
      if (!merged.empty() && w.lo < merged.back().hi)
        throw ValidationError("arc '" + arc_id + "' has overlapping windows");
      if (!merged.empty() && w.lo == merged.back().hi)
        merged.back().hi = w.hi;  // touching intervals merge
      else
        merged.push_back(w);
    }
    inst.calendar.windows[ai->second] = std::move(merged);
  }
  return inst;
}

namespace {

InstanceSpec spec_from_json(const json& j) {
  InstanceSpec spec;
  try {
    spec.name = j.value("name", "");
    spec.num_agents = j.at("num_agents").get<int>();
    spec.horizon = j.at("horizon").get<Minutes>();
    spec.depot = j.at("depot").get<std::string>();
    spec.vertices = j.at("vertices").get<std::vector<std::string>>();
    for (const auto& a : j.at("arcs")) {
      InstanceSpec::ArcSpec as;
      as.id = a.at("id").get<std::string>();
      as.tail = a.at("tail").get<std::string>();
      as.head = a.at("head").get<std::string>();
      as.weight = a.at("weight").get<Minutes>();
      as.service = a.at("service").get<bool>();
      spec.arcs.push_back(std::move(as));
    }
    if (j.contains("windows")) {
      for (const auto& [arc_id, wins] : j.at("windows").items()) {
        std::vector<TimeWindow> ws;
        for (const auto& w : wins) {
          if (!w.is_array() || w.size() != 2)
            throw ParseError("window of arc '" + arc_id + "' is not a [lo, hi] pair");
          ws.push_back({w[0].get<Minutes>(), w[1].get<Minutes>()});
        }
        spec.windows[arc_id] = std::move(ws);
      }
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed instance json: ") + e.what());
  }
  return spec;
}

json instance_json(const Instance& inst) {
  const BaseGraph& g = inst.graph;
  json j;
  j["name"] = inst.name;
  j["num_agents"] = inst.num_agents;
  j["horizon"] = inst.calendar.horizon;
  j["depot"] = g.vertex_ids[g.depot];
  j["vertices"] = g.vertex_ids;
  json arcs = json::array();
  for (const Arc& a : g.arcs) {
    arcs.push_back({{"id", a.id},
                    {"tail", g.vertex_ids[a.tail]},
                    {"head", g.vertex_ids[a.head]},
                    {"weight", a.weight},
                    {"service", a.service}});
  }
  j["arcs"] = arcs;
  json wins = json::object();
  for (int a = 0; a < g.num_arcs(); ++a) {
    if (inst.calendar.windows[a].empty()) continue;
    json lst = json::array();
    for (const TimeWindow& w : inst.calendar.windows[a]) lst.push_back({w.lo, w.hi});
    wins[g.arcs[a].id] = lst;
  }
  j["windows"] = wins;
  return j;
}

}  // namespace

Instance instance_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid json: ") + e.what());
  }
  return build_instance(spec_from_json(j));
}

std::string instance_to_json(const Instance& inst) {
  return instance_json(inst).dump(2) + "\n";
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return instance_from_json(ss.str());
}

void save_instance(const Instance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << instance_to_json(inst);
}

}  // namespace rpptu
