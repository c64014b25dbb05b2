#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rpptu/bnc.hpp"
#include "rpptu/fixtures.hpp"
#include "rpptu/gen.hpp"
#include "rpptu/instance.hpp"
#include "rpptu/polyhedra.hpp"
#include "rpptu/separation.hpp"
#include "rpptu/spatial.hpp"
#include "rpptu/temporal.hpp"

namespace {

enum LogLevel { kError = 0, kInfo = 1, kDebug = 2, kTrace = 3 };

LogLevel log_level() {
  const char* env = std::getenv("RPPTU_LOG");
  if (!env) return kError;
  std::string v(env);
  if (v == "info") return kInfo;
  if (v == "debug") return kDebug;
  if (v == "trace") return kTrace;
  return kError;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw rpptu::IoError("cannot write " + path);
  out << text;
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty())
    std::cout << text << "\n";
  else
    write_text(out_path, text + "\n");
}

int run_solve(const std::string& path, bool no_cuts, int node_budget,
              double time_budget, bool gantt, const std::string& dump_lp,
              const std::string& dump_rep, bool log_cuts,
              const std::string& out_path) {
  const LogLevel lvl = log_level();
  rpptu::Instance inst = rpptu::load_instance(path);
  rpptu::ReplicatedGraph rg = rpptu::build_replicated(inst);
  if (lvl >= kInfo)
    std::cerr << "instance " << inst.name << ": " << inst.graph.num_vertices()
              << " vertices, " << inst.graph.num_arcs() << " arcs ("
              << inst.graph.service_arcs.size() << " service), "
              << inst.calendar.total_windows() << " windows; replicated "
              << rg.num_vertices() << " x " << rg.num_arcs() << "\n";

  if (!dump_rep.empty()) write_text(dump_rep, rpptu::to_dot(rg));
  if (!dump_lp.empty()) {
    rpptu::SpatialModel root = rpptu::assemble(rg, {}, {});
    write_text(dump_lp, rpptu::to_lp_format(root.lp));
  }

  rpptu::SolveOptions opts;
  opts.use_cuts = !no_cuts;
  opts.node_budget = node_budget;
  opts.time_budget_seconds = time_budget;
  if (log_cuts || lvl >= kDebug)
    opts.on_cut = [&](const rpptu::Cut& c) {
      int base = inst.graph.service_arcs[c.service_arc];
      std::cerr << "cut: service " << inst.graph.arcs[base].id << " agent "
                << c.agent << " |S|=" << c.vertex_set.size() << "\n";
    };

  rpptu::Solution sol = rpptu::solve(inst, opts);
  if (lvl >= kInfo)
    std::cerr << "status " << sol.status << ", objective " << sol.objective
              << ", nodes " << sol.stats.nodes_explored << ", cuts "
              << sol.stats.cuts_added << ", " << sol.stats.wall_seconds
              << "s\n";

  emit(out_path, rpptu::solution_to_json(inst, sol));
  if (gantt && sol.trajectory.status == rpptu::TemporalStatus::Feasible)
    std::cout << rpptu::trajectory_gantt(rg, sol.trajectory);
  return sol.status == "optimal" ? 0 : 2;
}

int run_gen(int vertices, double ratio, double beta, int agents,
            std::uint64_t seed, const std::string& out_path) {
  rpptu::GenConfig cfg;
  cfg.num_vertices = vertices;
  cfg.arc_ratio = ratio;
  cfg.beta = beta;
  cfg.num_agents = agents;
  cfg.seed = seed;
  rpptu::Instance inst = rpptu::generate(cfg);
  if (log_level() >= kInfo)
    std::cerr << inst.name << ": " << inst.graph.num_arcs() << " arcs, "
              << inst.graph.service_arcs.size() << " service, "
              << inst.calendar.total_windows() << " windows\n";
  emit(out_path, rpptu::instance_to_json(inst));
  return 0;
}

int run_verify(const std::string& path, int cap, const std::string& out_path) {
  const LogLevel lvl = log_level();
  rpptu::Instance inst = rpptu::load_instance(path);
  rpptu::ReplicatedGraph rg = rpptu::build_replicated(inst);
  const int expected = rg.num_arcs() - rg.num_vertices();

  rpptu::EnumerationOptions eopts;
  eopts.intra_cap = cap;
  rpptu::PointCloud cloud = rpptu::enumerate_cgf_points(rg, eopts);
  if (lvl >= kInfo)
    std::cerr << "enumerated " << cloud.num_points() << " points, "
              << cloud.rays.size() << " rays"
              << (cloud.truncated ? " (truncated)" : "") << "\n";
  const int dim = rpptu::affine_dimension(cloud);

  const auto family = rpptu::construct_lemma1_family(rg);
  const int family_rank =
      rpptu::affine_rank_of(family, {}, rg.num_arcs(), expected);

  std::vector<rpptu::Cut> cuts;
  rpptu::SolveOptions sopts;
  sopts.on_cut = [&](const rpptu::Cut& c) { cuts.push_back(c); };
  rpptu::solve(inst, sopts);

  bool pass = dim == expected && family_rank == expected;
  nlohmann::json report;
  report["instance"] = inst.name;
  report["dim"] = {{"expected", expected}, {"computed", dim}};
  report["lemma1"] = {{"expected", expected}, {"computed", family_rank}};
  report["cuts"] = nlohmann::json::array();
  for (const auto& cut : cuts) {
    rpptu::CutCheck chk = rpptu::check_cut_validity(rg, cut, eopts);
    rpptu::FacetReport fr = rpptu::verify_facet(rg, cut, cloud);
    pass = pass && chk.valid && fr.facet;
    report["cuts"].push_back({
        {"service_arc", inst.graph.arcs[inst.graph.service_arcs[cut.service_arc]].id},
        {"agent", cut.agent},
        {"set_size", cut.vertex_set.size()},
        {"valid", chk.valid},
        {"facet", fr.facet},
        {"dim", fr.dim},
        {"tight_dim", fr.tight_dim},
    });
  }
  report["pass"] = pass;
  emit(out_path, report.dump(2));
  return pass ? 0 : 2;
}

int run_bench(const std::string& cells_text, int count, std::uint64_t seed,
              const std::string& out_path) {
  std::vector<rpptu::BatchCell> cells;
  std::size_t pos = 0;
  while (pos < cells_text.size()) {
    std::size_t end = cells_text.find(';', pos);
    if (end == std::string::npos) end = cells_text.size();
    std::string part = cells_text.substr(pos, end - pos);
    rpptu::BatchCell cell;
    if (std::sscanf(part.c_str(), "%d:%lf:%lf", &cell.num_vertices,
                    &cell.arc_ratio, &cell.beta) != 3)
      throw rpptu::ParseError("bad cell '" + part + "', expected V:ratio:beta");
    cells.push_back(cell);
    pos = end + 1;
  }
  if (cells.empty()) throw rpptu::ParseError("no benchmark cells given");
  rpptu::SolveOptions opts;
  rpptu::BatchResult res = rpptu::run_batch(cells, count, seed, 2, opts);
  std::string csv = res.csv();
  if (out_path.empty())
    std::cout << csv;
  else
    write_text(out_path, csv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact solver and polyhedral lab for timed arc routing"};
  app.require_subcommand(1);

  std::string in_path, out_path;
  bool no_cuts = false, gantt = false, log_cuts = false;
  int node_budget = 1000;
  double time_budget = std::numeric_limits<double>::infinity();
  std::string dump_lp, dump_rep;
  auto* solve = app.add_subcommand("solve", "solve an instance exactly");
  solve->add_option("instance", in_path, "instance JSON")->required();
  solve->add_flag("--no-cuts", no_cuts, "disable cutting planes");
  solve->add_option("--node-budget", node_budget, "max branched nodes");
  solve->add_option("--time-budget", time_budget, "seconds before reporting a gap");
  solve->add_flag("--gantt", gantt, "print an agent timeline");
  solve->add_option("--dump-lp", dump_lp, "write the root relaxation in LP format");
  solve->add_option("--dump-replicated", dump_rep, "write the replicated graph as DOT");
  solve->add_flag("--log-cuts", log_cuts, "log each pooled cut to stderr");
  solve->add_option("-o,--output", out_path, "solution JSON path (default stdout)");

  int vertices = 20, agents = 2;
  double ratio = 1.2, beta = 0.3;
  std::uint64_t seed = 0;
  auto* gen = app.add_subcommand("gen", "generate a seeded instance");
  gen->add_option("--vertices", vertices, "vertex count");
  gen->add_option("--ratio", ratio, "arcs per vertex");
  gen->add_option("--beta", beta, "service share of arcs");
  gen->add_option("--agents", agents, "agent count");
  gen->add_option("--seed", seed, "RNG seed");
  gen->add_option("-o,--output", out_path, "instance JSON path (default stdout)");

  int cap = 2;
  auto* verify = app.add_subcommand(
      "verify", "dimension, point family and cut checks on a small instance");
  verify->add_option("instance", in_path, "instance JSON")->required();
  verify->add_option("--cap", cap, "deadhead copy bound for enumeration");
  verify->add_option("-o,--output", out_path, "report path (default stdout)");

  std::string cells = "8:1.6:0.5";
  int count = 5;
  auto* bench = app.add_subcommand("bench", "cuts vs no-cuts over seeded batches");
  bench->add_option("--cells", cells, "semicolon list of V:ratio:beta");
  bench->add_option("--count", count, "instances per cell");
  bench->add_option("--seed", seed, "RNG seed");
  bench->add_option("-o,--output", out_path, "CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 64;
  }

  try {
    if (solve->parsed())
      return run_solve(in_path, no_cuts, node_budget, time_budget, gantt,
                       dump_lp, dump_rep, log_cuts, out_path);
    if (gen->parsed())
      return run_gen(vertices, ratio, beta, agents, seed, out_path);
    if (verify->parsed()) return run_verify(in_path, cap, out_path);
    if (bench->parsed()) return run_bench(cells, count, seed, out_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 64;
}
