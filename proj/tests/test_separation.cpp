#include <doctest.h>

#include <algorithm>

#include "crafted.hpp"
#include "rpptu/separation.hpp"

using namespace rpptu;
using rpptu_test::crafted_instance;
using rpptu_test::crafted_point;

namespace {

EnumerationOptions crafted_opts() {
  EnumerationOptions o;
  o.arc_limit = 60;    // the crafted instance replicates to 54 arcs
  o.intra_cap = 1;     // multiplicity one keeps the cloud exact yet small
  o.max_points = 1000000;
  return o;
}

int intra_arc(const ReplicatedGraph& rg, const std::string& base, int k, int l) {
  for (int a = 0; a < rg.num_arcs(); ++a) {
    const RepArc& ra = rg.arcs[a];
    if (ra.cat == ArcCategory::IntraLayer && ra.agent == k && ra.layer == l &&
        rg.inst->graph.arcs[ra.base_arc].id == base)
      return a;
  }
  return -1;
}

}  // namespace

TEST_CASE("half-integral two-copy pattern separates one cut") {
  Instance inst = crafted_instance();
  ReplicatedGraph rg = build_replicated(inst);
  std::vector<double> x = crafted_point(rg);

  std::vector<Cut> cuts = find_cuts(rg, x, {});
  REQUIRE(cuts.size() == 1);
  const Cut& cut = cuts[0];
  CHECK(cut.service_arc == 0);  // sA
  CHECK(cut.agent == 0);
  CHECK(cut.rhs == 1.0);

  // S is exactly the connecting pair {u,w} in agent 0, layer 2
  REQUIRE(cut.vertex_set.size() == 2);
  std::vector<std::string> names;
  for (int v : cut.vertex_set) names.push_back(rg.vertex_name(v));
  std::sort(names.begin(), names.end());
  CHECK(names[0] == "u_k0_l2");
  CHECK(names[1] == "w_k0_l2");

  // exits of S plus the outside copies of sA: w->z deadhead, the second
  // in-set copy of sA, and both copies of the other agent
  REQUIRE(cut.coeffs.size() == 4);
  auto has = [&cut](int a) {
    return std::any_of(cut.coeffs.begin(), cut.coeffs.end(),
                       [a](const auto& t) { return t.first == a; });
  };
  CHECK(has(intra_arc(rg, "g3", 0, 2)));
  CHECK(has(rg.copies_of[0][1]));  // agent 0, layer 2
  CHECK(has(rg.copies_of[0][2]));  // agent 1, layer 1
  CHECK(has(rg.copies_of[0][3]));  // agent 1, layer 2
  CHECK(cut_lhs(cut, x) == doctest::Approx(0.5));

  // the pool suppresses re-emission of the same (service, set) pair
  CHECK(find_cuts(rg, x, cuts).empty());
}

TEST_CASE("integral points never separate") {
  Instance inst = crafted_instance();
  ReplicatedGraph rg = build_replicated(inst);
  auto family = construct_lemma1_family(rg);
  for (std::size_t i = 0; i < family.size(); i += 5) {
    std::vector<double> x(family[i].begin(), family[i].end());
    CHECK(find_cuts(rg, x, {}).empty());
  }
}

TEST_CASE("emitted cut survives the brute-force validity scan") {
  Instance inst = crafted_instance();
  ReplicatedGraph rg = build_replicated(inst);
  std::vector<double> x = crafted_point(rg);
  std::vector<Cut> cuts = find_cuts(rg, x, {});
  REQUIRE(cuts.size() == 1);
  CutCheck chk = check_cut_validity(rg, cuts[0], crafted_opts());
  CHECK(chk.valid);
  CHECK_FALSE(chk.witness_found);
}

TEST_CASE("emitted cut is a facet of the relaxed polyhedron") {
  Instance inst = crafted_instance();
  ReplicatedGraph rg = build_replicated(inst);
  std::vector<double> x = crafted_point(rg);
  std::vector<Cut> cuts = find_cuts(rg, x, {});
  REQUIRE(cuts.size() == 1);
  PointCloud cloud = enumerate_cgf_points(rg, crafted_opts());
  REQUIRE_FALSE(cloud.truncated);
  FacetReport rep = verify_facet(rg, cuts[0], cloud);
  CHECK(rep.valid);
  CHECK(rep.dim == 26);  // 54 arcs - 28 vertices
  CHECK(rep.tight_dim == 25);
  CHECK(rep.facet);
  CHECK(rep.tight_points > 0);
}

TEST_CASE("bogus single-copy requirement is refuted by a witness") {
  Instance inst = crafted_instance();
  ReplicatedGraph rg = build_replicated(inst);
  Cut bogus;
  bogus.service_arc = 0;
  bogus.agent = 0;
  bogus.coeffs = {{rg.copies_of[0][0], 1.0}};  // "always serve sA here"
  bogus.rhs = 1.0;
  CutCheck chk = check_cut_validity(rg, bogus, crafted_opts());
  CHECK_FALSE(chk.valid);
  CHECK(chk.witness_found);
  REQUIRE(static_cast<int>(chk.witness.size()) == rg.num_arcs());
  double lhs = 0.0;
  for (auto [a, c] : bogus.coeffs) lhs += c * chk.witness[a];
  CHECK(lhs < bogus.rhs);
}

TEST_CASE("validity scan refuses a truncated cloud") {
  Instance inst = crafted_instance();
  ReplicatedGraph rg = build_replicated(inst);
  std::vector<double> x = crafted_point(rg);
  std::vector<Cut> cuts = find_cuts(rg, x, {});
  REQUIRE(cuts.size() == 1);
  EnumerationOptions tiny = crafted_opts();
  tiny.max_points = 10;  // there are 105 walk skeletons
  CHECK_THROWS_AS(check_cut_validity(rg, cuts[0], tiny), LimitError);
}
