#include <doctest.h>

#include <cmath>
#include <random>

#include "rpptu/lp.hpp"

using namespace rpptu;

namespace {

// Feasibility of a result against the problem it came from.
void check_feasible(const LpProblem& p, const LpResult& r) {
  REQUIRE(r.x.size() == static_cast<std::size_t>(p.num_cols));
  for (int j = 0; j < p.num_cols; ++j) {
    CHECK(r.x[j] >= p.lower[j] - kEpsFeas);
    CHECK(r.x[j] <= p.upper[j] + kEpsFeas);
  }
  double obj = p.cost_offset;
  for (int j = 0; j < p.num_cols; ++j) obj += p.cost[j] * r.x[j];
  CHECK(std::abs(obj - r.objective) < 1e-6);
  for (const auto& row : p.rows) {
    double lhs = 0.0;
    for (auto [j, c] : row.coeffs) lhs += c * r.x[j];
    if (row.rel == '=') CHECK(std::abs(lhs - row.rhs) < 1e-6);
    if (row.rel == '<') CHECK(lhs <= row.rhs + 1e-6);
    if (row.rel == '>') CHECK(lhs >= row.rhs - 1e-6);
  }
}

}  // namespace

TEST_CASE("two variable minimum") {
  LpProblem p;
  int x = p.add_col(1.0, 0, kInf);
  int y = p.add_col(2.0, 0, kInf);
  p.add_row('>', 4.0, {{x, 1.0}, {y, 1.0}});
  p.add_row('>', 3.0, {{x, 0.0}, {y, 1.0}});
  LpResult r = solve_lp(p);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.objective == doctest::Approx(7.0));  // x=1, y=3
  check_feasible(p, r);
}

TEST_CASE("upper bounds bind") {
  LpProblem p;
  int x = p.add_col(-1.0, 0, 2.5);
  int y = p.add_col(-1.0, 0, 1.5);
  p.add_row('<', 3.0, {{x, 1.0}, {y, 1.0}});
  LpResult r = solve_lp(p);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.objective == doctest::Approx(-3.0));
  check_feasible(p, r);
}

TEST_CASE("equality rows and negative lower bounds") {
  LpProblem p;
  int x = p.add_col(1.0, -5, 5);
  int y = p.add_col(3.0, -5, 5);
  p.add_row('=', 2.0, {{x, 1.0}, {y, 1.0}});
  LpResult r = solve_lp(p);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.objective == doctest::Approx(-4.0));  // x=5, y=-3
  check_feasible(p, r);
}

TEST_CASE("free column like the finish estimate") {
  LpProblem p;
  int g = p.add_col(1.0, 0, kInf);
  int x = p.add_col(0.0, 0, 1);
  p.add_row('>', 7.0, {{g, 1.0}, {x, -3.0}});
  p.add_row('=', 1.0, {{x, 1.0}});
  LpResult r = solve_lp(p);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.objective == doctest::Approx(10.0));
  check_feasible(p, r);
}

TEST_CASE("infeasible system yields a checkable certificate") {
  LpProblem p;
  int x = p.add_col(1.0, 0, 1);
  int y = p.add_col(1.0, 0, 1);
  p.add_row('>', 3.0, {{x, 1.0}, {y, 1.0}});
  LpResult r = solve_lp(p);
  REQUIRE(r.status == LpStatus::Infeasible);
  CHECK(r.infeasibility > kEpsFeas);
  CHECK(check_infeasibility_certificate(p, r));
}

TEST_CASE("conflicting equalities are infeasible") {
  LpProblem p;
  int x = p.add_col(0.0, -kInf, kInf);
  p.add_row('=', 1.0, {{x, 1.0}});
  p.add_row('=', 2.0, {{x, 1.0}});
  LpResult r = solve_lp(p);
  REQUIRE(r.status == LpStatus::Infeasible);
  CHECK(check_infeasibility_certificate(p, r));
}

TEST_CASE("unbounded direction detected") {
  LpProblem p;
  int x = p.add_col(-1.0, 0, kInf);
  int y = p.add_col(0.0, 0, 1);
  p.add_row('>', 0.0, {{x, 1.0}, {y, 1.0}});
  LpResult r = solve_lp(p);
  CHECK(r.status == LpStatus::Unbounded);
}

TEST_CASE("degenerate corner still terminates") {
  LpProblem p;
  int x = p.add_col(1.0, 0, kInf);
  int y = p.add_col(1.0, 0, kInf);
  int z = p.add_col(1.0, 0, kInf);
  p.add_row('>', 0.0, {{x, 1.0}, {y, -1.0}});
  p.add_row('>', 0.0, {{y, 1.0}, {z, -1.0}});
  p.add_row('>', 0.0, {{z, 1.0}, {x, -1.0}});
  p.add_row('>', 1.0, {{x, 1.0}, {y, 1.0}, {z, 1.0}});
  LpResult r = solve_lp(p);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.objective == doctest::Approx(1.0));
  check_feasible(p, r);
}

TEST_CASE("random transportation problems match greedy lower bounds") {
  // min sum c_ij x_ij with row/col sums fixed: optimal objective must lie
  // between the LP bound of any feasible point and the trivial cost bound.
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 3, m = 4;
    LpProblem p;
    std::vector<std::vector<int>> col(n, std::vector<int>(m));
    double cmin = 1e9, cmax = -1e9;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j) {
        double c = static_cast<double>(rng() % 9 + 1);
        col[i][j] = p.add_col(c, 0, kInf);
        cmin = std::min(cmin, c);
        cmax = std::max(cmax, c);
      }
    for (int i = 0; i < n; ++i) {
      std::vector<std::pair<int, double>> row;
      for (int j = 0; j < m; ++j) row.push_back({col[i][j], 1.0});
      p.add_row('=', 4.0, row);
    }
    for (int j = 0; j < m; ++j) {
      std::vector<std::pair<int, double>> row;
      for (int i = 0; i < n; ++i) row.push_back({col[i][j], 1.0});
      p.add_row('=', 3.0, row);
    }
    LpResult r = solve_lp(p);
    REQUIRE(r.status == LpStatus::Optimal);
    check_feasible(p, r);
    CHECK(r.objective >= 12 * cmin - 1e-6);
    CHECK(r.objective <= 12 * cmax + 1e-6);
  }
}

TEST_CASE("integrality report ranks most fractional first") {
  std::vector<double> x = {1.0, 0.4, 0.9, 0.5, 0.0};
  IntegralityReport rep = integrality(x, {0, 1, 2, 3, 4});
  CHECK_FALSE(rep.integral);
  REQUIRE(rep.fractional.size() == 3);
  CHECK(rep.fractional[0] == 3);  // 0.5 first
  CHECK(rep.fractional[1] == 1);
  CHECK(rep.fractional[2] == 2);
  CHECK(integrality(x, {0, 4}).integral);
}

TEST_CASE("lp format dump includes rows and bounds") {
  LpProblem p;
  p.add_col(1.0, 0, 2, "a");
  p.add_col(-1.0, 0, kInf, "b");
  p.add_row('>', 1.0, {{0, 1.0}, {1, 2.0}});
  std::string text = to_lp_format(p);
  CHECK(text.find("Minimize") != std::string::npos);
  CHECK(text.find("Subject To") != std::string::npos);
  CHECK(text.find("a") != std::string::npos);
}
