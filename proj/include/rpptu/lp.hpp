#ifndef RPPTU_LP_HPP
#define RPPTU_LP_HPP

#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace rpptu {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
// Shared tolerances: primal feasibility, objective comparisons, integrality.
inline constexpr double kEpsFeas = 1e-7;
inline constexpr double kEpsObj = 1e-6;
inline constexpr double kEpsInt = 1e-6;

struct LpRow {
  std::vector<std::pair<int, double>> coeffs;
  char rel = '=';  // '=', '<', '>'
  double rhs = 0.0;
};

struct LpProblem {
  int num_cols = 0;
  std::vector<double> cost;
  std::vector<double> lower, upper;
  std::vector<LpRow> rows;
  std::vector<std::string> col_names;  // optional, for dumps
  double cost_offset = 0.0;

  int add_col(double c, double lo, double hi, std::string name = {});
  void add_row(char rel, double rhs, std::vector<std::pair<int, double>> coeffs);
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Optimal;
  double objective = 0.0;  // includes cost_offset
  std::vector<double> x;
  int iterations = 0;
  // Phase-1 leftovers on Infeasible: positive optimum and the price vector
  // proving it (see check_infeasibility_certificate).
  double infeasibility = 0.0;
  std::vector<double> farkas_y;
};

/// Bounded-variable revised simplex, deterministic for identical input.
LpResult solve_lp(const LpProblem& p);

/// Re-derives the infeasibility claim from the recorded price vector.
bool check_infeasibility_certificate(const LpProblem& p, const LpResult& r);

struct IntegralityReport {
  bool integral = true;
  std::vector<int> fractional;  // most fractional first, ties by column id
};
IntegralityReport integrality(const std::vector<double>& x,
                              const std::vector<int>& cols, double tol = kEpsInt);

std::string to_lp_format(const LpProblem& p);

}  // namespace rpptu

#endif
