#include "rpptu/lp.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace rpptu {

int LpProblem::add_col(double c, double lo, double hi, std::string name) {
  cost.push_back(c);
  lower.push_back(lo);
  upper.push_back(hi);
  if (!name.empty() || !col_names.empty()) {
    col_names.resize(cost.size());
    col_names.back() = std::move(name);
  }
  return num_cols++;
}

void LpProblem::add_row(char rel, double rhs, std::vector<std::pair<int, double>> coeffs) {
  rows.push_back({std::move(coeffs), rel, rhs});
}

namespace {

constexpr double kPrimalTol = 1e-9;
constexpr double kDualTol = 1e-9;
constexpr double kPivotTol = 1e-10;

// Internal variables: 0..n-1 structural, n..n+m-1 row slacks.
// System: A x - s = 0 with s_i ranging over the row's feasible activity.
struct Simplex {
  const LpProblem& p;
  int n, m, total;
  std::vector<std::vector<std::pair<int, double>>> cols;  // sparse, structural only
  std::vector<double> lo, up;

  std::vector<int> basis;        // size m, variable ids
  std::vector<int> pos_in_basis; // -1 if nonbasic
  std::vector<double> value;     // current value of every variable
  std::vector<double> binv;      // m*m row-major
  int pivots_since_factor = 0;
  int degenerate_streak = 0;
  bool bland = false;
  long long iterations = 0;
  long long iteration_limit;

  explicit Simplex(const LpProblem& prob) : p(prob) {
    n = p.num_cols;
    m = static_cast<int>(p.rows.size());
    total = n + m;
    iteration_limit = 20000 + 200LL * total;
    cols.assign(n, {});
    for (int i = 0; i < m; ++i)
      for (auto [j, a] : p.rows[i].coeffs)
        if (a != 0.0) cols[j].push_back({i, a});
    lo.resize(total);
    up.resize(total);
    for (int j = 0; j < n; ++j) {
      lo[j] = p.lower[j];
      up[j] = p.upper[j];
    }
    for (int i = 0; i < m; ++i) {
      switch (p.rows[i].rel) {
        case '=': lo[n + i] = up[n + i] = p.rows[i].rhs; break;
        case '<': lo[n + i] = -kInf; up[n + i] = p.rows[i].rhs; break;
        case '>': lo[n + i] = p.rows[i].rhs; up[n + i] = kInf; break;
        default: throw std::runtime_error("bad row relation");
      }
    }
    value.assign(total, 0.0);
    for (int j = 0; j < total; ++j) value[j] = start_value(j);
    basis.resize(m);
    pos_in_basis.assign(total, -1);
    for (int i = 0; i < m; ++i) {
      basis[i] = n + i;
      pos_in_basis[n + i] = i;
    }
    binv.assign(static_cast<std::size_t>(m) * m, 0.0);
    for (int i = 0; i < m; ++i) binv[static_cast<std::size_t>(i) * m + i] = -1.0;
    recompute_basics();
  }

  double start_value(int j) const {
    if (lo[j] > -kInf) return lo[j];
    if (up[j] < kInf) return up[j];
    return 0.0;
  }

  // column of the full system for variable j (structural: A_j, slack i: -e_i)
  void scatter_col(int j, std::vector<double>& dense) const {
    std::fill(dense.begin(), dense.end(), 0.0);
    if (j < n)
      for (auto [i, a] : cols[j]) dense[i] = a;
    else
      dense[j - n] = -1.0;
  }

  void ftran(const std::vector<double>& col, std::vector<double>& out) const {
    for (int i = 0; i < m; ++i) {
      double s = 0.0;
      const double* row = &binv[static_cast<std::size_t>(i) * m];
      for (int k = 0; k < m; ++k) s += row[k] * col[k];
      out[i] = s;
    }
  }

  // y^T = sigma^T B^-1 for a dense row vector sigma over basis positions
  void btran(const std::vector<double>& sigma, std::vector<double>& y) const {
    std::fill(y.begin(), y.end(), 0.0);
    for (int i = 0; i < m; ++i) {
      double s = sigma[i];
      if (s == 0.0) continue;
      const double* row = &binv[static_cast<std::size_t>(i) * m];
      for (int k = 0; k < m; ++k) y[k] += s * row[k];
    }
  }

  double dot_col(int j, const std::vector<double>& y) const {
    if (j < n) {
      double s = 0.0;
      for (auto [i, a] : cols[j]) s += y[i] * a;
      return s;
    }
    return -y[j - n];
  }

  void recompute_basics() {
    // x_B = -B^-1 (N x_N)
    std::vector<double> r(m, 0.0);
    for (int j = 0; j < total; ++j) {
      if (pos_in_basis[j] >= 0) continue;
      double v = value[j];
      if (v == 0.0) continue;
      if (j < n)
        for (auto [i, a] : cols[j]) r[i] += a * v;
      else
        r[j - n] -= v;
    }
    std::vector<double> xb(m);
    ftran(r, xb);
    for (int i = 0; i < m; ++i) value[basis[i]] = -xb[i];
  }

  void refactor() {
    // Gauss-Jordan inverse of the current basis matrix
    std::vector<double> a(static_cast<std::size_t>(m) * m, 0.0);
    std::vector<double> e(static_cast<std::size_t>(m) * m, 0.0);
    std::vector<double> dense(m);
    for (int c = 0; c < m; ++c) {
      scatter_col(basis[c], dense);
      for (int i = 0; i < m; ++i) a[static_cast<std::size_t>(i) * m + c] = dense[i];
      e[static_cast<std::size_t>(c) * m + c] = 1.0;
    }
    for (int c = 0; c < m; ++c) {
      int piv = -1;
      double best = kPivotTol;
      for (int i = c; i < m; ++i) {
        double v = std::fabs(a[static_cast<std::size_t>(i) * m + c]);
        if (v > best) {
          best = v;
          piv = i;
        }
      }
      if (piv < 0) throw std::runtime_error("singular basis during refactorization");
      if (piv != c) {
        for (int k = 0; k < m; ++k) {
          std::swap(a[static_cast<std::size_t>(piv) * m + k],
                    a[static_cast<std::size_t>(c) * m + k]);
          std::swap(e[static_cast<std::size_t>(piv) * m + k],
                    e[static_cast<std::size_t>(c) * m + k]);
        }
      }
      double d = a[static_cast<std::size_t>(c) * m + c];
      for (int k = 0; k < m; ++k) {
        a[static_cast<std::size_t>(c) * m + k] /= d;
        e[static_cast<std::size_t>(c) * m + k] /= d;
      }
      for (int i = 0; i < m; ++i) {
        if (i == c) continue;
        double f = a[static_cast<std::size_t>(i) * m + c];
        if (f == 0.0) continue;
        for (int k = 0; k < m; ++k) {
          a[static_cast<std::size_t>(i) * m + k] -= f * a[static_cast<std::size_t>(c) * m + k];
          e[static_cast<std::size_t>(i) * m + k] -= f * e[static_cast<std::size_t>(c) * m + k];
        }
      }
    }
    binv = std::move(e);
    pivots_since_factor = 0;
    recompute_basics();
  }

  // sigma for phase 1: direction pushing each infeasible basic toward its bound
  double phase1_sigma(std::vector<double>& sigma) const {
    double infeas = 0.0;
    for (int i = 0; i < m; ++i) {
      double v = value[basis[i]];
      double l = lo[basis[i]], u = up[basis[i]];
      if (v < l - kPrimalTol) {
        sigma[i] = -1.0;
        infeas += l - v;
      } else if (v > u + kPrimalTol) {
        sigma[i] = 1.0;
        infeas += v - u;
      } else {
        sigma[i] = 0.0;
      }
    }
    return infeas;
  }

  struct Pricing {
    int var = -1;
    int dir = 0;  // +1 increase, -1 decrease
    double score = 0.0;
  };

  Pricing price(const std::vector<double>& y, bool phase1) {
    Pricing best;
    for (int j = 0; j < total; ++j) {
      if (pos_in_basis[j] >= 0) continue;
      if (lo[j] == up[j]) continue;  // fixed
      double cj = (phase1 || j >= n) ? 0.0 : p.cost[j];
      double d = cj - dot_col(j, y);
      bool at_lo = lo[j] > -kInf && value[j] <= lo[j] + kPrimalTol;
      bool at_up = up[j] < kInf && value[j] >= up[j] - kPrimalTol;
      int dir = 0;
      double score = 0.0;
      if (d < -kDualTol && (at_lo || (!at_lo && !at_up))) {
        dir = 1;
        score = -d;
      } else if (d > kDualTol && (at_up || (!at_lo && !at_up))) {
        dir = -1;
        score = d;
      } else {
        continue;
      }
      if (bland) {
        if (best.var < 0) best = {j, dir, score};
      } else if (score > best.score + 1e-12 ||
                 (score > best.score - 1e-12 && (best.var < 0 || j < best.var))) {
        best = {j, dir, score};
      }
    }
    return best;
  }

  struct Ratio {
    double t = kInf;
    int leave_pos = -1;   // basis position, -1 means bound flip of entering
    double leave_to = 0;  // bound the leaving variable lands on
    bool flip = false;
  };

  Ratio ratio_test(int enter, int dir, const std::vector<double>& w, bool phase1) {
    Ratio r;
    double range = up[enter] - lo[enter];
    if (range < kInf) {
      r.t = range;
      r.flip = true;
    }
    double best_piv = 0.0;
    for (int i = 0; i < m; ++i) {
      int b = basis[i];
      double rate = -dir * w[i];  // d value[b] / dt
      if (std::fabs(rate) <= kPivotTol) continue;
      double v = value[b];
      double cand = kInf, land = 0.0;
      bool below = v < lo[b] - kPrimalTol, above = v > up[b] + kPrimalTol;
      if (phase1 && below) {
        if (rate > 0) {
          cand = (lo[b] - v) / rate;
          land = lo[b];
        }
      } else if (phase1 && above) {
        if (rate < 0) {
          cand = (v - up[b]) / (-rate);
          land = up[b];
        }
      } else {
        if (rate < 0 && lo[b] > -kInf) {
          cand = (v - lo[b]) / (-rate);
          land = lo[b];
        } else if (rate > 0 && up[b] < kInf) {
          cand = (up[b] - v) / rate;
          land = up[b];
        }
      }
      if (cand == kInf) continue;
      if (cand < -kPrimalTol) cand = 0.0;
      if (cand < 0) cand = 0.0;
      bool take;
      if (cand < r.t - 1e-12) {
        take = true;
      } else if (cand <= r.t + 1e-12 && r.leave_pos >= 0) {
        if (bland)
          take = basis[i] < basis[r.leave_pos];
        else
          take = std::fabs(w[i]) > best_piv + 1e-12;
      } else if (cand <= r.t + 1e-12 && r.flip) {
        take = true;  // prefer a real pivot over a flip at equal step
      } else {
        take = false;
      }
      if (take) {
        r.t = std::min(r.t, cand);
        r.leave_pos = i;
        r.leave_to = land;
        r.flip = false;
        best_piv = std::fabs(w[i]);
      }
    }
    return r;
  }

  void apply_step(int enter, int dir, double t, const std::vector<double>& w) {
    if (t != 0.0) {
      for (int i = 0; i < m; ++i) value[basis[i]] += -dir * t * w[i];
      value[enter] += dir * t;
    }
  }

  void pivot(int enter, int leave_pos, double leave_to, const std::vector<double>& w) {
    int leave = basis[leave_pos];
    value[leave] = leave_to;
    pos_in_basis[leave] = -1;
    basis[leave_pos] = enter;
    pos_in_basis[enter] = leave_pos;
    double piv = w[leave_pos];
    if (std::fabs(piv) < kPivotTol) throw std::runtime_error("pivot too small");
    double* prow = &binv[static_cast<std::size_t>(leave_pos) * m];
    for (int k = 0; k < m; ++k) prow[k] /= piv;
    for (int i = 0; i < m; ++i) {
      if (i == leave_pos) continue;
      double f = w[i];
      if (f == 0.0) continue;
      double* row = &binv[static_cast<std::size_t>(i) * m];
      for (int k = 0; k < m; ++k) row[k] -= f * prow[k];
    }
    if (++pivots_since_factor >= 128) refactor();
  }

  // Returns remaining infeasibility (phase 1) or 0 once optimal (phase 2).
  // status_out: 0 done, 1 infeasible (phase 1), 2 unbounded (phase 2)
  int run(bool phase1, std::vector<double>& y_out) {
    std::vector<double> sigma(m), y(m), col(m), w(m);
    for (;;) {
      if (++iterations > iteration_limit)
        throw std::runtime_error("simplex iteration limit exceeded");
      if (phase1) {
        double infeas = phase1_sigma(sigma);
        if (infeas <= kPrimalTol * (1 + m)) return 0;
        btran(sigma, y);
      } else {
        for (int i = 0; i < m; ++i) sigma[i] = basis[i] < n ? p.cost[basis[i]] : 0.0;
        btran(sigma, y);
      }
      Pricing pr = price(y, phase1);
      if (pr.var < 0) {
        y_out = y;
        return phase1 ? 1 : 0;
      }
      scatter_col(pr.var, col);
      ftran(col, w);
      Ratio rt = ratio_test(pr.var, pr.dir, w, phase1);
      if (rt.t == kInf) {
        if (phase1) throw std::runtime_error("phase-1 descent unbounded");
        return 2;
      }
      if (rt.t <= 1e-12) {
        if (++degenerate_streak > 2 * total) bland = true;
      } else {
        degenerate_streak = 0;
        bland = false;
      }
      apply_step(pr.var, pr.dir, rt.t, w);
      if (rt.flip) continue;
      pivot(pr.var, rt.leave_pos, rt.leave_to, w);
    }
  }
};

}  // namespace

LpResult solve_lp(const LpProblem& p) {
  for (int j = 0; j < p.num_cols; ++j)
    if (p.lower[j] > p.upper[j] + kPrimalTol) {
      LpResult r;
      r.status = LpStatus::Infeasible;
      r.infeasibility = p.lower[j] - p.upper[j];
      return r;
    }

  Simplex s(p);
  LpResult res;
  std::vector<double> y;
  int st = s.run(true, y);
  res.iterations = static_cast<int>(s.iterations);
  if (st == 1) {
    res.status = LpStatus::Infeasible;
    std::vector<double> sigma(s.m);
    res.infeasibility = s.phase1_sigma(sigma);
    // phase-1 optimality gives max over the box of y.(Ax - s) = -infeas < 0;
    // store -y so the certificate reads "box minimum of y.(Ax - s) > 0"
    for (double& v : y) v = -v;
    res.farkas_y = y;
    return res;
  }
  st = s.run(false, y);
  res.iterations = static_cast<int>(s.iterations);
  if (st == 2) {
    res.status = LpStatus::Unbounded;
    return res;
  }
  res.status = LpStatus::Optimal;
  res.x.assign(p.num_cols, 0.0);
  double obj = p.cost_offset;
  for (int j = 0; j < p.num_cols; ++j) {
    double v = s.value[j];
    if (p.lower[j] > -kInf) v = std::max(v, p.lower[j]);
    if (p.upper[j] < kInf) v = std::min(v, p.upper[j]);
    if (std::fabs(v) < 1e-11) v = 0.0;
    res.x[j] = v;
    obj += p.cost[j] * v;
  }
  res.objective = obj;
  return res;
}

bool check_infeasibility_certificate(const LpProblem& p, const LpResult& r) {
  if (r.status != LpStatus::Infeasible) return false;
  if (r.farkas_y.empty()) return r.infeasibility > kEpsFeas;  // trivial bound clash
  const std::vector<double>& y = r.farkas_y;
  if (static_cast<int>(y.size()) != static_cast<int>(p.rows.size())) return false;
  // Every feasible (x, s) satisfies y^T (A x - s) = 0; show the box minimum of
  // that expression is strictly positive.
  double lo_sum = 0.0;
  std::vector<double> red(p.num_cols, 0.0);
  for (int i = 0; i < static_cast<int>(p.rows.size()); ++i)
    for (auto [j, a] : p.rows[i].coeffs) red[j] += y[i] * a;
  for (int j = 0; j < p.num_cols; ++j) {
    double c = red[j];
    if (std::fabs(c) <= 1e-9) continue;
    if (c > 0) {
      if (p.lower[j] <= -kInf) return false;
      lo_sum += c * p.lower[j];
    } else {
      if (p.upper[j] >= kInf) return false;
      lo_sum += c * p.upper[j];
    }
  }
  for (int i = 0; i < static_cast<int>(p.rows.size()); ++i) {
    double c = -y[i];
    if (std::fabs(c) <= 1e-9) continue;
    double slo, sup;
    switch (p.rows[i].rel) {
      case '=': slo = sup = p.rows[i].rhs; break;
      case '<': slo = -kInf; sup = p.rows[i].rhs; break;
      default: slo = p.rows[i].rhs; sup = kInf; break;
    }
    if (c > 0) {
      if (slo <= -kInf) return false;
      lo_sum += c * slo;
    } else {
      if (sup >= kInf) return false;
      lo_sum += c * sup;
    }
  }
  return lo_sum > kEpsFeas;
}

IntegralityReport integrality(const std::vector<double>& x,
                              const std::vector<int>& cols, double tol) {
  IntegralityReport rep;
  std::vector<std::pair<double, int>> fr;
  for (int j : cols) {
    double f = std::fabs(x[j] - std::llround(x[j]));
    if (f > tol) fr.push_back({f, j});
  }
  std::sort(fr.begin(), fr.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });
  rep.integral = fr.empty();
  for (auto& [f, j] : fr) rep.fractional.push_back(j);
  return rep;
}

std::string to_lp_format(const LpProblem& p) {
  auto name = [&p](int j) {
    if (j < static_cast<int>(p.col_names.size()) && !p.col_names[j].empty())
      return p.col_names[j];
    return "x" + std::to_string(j);
  };
  std::ostringstream os;
  os << "Minimize\n obj:";
  bool any = false;
  for (int j = 0; j < p.num_cols; ++j) {
    if (p.cost[j] == 0.0) continue;
    os << (p.cost[j] >= 0 && any ? " + " : " ") << p.cost[j] << " " << name(j);
    any = true;
  }
  if (!any) os << " 0 " << name(0);
  os << "\nSubject To\n";
  for (int i = 0; i < static_cast<int>(p.rows.size()); ++i) {
    os << " r" << i << ":";
    for (auto [j, a] : p.rows[i].coeffs) {
      if (a >= 0)
        os << " + " << a << " " << name(j);
      else
        os << " - " << -a << " " << name(j);
    }
    const char* rel = p.rows[i].rel == '=' ? "=" : (p.rows[i].rel == '<' ? "<=" : ">=");
    os << " " << rel << " " << p.rows[i].rhs << "\n";
  }
  os << "Bounds\n";
  for (int j = 0; j < p.num_cols; ++j) {
    if (p.lower[j] == p.upper[j]) {
      os << " " << name(j) << " = " << p.lower[j] << "\n";
    } else if (p.lower[j] <= -kInf && p.upper[j] >= kInf) {
      os << " " << name(j) << " free\n";
    } else if (p.upper[j] >= kInf) {
      os << " " << name(j) << " >= " << p.lower[j] << "\n";
    } else {
      os << " " << p.lower[j] << " <= " << name(j) << " <= " << p.upper[j] << "\n";
    }
  }
  os << "End\n";
  return os.str();
}

}  // namespace rpptu
