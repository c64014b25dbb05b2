#include "rpptu/exactrank.hpp"

#include <gmpxx.h>

#include <cstdlib>
#include <numeric>
#include <stdexcept>

namespace rpptu {

namespace {

using i64 = std::int64_t;
using i128 = __int128;

constexpr i64 kMax = INT64_MAX;

// row <- row*a - pivot*b, returns false if any entry leaves int64 range
bool combine_i64(std::vector<i64>& row, const std::vector<i64>& pivot, i64 a, i64 b) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    i128 v = static_cast<i128>(row[i]) * a - static_cast<i128>(pivot[i]) * b;
    if (v > kMax || v < -kMax) return false;
    row[i] = static_cast<i64>(v);
  }
  return true;
}

void normalize_i64(std::vector<i64>& row) {
  i64 g = 0;
  for (i64 v : row) g = std::gcd(g, v < 0 ? -v : v);
  if (g > 1)
    for (i64& v : row) v /= g;
}

void normalize_mpz(std::vector<mpz_class>& row) {
  mpz_class g = 0;
  for (const mpz_class& v : row) g = gcd(g, v);
  if (g > 1)
    for (mpz_class& v : row) v /= g;
}

}  // namespace

struct RationalRankAccumulator::Impl {
  int dim;
  bool wide = false;  // promoted to arbitrary precision
  std::vector<int> pivot_col;
  std::vector<std::vector<i64>> rows64;
  std::vector<std::vector<mpz_class>> rowsz;

  void promote() {
    if (wide) return;
    wide = true;
    rowsz.reserve(rows64.size());
    for (const std::vector<i64>& r : rows64) {
      std::vector<mpz_class> z(r.size());
      for (std::size_t i = 0; i < r.size(); ++i) z[i] = static_cast<long>(r[i]);
      rowsz.push_back(std::move(z));
    }
    rows64.clear();
  }

  bool add_narrow(std::vector<i64> row) {
    for (std::size_t p = 0; p < pivot_col.size(); ++p) {
      int c = pivot_col[p];
      if (row[c] == 0) continue;
      i64 a = rows64[p][c], b = row[c];
      i64 g = std::gcd(a < 0 ? -a : a, b < 0 ? -b : b);
      if (!combine_i64(row, rows64[p], a / g, b / g)) return false;
    }
    int lead = -1;
    for (int c = 0; c < dim; ++c)
      if (row[c] != 0) {
        lead = c;
        break;
      }
    if (lead < 0) return true;  // dependent, handled by caller via rank delta
    normalize_i64(row);
    pivot_col.push_back(lead);
    rows64.push_back(std::move(row));
    return true;
  }

  bool add_wide(const std::vector<i64>& input) {
    std::vector<mpz_class> row(input.size());
    for (std::size_t i = 0; i < input.size(); ++i)
      row[i] = static_cast<long>(input[i]);
    for (std::size_t p = 0; p < pivot_col.size(); ++p) {
      int c = pivot_col[p];
      if (row[c] == 0) continue;
      mpz_class a = rowsz[p][c], b = row[c];
      mpz_class g = gcd(a, b);
      a /= g;
      b /= g;
      for (int i = 0; i < dim; ++i) row[i] = row[i] * a - rowsz[p][i] * b;
    }
    int lead = -1;
    for (int c = 0; c < dim; ++c)
      if (row[c] != 0) {
        lead = c;
        break;
      }
    if (lead < 0) return false;
    normalize_mpz(row);
    pivot_col.push_back(lead);
    rowsz.push_back(std::move(row));
    return true;
  }
};

RationalRankAccumulator::RationalRankAccumulator(int dim) : impl_(new Impl) {
  impl_->dim = dim;
}
RationalRankAccumulator::~RationalRankAccumulator() = default;
RationalRankAccumulator::RationalRankAccumulator(RationalRankAccumulator&&) noexcept = default;
RationalRankAccumulator& RationalRankAccumulator::operator=(RationalRankAccumulator&&) noexcept =
    default;

bool RationalRankAccumulator::add_row(const std::vector<i64>& row) {
  if (static_cast<int>(row.size()) != impl_->dim)
    throw std::invalid_argument("rank accumulator row has wrong dimension");
  if (!impl_->wide) {
    std::size_t before = impl_->pivot_col.size();
    if (impl_->add_narrow(row)) return impl_->pivot_col.size() > before;
    impl_->promote();
  }
  return impl_->add_wide(row);
}

int RationalRankAccumulator::rank() const {
  return static_cast<int>(impl_->pivot_col.size());
}

int RationalRankAccumulator::dim() const { return impl_->dim; }

int exact_rank(const std::vector<std::vector<i64>>& rows, int dim) {
  RationalRankAccumulator acc(dim);
  for (const std::vector<i64>& r : rows) acc.add_row(r);
  return acc.rank();
}

}  // namespace rpptu
