#pragma once

#include <cstdint>
#include <memory>
#include <vector>

namespace rpptu {

// Incremental exact rank of a growing set of integer rows. Reduction is
// fraction-free (cross-multiplication plus gcd normalization), done in int64
// while the numbers fit and promoted to arbitrary precision on overflow.
class RationalRankAccumulator {
 public:
  explicit RationalRankAccumulator(int dim);
  ~RationalRankAccumulator();
  RationalRankAccumulator(RationalRankAccumulator&&) noexcept;
  RationalRankAccumulator& operator=(RationalRankAccumulator&&) noexcept;

  // Returns true when the row was independent of everything seen so far.
  bool add_row(const std::vector<std::int64_t>& row);
  int rank() const;
  int dim() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// One-shot convenience.
int exact_rank(const std::vector<std::vector<std::int64_t>>& rows, int dim);

}  // namespace rpptu
