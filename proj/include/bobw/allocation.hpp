#pragma once

#include <string>
#include <vector>

#include "bobw/goods.hpp"
#include "bobw/instance.hpp"
#include "bobw/rational.hpp"

namespace bobw {

struct IntegralAllocation {
  std::vector<GoodSet> bundles;
  GoodSet pool;

  static IntegralAllocation empty(int n, int m_pool = 0);
  bool is_complete(int m) const;
  bool operator==(const IntegralAllocation&) const = default;
  auto operator<=>(const IntegralAllocation&) const = default;
};

// Throws PreconditionError unless bundles and pool are disjoint subsets of [m].
void require_well_formed(const IntegralAllocation& a, int n, int m);

std::string describe(const IntegralAllocation& a, const Instance* inst = nullptr);

using Matrix = std::vector<std::vector<Rational>>;  // n x m

Matrix zero_matrix(int rows, int cols);
std::vector<Rational> row_sums(const Matrix& x);
std::vector<Rational> column_sums(const Matrix& x);

struct WeightedAllocation {
  Rational prob;
  IntegralAllocation alloc;
};

// Probabilities are positive and sum to exactly 1; duplicate allocations are
// merged (first-occurrence order is kept).
class RandomizedAllocation {
 public:
  RandomizedAllocation() = default;
  explicit RandomizedAllocation(std::vector<WeightedAllocation> entries);

  const std::vector<WeightedAllocation>& support() const { return support_; }
  std::size_t size() const { return support_.size(); }

 private:
  std::vector<WeightedAllocation> support_;
};

RandomizedAllocation point_mass(IntegralAllocation a);

Matrix associated_fractional(const RandomizedAllocation& dist, int n, int m);

// E[v_i(X_j)].
Rational expected_value(const Valuer& v, const RandomizedAllocation& dist, int i, int j);

}  // namespace bobw
