#pragma once

#include <cstdint>
#include <vector>

#include "bobw/allocation.hpp"
#include "bobw/eating.hpp"
#include "bobw/rng.hpp"

namespace bobw {

// One zero-one term: row i is matched to column column_of_row[i].
struct DecompositionTerm {
  Rational weight;
  std::vector<int> column_of_row;
};

struct Decomposition {
  int rows = 0;
  int cols = 0;
  std::vector<DecompositionTerm> terms;
};

// Rows must sum to 1 and columns to at most 1.
Decomposition bvn_decompose(const Matrix& x);

Matrix reconstruct(const Decomposition& d);
// Throws PreconditionError unless d is a valid decomposition of x.
void require_decomposes(const Decomposition& d, const Matrix& x);

using BinaryMatrix = std::vector<std::vector<std::uint8_t>>;

// Pipage rounding on the bipartite rows/columns graph. Column sums of x must be
// integers; every integral row and column sum is preserved in each sample.
BinaryMatrix dependent_round(const Matrix& x, SplitMix64& rng);
BinaryMatrix dependent_round(const Matrix& x, std::uint64_t seed);

struct SuperGoodMatrix {
  Matrix base;                     // n x |base_goods|
  std::vector<int> base_goods;     // fully eaten goods outside L
  std::vector<Rational> super_column;
  long k = 0;

  Matrix combined() const;  // base with the super column appended last
};

SuperGoodMatrix build_supergood_matrix(const TraceSummary& summary);

}  // namespace bobw
