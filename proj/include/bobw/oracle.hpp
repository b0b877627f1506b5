#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "bobw/allocation.hpp"
#include "bobw/charity.hpp"
#include "bobw/instance.hpp"
#include "bobw/rng.hpp"

namespace bobw {

// All complete EFX allocations, sorted. Capped at n^m <= 10^7.
std::vector<IntegralAllocation> enumerate_efx(const Instance& inst);

// One linear constraint sum_l coeffs[l] * alpha_l + constant >= 0.
struct LinearConstraint {
  std::vector<Rational> coeffs;
  Rational constant;
  std::string origin;  // human-readable source for original constraints
};

struct FeasibilityResult {
  bool feasible = false;
  std::vector<Rational> weights;               // feasible: mixture weights
  std::vector<LinearConstraint> system;        // the original constraints
  // Infeasible: nonnegative multipliers over `system` whose combination has all
  // coefficients zero and a negative constant.
  std::vector<Rational> farkas_multipliers;
  Rational contradiction;                      // that negative constant
};

inline constexpr std::size_t kMaxFmSupports = 12;
inline constexpr std::size_t kMaxFmConstraints = 200000;

// Is there a mixture of `supports` that is sd-EF under `rankings`? Exact
// Fourier-Motzkin elimination in ascending variable order.
FeasibilityResult sdef_feasibility(const std::vector<IntegralAllocation>& supports,
                                   const std::vector<std::vector<int>>& rankings, int m);

// Evaluates a certificate: returns the combined constraint.
LinearConstraint combine(const std::vector<LinearConstraint>& system, const std::vector<Rational>& multipliers);

struct CharityLeaf {
  Rational prob;
  SwapTrace trace;
  IntegralAllocation final_alloc;  // after bounded charity for algorithm 4
};

struct CharityDistribution {
  std::vector<CharityLeaf> leaves;
  RandomizedAllocation merged;
};

// Every branch of the uniform draw of k_r, explored depth first in ascending
// agent order. algorithm == 4 post-processes each leaf with bounded charity.
CharityDistribution exact_distribution_charity(const Instance& inst, int algorithm, std::size_t leaf_cap,
                                               long step_cap = -1);

struct Estimate {
  double mean = 0;
  double stderr_ = 0;
  double ci_low = 0;   // mean - 3 stderr
  double ci_high = 0;  // mean + 3 stderr
  std::size_t samples = 0;
};

using Sampler = std::function<IntegralAllocation(SplitMix64&)>;
using Statistic = std::function<double(const IntegralAllocation&)>;

// Run r uses SplitMix64(derive_seed(seed, r)). N >= 1000.
Estimate estimate(const Sampler& sampler, const Statistic& statistic, std::size_t n_samples, std::uint64_t seed);

struct RatioEstimate {
  int i = -1, j = -1;
  double own_mean = 0, other_mean = 0;
  double ratio = 0;   // own / other (infinity when other is 0)
  double sigma = 0;   // delta-method standard error of the ratio
};

// Per ordered pair ratio of sample means E[v_i(X_i)] / E[v_i(X_j)].
std::vector<RatioEstimate> estimate_ratios(const Instance& inst, const Sampler& sampler, std::size_t n_samples,
                                           std::uint64_t seed);

}  // namespace bobw
