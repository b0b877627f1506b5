#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bobw/allocation.hpp"
#include "bobw/eating.hpp"
#include "bobw/rounding.hpp"

namespace bobw {

using PickingSequence = std::vector<int>;

IntegralAllocation run_picking_sequence(const OrdinalProfile& p, const PickingSequence& seq);
IntegralAllocation run_picking_sequence(const Instance& inst, const PickingSequence& seq);

// Every good index >= real_m is removed from bundles and pool.
IntegralAllocation strip_dummy_goods(IntegralAllocation a, int real_m);

// Throws PreconditionError unless every agent has lexicographic preferences.
void require_lexicographic(const Instance& inst);

struct UtseRun {
  EatingTrace trace;
  TraceSummary summary;
  Decomposition decomposition;
  RandomizedAllocation distribution;
  bool padded = false;
};

// Two-stage eating then BvN (UTSE). A pinned decomposition must reconstruct the eating matrix.
UtseRun utse_run(const Instance& inst, const Decomposition* pinned = nullptr);
RandomizedAllocation utse(const Instance& inst);

// Dependent rounding for k = 2. The eating run and super-good matrix are built once.
class DepRoundK2Sampler {
 public:
  explicit DepRoundK2Sampler(const Instance& inst);

  struct Draw {
    IntegralAllocation alloc;
    int a = -1;  // super-good holder kept on its last good
    int b = -1;  // super-good holder taking the rest of L and U
  };

  Draw draw(SplitMix64& rng) const;
  IntegralAllocation sample(SplitMix64& rng) const { return draw(rng).alloc; }

  const TraceSummary& summary() const { return summary_; }
  const SuperGoodMatrix& supergood() const { return super_; }

 private:
  int n_ = 0, m_ = 0;
  TraceSummary summary_;
  SuperGoodMatrix super_;
  Matrix combined_;
  GoodSet leftovers_;  // L union U
};

IntegralAllocation depround_k2_sample(const Instance& inst, std::uint64_t seed);

RandomizedAllocation uniform_permutation_exact(const Instance& inst);
IntegralAllocation uniform_permutation_sample(const Instance& inst, std::uint64_t seed);
IntegralAllocation uniform_permutation_sample(const OrdinalProfile& p, SplitMix64& rng);

// sigma then tail; every tail agent must be unenvied after the sigma phase.
PickingSequence sigma_unenvied_sequence(const Instance& inst, const std::vector<int>& sigma,
                                        const std::vector<int>& tail);

struct LexBobwResult {
  std::string algorithm;  // "utse" or "depround-k2"
  std::optional<long> k;
  std::optional<RandomizedAllocation> distribution;
  std::optional<IntegralAllocation> sample;
};

// k = 2 goes to dependent rounding (needs a seed), everything else to UTSE.
LexBobwResult solve_lex_bobw(const Instance& inst, std::optional<std::uint64_t> seed);

// Full-run Probabilistic Serial decomposed over per-round representatives, so
// each term is a round-robin style picking outcome.
struct PsBaseline {
  EatingTrace trace;             // padded to a multiple of n goods
  Matrix X;                      // n x padded m
  Decomposition decomposition;   // of the padded m x m representative matrix
  RandomizedAllocation distribution;  // dummies stripped
};

PsBaseline ps_baseline(const Instance& inst);

}  // namespace bobw
