#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bobw/allocation.hpp"
#include "bobw/instance.hpp"
#include "bobw/rng.hpp"

namespace bobw {

// Canonical inclusion-minimal subset of `candidate` envied by some agent:
// ascending-index greedy removal, repeated until no single removal stays envied.
std::optional<GoodSet> minimal_envied_subset(const Valuer& v, const IntegralAllocation& a, const GoodSet& candidate);
std::optional<GoodSet> minimal_envied_subset(const Instance& inst, const IntegralAllocation& a, const GoodSet& candidate);

struct SwapStep {
  GoodSet Q;
  std::vector<int> H;  // agents strictly envying Q, ascending
  int k = -1;          // chosen agent, a member of H
};

struct SwapTrace {
  std::vector<SwapStep> steps;
  IntegralAllocation final_alloc;
};

// Q and H for the next swap, or nullopt when nobody envies the pool.
std::optional<SwapStep> next_swap(const Valuer& v, const IntegralAllocation& a);
// k takes Q; its old bundle and P \ Q form the new pool.
void apply_swap(IntegralAllocation& a, const GoodSet& q, int k);

// Random charity swap: pick k uniformly from H each round.
SwapTrace random_charity_swap(const Instance& inst, std::uint64_t seed);
SwapTrace random_charity_swap(const Valuer& v, SplitMix64& rng);

// Replays from the empty allocation, checking every recorded step.
IntegralAllocation replay_swap_trace(const Instance& inst, const SwapTrace& trace);

// Rotate bundles along envy cycles until the envy graph is acyclic.
IntegralAllocation resolve_envy_cycles(const Instance& inst, const IntegralAllocation& a);
IntegralAllocation resolve_envy_cycles(const Valuer& v, IntegralAllocation a, int* rotations = nullptr);

enum class CharityPhase { PoolSwap, CycleRotation, Commit, Exchange };

struct CharityStep {
  CharityPhase phase;
  Rational welfare;  // sum of utilities after the step
  std::size_t pool_size = 0;
};

struct BoundedCharityRun {
  IntegralAllocation alloc;
  std::vector<CharityStep> steps;
};

long default_step_cap(const Instance& inst);

// EFX-with-charity start state in, EFX-with-bounded-charity out.
BoundedCharityRun bounded_charity_run(const Instance& inst, const IntegralAllocation& start, long step_cap);
IntegralAllocation bounded_charity(const Instance& inst, const IntegralAllocation& start, long step_cap);

// Integer-valued monotone valuations; throws PreconditionError otherwise.
void require_charity_instance(const Instance& inst);

std::string phase_name(CharityPhase p);

}  // namespace bobw
