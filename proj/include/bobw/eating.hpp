#pragma once

#include <optional>
#include <vector>

#include "bobw/allocation.hpp"
#include "bobw/instance.hpp"

namespace bobw {

// Strict rankings for every agent. Goods with index >= real_m are dummies,
// always ranked last, in index order.
struct OrdinalProfile {
  int n = 0;
  int m = 0;
  int real_m = 0;
  std::vector<std::vector<int>> rankings;
};

OrdinalProfile ordinal_profile(const Instance& inst);
OrdinalProfile padded(const OrdinalProfile& p, int target_m);

enum class Padding {
  None,
  ToAgents,            // m < n gets n - m dummies
  ToMultipleOfAgents,  // m rounded up to a multiple of n (full runs)
};

struct Segment {
  int good;
  Rational start, end;
  bool operator==(const Segment&) const = default;
};

struct EatingTrace {
  int n = 0;
  int m = 0;       // including dummies
  int real_m = 0;
  Rational duration;
  std::vector<std::vector<Segment>> segments;
};

EatingTrace run_eating(const OrdinalProfile& profile, const Rational& duration);
EatingTrace run_eating(const Instance& inst, const Rational& duration, Padding pad = Padding::None);

struct TraceSummary {
  Matrix X;
  std::vector<int> last_goods;
  GoodSet L;
  GoodSet U;
  std::vector<Rational> eaten;
  Rational last_mass;     // sum of X over agents and goods in L
  std::optional<long> k;  // last_mass when integral
};

TraceSummary summarize(const EatingTrace& trace);

// Consumption up to time z in [0, duration].
Matrix prefix_allocation(const EatingTrace& trace, const Rational& z);

// Sorted distinct segment boundaries, 0 and duration included.
std::vector<Rational> event_times(const EatingTrace& trace);

// Drops dummy columns.
Matrix strip_dummies(const Matrix& x, int real_m);

}  // namespace bobw
