#pragma once

#include <cstdint>
#include <vector>

namespace bobw {

// Sorted, duplicate-free list of good indices.
using GoodSet = std::vector<int>;

GoodSet normalized(GoodSet s);
bool contains(const GoodSet& s, int g);
GoodSet set_union(const GoodSet& a, const GoodSet& b);
GoodSet set_minus(const GoodSet& a, const GoodSet& b);
GoodSet with(const GoodSet& s, int g);
GoodSet without(const GoodSet& s, int g);
GoodSet range_set(int m);

std::uint64_t to_mask(const GoodSet& s);
GoodSet from_mask(std::uint64_t mask);

}  // namespace bobw
