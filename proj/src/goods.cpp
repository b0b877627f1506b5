#include "bobw/goods.hpp"

#include <algorithm>
#include <bit>

namespace bobw {

GoodSet normalized(GoodSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

bool contains(const GoodSet& s, int g) { return std::binary_search(s.begin(), s.end(), g); }

GoodSet set_union(const GoodSet& a, const GoodSet& b) {
  GoodSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

GoodSet set_minus(const GoodSet& a, const GoodSet& b) {
  GoodSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

GoodSet with(const GoodSet& s, int g) { return set_union(s, GoodSet{g}); }

GoodSet without(const GoodSet& s, int g) { return set_minus(s, GoodSet{g}); }

GoodSet range_set(int m) {
  GoodSet s(m);
  for (int g = 0; g < m; ++g) s[g] = g;
  return s;
}

std::uint64_t to_mask(const GoodSet& s) {
  std::uint64_t mask = 0;
  for (int g : s) mask |= std::uint64_t{1} << g;
  return mask;
}

GoodSet from_mask(std::uint64_t mask) {
  GoodSet s;
  while (mask) {
    s.push_back(std::countr_zero(mask));
    mask &= mask - 1;
  }
  return s;
}

}  // namespace bobw
