#include "bobw/allocation.hpp"

#include <map>
#include <sstream>

#include "bobw/error.hpp"

namespace bobw {

IntegralAllocation IntegralAllocation::empty(int n, int m_pool) {
  IntegralAllocation a;
  a.bundles.assign(n, {});
  a.pool = range_set(m_pool);
  return a;
}

bool IntegralAllocation::is_complete(int m) const {
  if (!pool.empty()) return false;
  std::size_t total = 0;
  for (const auto& b : bundles) total += b.size();
  return static_cast<int>(total) == m;
}

void require_well_formed(const IntegralAllocation& a, int n, int m) {
  if (static_cast<int>(a.bundles.size()) != n)
    throw PreconditionError("allocation has " + std::to_string(a.bundles.size()) + " bundles, expected " +
                            std::to_string(n));
  std::vector<int> seen(m, 0);
  auto mark = [&](const GoodSet& s) {
    for (std::size_t k = 0; k < s.size(); ++k) {
      int g = s[k];
      if (g < 0 || g >= m) throw PreconditionError("good index out of range in allocation");
      if (k > 0 && s[k - 1] >= g) throw PreconditionError("allocation sets must be sorted and duplicate-free");
      if (seen[g]++) throw PreconditionError("good " + std::to_string(g) + " appears twice in allocation");
    }
  };
  for (const auto& b : a.bundles) mark(b);
  mark(a.pool);
}

std::string describe(const IntegralAllocation& a, const Instance* inst) {
  auto set_str = [&](const GoodSet& s) {
    std::string out = "{";
    for (std::size_t k = 0; k < s.size(); ++k) {
      if (k) out += ",";
      out += inst ? good_label(*inst, s[k]) : "g" + std::to_string(s[k] + 1);
    }
    return out + "}";
  };
  std::string out = "(";
  for (std::size_t i = 0; i < a.bundles.size(); ++i) {
    if (i) out += ",";
    out += set_str(a.bundles[i]);
  }
  out += ")";
  if (!a.pool.empty()) out += " pool " + set_str(a.pool);
  return out;
}

Matrix zero_matrix(int rows, int cols) { return Matrix(rows, std::vector<Rational>(cols, Rational(0))); }

std::vector<Rational> row_sums(const Matrix& x) {
  std::vector<Rational> out;
  for (const auto& row : x) {
    Rational s = 0;
    for (const auto& v : row) s += v;
    out.push_back(s);
  }
  return out;
}

std::vector<Rational> column_sums(const Matrix& x) {
  std::vector<Rational> out(x.empty() ? 0 : x[0].size(), Rational(0));
  for (const auto& row : x)
    for (std::size_t j = 0; j < row.size(); ++j) out[j] += row[j];
  return out;
}

RandomizedAllocation::RandomizedAllocation(std::vector<WeightedAllocation> entries) {
  std::map<IntegralAllocation, std::size_t> index;
  Rational total = 0;
  for (auto& e : entries) {
    if (e.prob < 0) throw PreconditionError("negative probability in randomized allocation");
    total += e.prob;
    if (e.prob == 0) continue;
    auto [it, fresh] = index.emplace(e.alloc, support_.size());
    if (fresh)
      support_.push_back(std::move(e));
    else
      support_[it->second].prob += e.prob;
  }
  if (total != 1) throw PreconditionError("support probabilities sum to " + to_string(total) + ", not 1");
}

RandomizedAllocation point_mass(IntegralAllocation a) {
  return RandomizedAllocation({WeightedAllocation{Rational(1), std::move(a)}});
}

Matrix associated_fractional(const RandomizedAllocation& dist, int n, int m) {
  Matrix x = zero_matrix(n, m);
  for (const auto& e : dist.support())
    for (int i = 0; i < n; ++i)
      for (int g : e.alloc.bundles.at(i)) x[i][g] += e.prob;
  return x;
}

Rational expected_value(const Valuer& v, const RandomizedAllocation& dist, int i, int j) {
  Rational total = 0;
  for (const auto& e : dist.support()) total += e.prob * v(i, e.alloc.bundles.at(j));
  return total;
}

}  // namespace bobw
