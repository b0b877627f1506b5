#pragma once

// Random instance generators and brute-force oracles shared by the unit tests
// and the acceptance runner. The oracles deliberately avoid the library's own
// fast paths so they can catch its mistakes.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "bobw/allocation.hpp"
#include "bobw/instance.hpp"
#include "bobw/rng.hpp"

namespace bobw::testing {

inline std::vector<int> random_permutation(SplitMix64& rng, int m) {
  std::vector<int> p(m);
  std::iota(p.begin(), p.end(), 0);
  for (int k = m - 1; k > 0; --k) std::swap(p[k], p[rng.uniform_below(std::uint64_t(k + 1))]);
  return p;
}

inline Instance random_lex_instance(SplitMix64& rng, int n, int m) {
  Instance inst;
  inst.n = n;
  inst.m = m;
  for (int i = 0; i < n; ++i) inst.valuations.push_back(Valuation::lexicographic(random_permutation(rng, m)));
  return inst;
}

// Monotone table: v(S) = max over g in S of v(S \ g), plus a random bump.
inline Instance random_monotone_instance(SplitMix64& rng, int n, int m, int max_bump = 4) {
  Instance inst;
  inst.n = n;
  inst.m = m;
  for (int i = 0; i < n; ++i) {
    std::vector<std::int64_t> t(std::size_t{1} << m, 0);
    for (std::uint64_t s = 1; s < t.size(); ++s) {
      std::int64_t base = 0;
      for (int g = 0; g < m; ++g)
        if (s >> g & 1) base = std::max(base, t[s ^ (std::uint64_t{1} << g)]);
      t[s] = base + static_cast<std::int64_t>(rng.uniform_below(std::uint64_t(max_bump + 1)));
    }
    inst.valuations.push_back(Valuation::table_of(std::move(t)));
  }
  return inst;
}

// Subadditive table: maximum of a few additive functions (XOS).
inline Instance random_subadditive_instance(SplitMix64& rng, int n, int m, int clauses = 2, int max_value = 6) {
  Instance inst;
  inst.n = n;
  inst.m = m;
  for (int i = 0; i < n; ++i) {
    std::vector<std::vector<std::int64_t>> add(clauses, std::vector<std::int64_t>(m));
    for (auto& c : add)
      for (auto& x : c) x = static_cast<std::int64_t>(rng.uniform_below(std::uint64_t(max_value + 1)));
    std::vector<std::int64_t> t(std::size_t{1} << m, 0);
    for (std::uint64_t s = 1; s < t.size(); ++s)
      for (const auto& c : add) {
        std::int64_t sum = 0;
        for (int g = 0; g < m; ++g)
          if (s >> g & 1) sum += c[g];
        t[s] = std::max(t[s], sum);
      }
    inst.valuations.push_back(Valuation::table_of(std::move(t), true));
  }
  return inst;
}

// Convex combination of random partial matchings: rows sum to 1, columns <= 1.
inline Matrix random_substochastic(SplitMix64& rng, int n, int m, int terms) {
  Matrix x = zero_matrix(n, m);
  std::vector<long> w(terms);
  long total = 0;
  for (auto& v : w) total += (v = 1 + static_cast<long>(rng.uniform_below(std::uint64_t{9})));
  for (int t = 0; t < terms; ++t) {
    auto cols = random_permutation(rng, m);
    for (int i = 0; i < n; ++i) x[i][cols[i]] += make_rational(w[t], total);
  }
  return x;
}

// Entries in [0,1] with integral column sums: average of 0/1 matrices with
// fixed column degrees.
inline Matrix random_integral_columns(SplitMix64& rng, int n, int m, int terms, const std::vector<int>& degree) {
  Matrix x = zero_matrix(n, m);
  for (int t = 0; t < terms; ++t)
    for (int j = 0; j < m; ++j) {
      auto rows = random_permutation(rng, n);
      for (int r = 0; r < degree[j]; ++r) x[rows[r]][j] += make_rational(1, terms);
    }
  return x;
}

// Every complete allocation of m goods to n agents.
template <class F>
void for_each_allocation(int n, int m, F&& f) {
  std::vector<int> owner(m, 0);
  for (;;) {
    IntegralAllocation a = IntegralAllocation::empty(n);
    for (int g = 0; g < m; ++g) a.bundles[owner[g]].push_back(g);
    f(a);
    int g = 0;
    while (g < m && ++owner[g] == n) owner[g++] = 0;
    if (g == m) return;
  }
}

// Definitional Pareto optimality by enumerating every complete allocation.
inline bool brute_force_pareto_optimal(const Instance& inst, const IntegralAllocation& a) {
  std::vector<Rational> base;
  for (int i = 0; i < inst.n; ++i) base.push_back(value_of(inst, i, a.bundles[i]));
  bool dominated = false;
  for_each_allocation(inst.n, inst.m, [&](const IntegralAllocation& b) {
    if (dominated) return;
    bool weak = true, strict = false;
    for (int i = 0; i < inst.n && weak; ++i) {
      Rational v = value_of(inst, i, b.bundles[i]);
      if (v < base[i]) weak = false;
      if (v > base[i]) strict = true;
    }
    dominated = weak && strict;
  });
  return !dominated;
}

// EFX straight from the definition with value_of.
inline bool brute_force_efx(const Instance& inst, const IntegralAllocation& a) {
  for (int i = 0; i < inst.n; ++i)
    for (int j = 0; j < inst.n; ++j) {
      if (i == j) continue;
      for (int g : a.bundles[j]) {
        GoodSet rest;
        for (int h : a.bundles[j])
          if (h != g) rest.push_back(h);
        if (value_of(inst, i, a.bundles[i]) < value_of(inst, i, rest)) return false;
      }
    }
  return true;
}

// Lexicographic EFX characterization: every envied bundle is a singleton.
inline bool envied_bundles_are_singletons(const Instance& inst, const IntegralAllocation& a) {
  for (int j = 0; j < inst.n; ++j) {
    bool envied = false;
    for (int i = 0; i < inst.n; ++i)
      if (i != j && value_of(inst, i, a.bundles[i]) < value_of(inst, i, a.bundles[j])) envied = true;
    if (envied && a.bundles[j].size() != 1) return false;
  }
  return true;
}

// All inclusion-minimal envied subsets of `pool`, by enumeration.
inline std::vector<GoodSet> brute_force_minimal_envied(const Instance& inst, const IntegralAllocation& a,
                                                      const GoodSet& pool) {
  const std::size_t k = pool.size();
  auto envied = [&](std::uint64_t mask) {
    GoodSet s;
    for (std::size_t t = 0; t < k; ++t)
      if (mask >> t & 1) s.push_back(pool[t]);
    for (int h = 0; h < inst.n; ++h)
      if (value_of(inst, h, a.bundles[h]) < value_of(inst, h, s)) return true;
    return false;
  };
  std::vector<GoodSet> out;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); ++mask) {
    if (!envied(mask)) continue;
    bool minimal = true;
    for (std::size_t t = 0; t < k && minimal; ++t)
      if ((mask >> t & 1) && envied(mask ^ (std::uint64_t{1} << t))) minimal = false;
    if (!minimal) continue;
    GoodSet s;
    for (std::size_t t = 0; t < k; ++t)
      if (mask >> t & 1) s.push_back(pool[t]);
    out.push_back(s);
  }
  return out;
}

}  // namespace bobw::testing
