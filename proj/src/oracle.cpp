#include "bobw/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "bobw/audit.hpp"
#include "bobw/error.hpp"

namespace bobw {

std::vector<IntegralAllocation> enumerate_efx(const Instance& inst) {
  require_valid(inst);
  double combos = std::pow(static_cast<double>(inst.n), inst.m);
  if (combos > 1e7) throw ResourceCapError("enumerate_efx: n^m exceeds 10^7 allocations");
  const Valuer v(inst);
  std::vector<int> owner(inst.m, 0);
  std::vector<IntegralAllocation> out;
  for (;;) {
    IntegralAllocation a = IntegralAllocation::empty(inst.n);
    for (int g = 0; g < inst.m; ++g) a.bundles[owner[g]].push_back(g);
    if (check_efx(v, a).pass) out.push_back(std::move(a));
    int g = 0;
    while (g < inst.m && ++owner[g] == inst.n) owner[g++] = 0;
    if (g == inst.m) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

struct Row {
  std::vector<Rational> coeffs;
  Rational constant;
  std::vector<Rational> lambda;  // multipliers over the original system
};

bool all_zero(const std::vector<Rational>& c) {
  return std::all_of(c.begin(), c.end(), [](const Rational& x) { return x == 0; });
}

void scale(Row& r, const Rational& s) {
  for (auto& c : r.coeffs) c *= s;
  r.constant *= s;
  for (auto& l : r.lambda) l *= s;
}

void normalize(Row& r) {
  for (const auto& c : r.coeffs)
    if (c != 0) {
      scale(r, Rational(1 / abs(c)));
      return;
    }
  if (r.constant != 0) scale(r, Rational(1 / abs(r.constant)));
}

}  // namespace

LinearConstraint combine(const std::vector<LinearConstraint>& system, const std::vector<Rational>& multipliers) {
  if (system.empty() || multipliers.size() != system.size())
    throw PreconditionError("combine: one multiplier per constraint required");
  LinearConstraint out;
  out.coeffs.assign(system[0].coeffs.size(), Rational(0));
  out.constant = 0;
  for (std::size_t c = 0; c < system.size(); ++c) {
    if (multipliers[c] < 0) throw PreconditionError("combine: multipliers must be nonnegative");
    for (std::size_t l = 0; l < out.coeffs.size(); ++l) out.coeffs[l] += multipliers[c] * system[c].coeffs[l];
    out.constant += multipliers[c] * system[c].constant;
  }
  out.origin = "combination";
  return out;
}

FeasibilityResult sdef_feasibility(const std::vector<IntegralAllocation>& supports,
                                   const std::vector<std::vector<int>>& rankings, int m) {
  const std::size_t q = supports.size();
  const int n = static_cast<int>(rankings.size());
  if (q == 0) throw PreconditionError("sdef_feasibility: no support allocations");
  if (q > kMaxFmSupports) throw ResourceCapError("sdef_feasibility: more than 12 supports");
  for (const auto& a : supports) require_well_formed(a, n, m);

  FeasibilityResult res;
  auto add = [&](std::vector<Rational> coeffs, Rational constant, std::string origin) {
    res.system.push_back({std::move(coeffs), std::move(constant), std::move(origin)});
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      for (int k = 1; k <= m; ++k) {
        std::vector<Rational> c(q);
        for (std::size_t l = 0; l < q; ++l) {
          long own = 0, other = 0;
          for (int t = 0; t < k; ++t) {
            own += contains(supports[l].bundles[i], rankings[i][t]);
            other += contains(supports[l].bundles[j], rankings[i][t]);
          }
          c[l] = own - other;
        }
        add(std::move(c), 0,
            "agent " + std::to_string(i + 1) + " vs agent " + std::to_string(j + 1) + ", top-" + std::to_string(k) +
                " prefix");
      }
    }
  for (std::size_t l = 0; l < q; ++l) {
    std::vector<Rational> c(q, Rational(0));
    c[l] = 1;
    add(std::move(c), 0, "weight " + std::to_string(l + 1) + " nonnegative");
  }
  add(std::vector<Rational>(q, Rational(1)), -1, "weights sum to at least 1");
  add(std::vector<Rational>(q, Rational(-1)), 1, "weights sum to at most 1");

  const std::size_t originals = res.system.size();
  std::vector<Row> rows;
  for (std::size_t c = 0; c < originals; ++c) {
    Row r{res.system[c].coeffs, res.system[c].constant, std::vector<Rational>(originals, Rational(0))};
    r.lambda[c] = 1;
    rows.push_back(std::move(r));
  }

  // Returns true when a contradiction was found (certificate stored).
  // Chernikov's rule: after eliminating k variables, a row built from more than
  // k + 1 original constraints is implied by the others and can go.
  auto tidy = [&](std::vector<Row>& set, std::size_t max_support) {
    std::vector<Row> kept;
    std::map<std::pair<std::vector<Rational>, Rational>, bool> seen;
    for (auto& r : set) {
      normalize(r);
      const auto support = static_cast<std::size_t>(
          std::count_if(r.lambda.begin(), r.lambda.end(), [](const Rational& l) { return l != 0; }));
      if (all_zero(r.coeffs)) {
        if (r.constant < 0) {
          res.feasible = false;
          res.farkas_multipliers = r.lambda;
          res.contradiction = r.constant;
          return true;
        }
        continue;
      }
      if (support > max_support) continue;
      if (seen.emplace(std::pair{r.coeffs, r.constant}, true).second) kept.push_back(std::move(r));
    }
    set = std::move(kept);
    return false;
  };

  std::vector<std::vector<Row>> stages;
  if (tidy(rows, 1)) return res;
  for (std::size_t var = 0; var < q; ++var) {
    stages.push_back(rows);
    std::vector<Row> pos, neg, next;
    for (auto& r : rows) {
      if (r.coeffs[var] > 0)
        pos.push_back(r);
      else if (r.coeffs[var] < 0)
        neg.push_back(r);
      else
        next.push_back(r);
    }
    if (next.size() + pos.size() * neg.size() > kMaxFmConstraints)
      throw ResourceCapError("sdef_feasibility: Fourier-Motzkin constraint cap exceeded");
    for (const auto& p : pos)
      for (const auto& ng : neg) {
        const Rational a = p.coeffs[var], b = -ng.coeffs[var];
        Row r;
        r.coeffs.resize(q);
        for (std::size_t l = 0; l < q; ++l) r.coeffs[l] = b * p.coeffs[l] + a * ng.coeffs[l];
        r.coeffs[var] = 0;
        r.constant = b * p.constant + a * ng.constant;
        r.lambda.resize(originals);
        for (std::size_t c = 0; c < originals; ++c) r.lambda[c] = b * p.lambda[c] + a * ng.lambda[c];
        next.push_back(std::move(r));
      }
    if (tidy(next, var + 2)) return res;
    rows = std::move(next);
  }

  // Back-substitute, taking each variable at its largest lower bound.
  std::vector<Rational> x(q, Rational(0));
  for (std::size_t var = q; var-- > 0;) {
    std::optional<Rational> lo, hi;
    for (const auto& r : stages[var]) {
      const Rational& a = r.coeffs[var];
      if (a == 0) continue;
      Rational rest = r.constant;
      for (std::size_t l = var + 1; l < q; ++l) rest += r.coeffs[l] * x[l];
      Rational bound = -rest / a;
      if (a > 0) {
        if (!lo || bound > *lo) lo = bound;
      } else if (!hi || bound < *hi) {
        hi = bound;
      }
    }
    x[var] = lo ? *lo : (hi ? std::min(*hi, Rational(0)) : Rational(0));
    BOBW_ENSURE(!lo || !hi || *lo <= *hi, "sdef_feasibility: back-substitution found an empty interval");
  }
  res.feasible = true;
  res.weights = x;

  std::vector<WeightedAllocation> mix;
  for (std::size_t l = 0; l < q; ++l) mix.push_back({x[l], supports[l]});
  const RandomizedAllocation dist(std::move(mix));
  BOBW_ENSURE(check_sdef(associated_fractional(dist, n, m), rankings).pass,
              "sdef_feasibility: recovered weights are not sd-EF");
  return res;
}

CharityDistribution exact_distribution_charity(const Instance& inst, int algorithm, std::size_t leaf_cap,
                                               long step_cap) {
  require_charity_instance(inst);
  if (algorithm != 3 && algorithm != 4) throw PreconditionError("algorithm must be 3 or 4");
  if (step_cap < 0) step_cap = default_step_cap(inst);
  const Valuer v(inst);
  CharityDistribution out;

  struct Frame {
    IntegralAllocation a;
    Rational prob;
    std::vector<SwapStep> steps;
  };
  std::vector<Frame> stack;
  stack.push_back({IntegralAllocation::empty(inst.n, inst.m), Rational(1), {}});
  // Depth first, children pushed in reverse so ascending k is explored first.
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    auto step = next_swap(v, f.a);
    if (!step) {
      if (out.leaves.size() >= leaf_cap)
        throw ResourceCapError("exact_distribution_charity: leaf cap " + std::to_string(leaf_cap) + " exhausted");
      CharityLeaf leaf{f.prob, SwapTrace{std::move(f.steps), f.a}, f.a};
      if (algorithm == 4) leaf.final_alloc = bounded_charity(inst, leaf.trace.final_alloc, step_cap);
      out.leaves.push_back(std::move(leaf));
      continue;
    }
    const Rational share = f.prob / static_cast<long>(step->H.size());
    for (auto it = step->H.rbegin(); it != step->H.rend(); ++it) {
      Frame child{f.a, share, f.steps};
      apply_swap(child.a, step->Q, *it);
      child.steps.push_back({step->Q, step->H, *it});
      stack.push_back(std::move(child));
    }
  }
  std::vector<WeightedAllocation> support;
  for (const auto& leaf : out.leaves) support.push_back({leaf.prob, leaf.final_alloc});
  out.merged = RandomizedAllocation(std::move(support));
  return out;
}

Estimate estimate(const Sampler& sampler, const Statistic& statistic, std::size_t n_samples, std::uint64_t seed) {
  if (n_samples < 1000) throw PreconditionError("estimate needs at least 1000 samples");
  double mean = 0, m2 = 0;
  for (std::size_t r = 0; r < n_samples; ++r) {
    SplitMix64 rng(derive_seed(seed, r));
    const double x = statistic(sampler(rng));
    const double delta = x - mean;
    mean += delta / static_cast<double>(r + 1);
    m2 += delta * (x - mean);
  }
  Estimate e;
  e.samples = n_samples;
  e.mean = mean;
  e.stderr_ = std::sqrt(m2 / static_cast<double>(n_samples - 1) / static_cast<double>(n_samples));
  e.ci_low = mean - 3 * e.stderr_;
  e.ci_high = mean + 3 * e.stderr_;
  return e;
}

std::vector<RatioEstimate> estimate_ratios(const Instance& inst, const Sampler& sampler, std::size_t n_samples,
                                           std::uint64_t seed) {
  if (n_samples < 1000) throw PreconditionError("estimate needs at least 1000 samples");
  const Valuer v(inst);
  const int n = inst.n;
  // Per agent i: sums of u_ij, u_ij^2 and u_ii * u_ij.
  std::vector<std::vector<double>> s1(n, std::vector<double>(n)), s2 = s1, sx = s1;
  for (std::size_t r = 0; r < n_samples; ++r) {
    SplitMix64 rng(derive_seed(seed, r));
    const IntegralAllocation a = sampler(rng);
    for (int i = 0; i < n; ++i) {
      std::vector<double> u(n);
      for (int j = 0; j < n; ++j) u[j] = v(i, a.bundles[j]).get_d();
      for (int j = 0; j < n; ++j) {
        s1[i][j] += u[j];
        s2[i][j] += u[j] * u[j];
        sx[i][j] += u[i] * u[j];
      }
    }
  }
  const double N = static_cast<double>(n_samples);
  std::vector<RatioEstimate> out;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      RatioEstimate e;
      e.i = i;
      e.j = j;
      e.own_mean = s1[i][i] / N;
      e.other_mean = s1[i][j] / N;
      if (e.other_mean == 0) {
        e.ratio = std::numeric_limits<double>::infinity();
        out.push_back(e);
        continue;
      }
      e.ratio = e.own_mean / e.other_mean;
      const double var_a = (s2[i][i] - N * e.own_mean * e.own_mean) / (N - 1);
      const double var_b = (s2[i][j] - N * e.other_mean * e.other_mean) / (N - 1);
      const double cov = (sx[i][j] - N * e.own_mean * e.other_mean) / (N - 1);
      const double var_r = (var_a - 2 * e.ratio * cov + e.ratio * e.ratio * var_b) / (N * e.other_mean * e.other_mean);
      e.sigma = std::sqrt(std::max(0.0, var_r));
      out.push_back(e);
    }
  return out;
}

}  // namespace bobw
