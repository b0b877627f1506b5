// Acceptance runner: one PASS/FAIL line per criterion. Tolerances and budgets
// are pinned below; nothing here is tuned per run.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "bobw/api.hpp"
#include "bobw/audit.hpp"
#include "bobw/charity.hpp"
#include "bobw/fixtures.hpp"
#include "bobw/lex_algos.hpp"
#include "bobw/oracle.hpp"
#include "bobw/rounding.hpp"
#include "support.hpp"

using namespace bobw;

namespace {

constexpr double kSigmas = 3.0;            // statistical margin for sampled criteria
constexpr std::uint64_t kSeed = 20240611;  // master seed for every random battery

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double budget_s;
  std::function<Outcome()> run;
};

Outcome fail(std::string why) { return {false, std::move(why)}; }

int pick(SplitMix64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(hi - lo + 1)));
}

Outcome repro(const std::string& scenario) {
  const CommandResult r = cmd_repro(scenario, std::nullopt, std::nullopt);
  if (r.status != kExitPass) return fail(r.body.dump());
  return {true, scenario == "impossibility" ? r.body["summary"].get<std::string>() : "exact match"};
}

// Random lexicographic instance with n <= 5, m <= 8, shared by criteria 4 and 5.
std::vector<Instance> lex_sweep() {
  SplitMix64 rng(kSeed);
  std::vector<Instance> out;
  for (int t = 0; t < 200; ++t) {
    const int n = pick(rng, 1, 5), m = pick(rng, 1, 8);
    out.push_back(testing::random_lex_instance(rng, n, m));
  }
  return out;
}

Outcome utse_sweep() {
  long k_max = 0;
  std::size_t supports = 0;
  for (const Instance& inst : lex_sweep()) {
    const UtseRun run = utse_run(inst);
    if (!run.summary.k) return fail("non-integral k");
    const long k = *run.summary.k;
    k_max = std::max(k_max, k);
    const Rational alpha = make_rational(3 * k, 3 * k + 1);
    const PairRatio p = min_exante_ratio(run.distribution, Valuer(inst));
    if (p.ratio && *p.ratio < alpha)
      return fail("ratio " + to_string(*p.ratio) + " < " + to_string(alpha) + " on n=" + std::to_string(inst.n));
    for (const auto& e : run.distribution.support()) {
      ++supports;
      if (!check_efx(inst, e.alloc).pass) return fail("EFX violated: " + describe(e.alloc));
      if (!check_po_lex(inst, e.alloc).pass) return fail("PO-lex violated: " + describe(e.alloc));
    }
  }
  return {true, "200 instances, " + std::to_string(supports) + " support allocations, max k=" + std::to_string(k_max)};
}

Outcome utse_k1() {
  int count = 0;
  for (const Instance& inst : lex_sweep()) {
    const UtseRun run = utse_run(inst);
    if (run.summary.k != 1) continue;
    ++count;
    const auto rep = check_exante_ef(run.distribution, inst, Rational(1));
    if (!rep.pass) return fail(rep.witness.dump());
  }
  if (count == 0) return fail("sweep produced no k = 1 instance");
  return {true, std::to_string(count) + " instances with k = 1, all exactly ex-ante EF"};
}

// Seeded random lexicographic instances with m > n and k = 2.
std::vector<Instance> k2_instances(std::size_t count) {
  std::vector<Instance> out{fixture_c()};
  SplitMix64 rng(kSeed ^ 0x2);
  while (out.size() < count) {
    const int n = pick(rng, 2, 5), m = pick(rng, n + 1, 8);
    Instance inst = testing::random_lex_instance(rng, n, m);
    if (summarize(run_eating(inst, Rational(1))).k == 2) out.push_back(std::move(inst));
  }
  return out;
}

Outcome depround_sampling() {
  constexpr std::size_t kSamples = 20000;
  double worst = INFINITY, worst_sigma = 0;
  std::size_t idx = 0;
  for (const Instance& inst : k2_instances(20)) {
    const DepRoundK2Sampler sampler(inst);
    std::size_t bad = 0;
    const Sampler audited = [&](SplitMix64& rng) {
      IntegralAllocation a = sampler.sample(rng);
      if (!check_efx(inst, a).pass || !check_po_lex(inst, a).pass) ++bad;
      return a;
    };
    const auto ratios = estimate_ratios(inst, audited, kSamples, derive_seed(kSeed, idx++));
    if (bad) return fail(std::to_string(bad) + " samples failed EFX/PO-lex on instance " + std::to_string(idx - 1));
    for (const auto& r : ratios) {
      if (!std::isfinite(r.ratio)) continue;
      if (r.ratio + kSigmas * r.sigma < 0.9)
        return fail("pair (" + std::to_string(r.i) + "," + std::to_string(r.j) + ") ratio " + std::to_string(r.ratio) +
                    " sigma " + std::to_string(r.sigma) + " on instance " + std::to_string(idx - 1));
      if (r.ratio < worst) {
        worst = r.ratio;
        worst_sigma = r.sigma;
      }
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "20 instances x %zu samples; min ratio %.4f (sigma %.4f)", kSamples, worst, worst_sigma);
  return {true, buf};
}

std::vector<Matrix> rounding_battery() {
  auto q = [](long a, long b) { return make_rational(a, b); };
  std::vector<Matrix> out;
  const Instance c = fixture_c();
  out.push_back(DepRoundK2Sampler(c).supergood().combined());
  out.push_back({{q(1, 2), q(1, 2)}, {q(1, 2), q(1, 2)}});
  out.push_back({{q(1, 3), q(2, 3), q(0, 1)}, {q(1, 3), q(1, 3), q(1, 3)}, {q(1, 3), q(0, 1), q(2, 3)}});
  out.push_back({{q(1, 4), q(3, 4)}, {q(1, 4), q(1, 4)}, {q(1, 4), q(0, 1)}, {q(1, 4), q(0, 1)}});
  SplitMix64 rng(kSeed ^ 0x7);
  const std::vector<std::pair<int, int>> shapes = {{3, 4}, {4, 3}, {4, 5}, {5, 6}, {6, 4}, {5, 8}};
  for (auto [n, m] : shapes) {
    std::vector<int> deg(m);
    for (auto& d : deg) d = pick(rng, 1, n - 1);
    out.push_back(testing::random_integral_columns(rng, n, m, 4, deg));
  }
  return out;
}

Outcome rounding_harness() {
  constexpr std::size_t kSamples = 50000;
  std::size_t checks = 0;
  std::size_t mi = 0;
  for (const Matrix& x : rounding_battery()) {
    const int n = static_cast<int>(x.size()), m = static_cast<int>(x.front().size());
    const auto colsum = column_sums(x);
    std::vector<std::vector<double>> hits(n, std::vector<double>(m, 0));
    // pair[j][i][i2] counts samples where rows i < i2 both hold column j.
    std::vector<std::vector<std::vector<double>>> pair(m, std::vector<std::vector<double>>(n, std::vector<double>(n, 0)));
    for (std::size_t r = 0; r < kSamples; ++r) {
      const BinaryMatrix z = dependent_round(x, derive_seed(kSeed + mi, r));
      for (int j = 0; j < m; ++j) {
        long s = 0;
        for (int i = 0; i < n; ++i) s += z[i][j];
        if (Rational(s) != colsum[j]) return fail("column sum broken in matrix " + std::to_string(mi));
        for (int i = 0; i < n; ++i) {
          if (!z[i][j]) continue;
          hits[i][j] += 1;
          for (int i2 = i + 1; i2 < n; ++i2)
            if (z[i2][j]) pair[j][i][i2] += 1;
        }
      }
    }
    const double N = static_cast<double>(kSamples);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j) {
        const double p = x[i][j].get_d(), f = hits[i][j] / N;
        const double sigma = std::sqrt(p * (1 - p) / N);
        ++checks;
        if (std::abs(f - p) > kSigmas * sigma + 1e-12)
          return fail("marginal (" + std::to_string(i) + "," + std::to_string(j) + ") of matrix " + std::to_string(mi) +
                      ": " + std::to_string(f) + " vs " + std::to_string(p));
        for (int i2 = i + 1; i2 < n; ++i2) {
          const double prod = p * x[i2][j].get_d(), g = pair[j][i][i2] / N;
          const double s2 = std::sqrt(prod * (1 - prod) / N);
          ++checks;
          if (g > prod + kSigmas * s2 + 1e-12)
            return fail("co-assignment rows " + std::to_string(i) + "," + std::to_string(i2) + " column " +
                        std::to_string(j) + " of matrix " + std::to_string(mi));
        }
      }
    ++mi;
  }
  return {true, std::to_string(mi) + " matrices x 50000 samples, " + std::to_string(checks) + " statistical checks"};
}

Outcome bvn_sweep() {
  SplitMix64 rng(kSeed ^ 0x8);
  std::size_t max_terms = 0;
  for (int t = 0; t < 500; ++t) {
    const int n = pick(rng, 1, 6), m = pick(rng, n, 9), terms = pick(rng, 1, 8);
    const Matrix x = testing::random_substochastic(rng, n, m, terms);
    const Decomposition d = bvn_decompose(x);
    if (reconstruct(d) != x) return fail("reconstruction mismatch at trial " + std::to_string(t));
    if (d.terms.size() > static_cast<std::size_t>(n * m)) return fail("too many terms at trial " + std::to_string(t));
    max_terms = std::max(max_terms, d.terms.size());
  }
  return {true, "500 matrices, max terms " + std::to_string(max_terms)};
}

Outcome charity_exact() {
  SplitMix64 rng(kSeed ^ 0x9);
  std::size_t leaves = 0;
  for (int t = 0; t < 50; ++t) {
    const int n = pick(rng, 1, 3), m = pick(rng, 1, 4);
    const Instance inst = testing::random_monotone_instance(rng, n, m);
    const CharityDistribution d = exact_distribution_charity(inst, 3, 1000000);
    leaves += d.leaves.size();
    for (const auto& e : d.merged.support())
      if (!check_efx_with_charity(inst, e.alloc).pass) return fail("EFX-with-charity violated at trial " + std::to_string(t));
    if (auto r = check_stochastic_dominance_half(d.merged, inst); !r.pass) return fail(r.witness.dump());
    if (auto r = check_exante_ef(d.merged, inst, Rational(1, 2)); !r.pass) return fail(r.witness.dump());
  }
  return {true, "50 instances, " + std::to_string(leaves) + " branch leaves"};
}

Outcome bounded_charity_exact() {
  SplitMix64 rng(kSeed ^ 0xa);
  std::size_t leaves = 0;
  for (int t = 0; t < 30; ++t) {
    const int n = pick(rng, 1, 3), m = pick(rng, 1, 4);
    const Instance inst = testing::random_subadditive_instance(rng, n, m);
    const CharityDistribution d = exact_distribution_charity(inst, 4, 1000000);
    leaves += d.leaves.size();
    for (const auto& e : d.merged.support())
      if (!check_bounded_charity(inst, e.alloc).pass) return fail("bounded charity violated at trial " + std::to_string(t));
    if (auto r = check_exante_prop(d.merged, inst, Rational(1, 2)); !r.pass) return fail(r.witness.dump());
  }
  return {true, "30 instances, " + std::to_string(leaves) + " branch leaves"};
}

Outcome uniform_perm_sweep() {
  SplitMix64 rng(kSeed ^ 0xb);
  for (int t = 0; t < 100; ++t) {
    const int n = pick(rng, 1, 6), m = pick(rng, 1, 8);
    const Instance inst = testing::random_lex_instance(rng, n, m);
    const RandomizedAllocation d = uniform_permutation_exact(inst);
    if (auto r = check_exante_ef(d, inst, Rational(1, 2)); !r.pass) return fail(r.witness.dump());
  }
  return {true, "100 instances exactly ex-ante 1/2-EF"};
}

Outcome ps_sweep() {
  SplitMix64 rng(kSeed ^ 0xc);
  std::size_t terms = 0;
  for (int t = 0; t < 100; ++t) {
    const int n = pick(rng, 1, 5), m = pick(rng, 1, 10);
    const Instance inst = testing::random_lex_instance(rng, n, m);
    const PsBaseline ps = ps_baseline(inst);
    const OrdinalProfile p = ordinal_profile(inst);
    if (auto r = check_sdef(ps.X, padded(p, ps.trace.m).rankings); !r.pass) return fail(r.witness.dump());
    for (const auto& e : ps.distribution.support()) {
      ++terms;
      if (!check_ef1(inst, e.alloc).pass) return fail("EF1 violated: " + describe(e.alloc));
      if (!reconstruct_picking_sequence(p, e.alloc)) return fail("no picking sequence: " + describe(e.alloc));
    }
  }
  return {true, "100 instances, " + std::to_string(terms) + " terms"};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "impossibility: 4 EFX allocations, sd-EF mixture infeasible", 1, [] { return repro("impossibility"); }},
      {2, "uniform permutation example: matrix and ratio exact", 5, [] { return repro("example-4-1"); }},
      {3, "UTSE tight example: matrix, k = 2, pinned and default ratios", 1, [] { return repro("utse-tight"); }},
      {4, "UTSE sweep: ratio >= 3k/(3k+1), EFX + PO-lex", 120, utse_sweep},
      {5, "UTSE with k = 1 is ex-ante EF", 120, utse_k1},
      {6, "depround-k2: EFX + PO-lex samples, ratio >= 0.9 - 3 sigma", 600, depround_sampling},
      {7, "dependent rounding: column sums, marginals, negative correlation", 300, rounding_harness},
      {8, "BvN reconstructs 500 matrices with <= nm terms", 60, bvn_sweep},
      {9, "charity swap exact: EFX-with-charity, 1/2 stochastic dominance", 300, charity_exact},
      {10, "bounded charity exact: contract + ex-ante 1/2-Prop", 300, bounded_charity_exact},
      {11, "uniform permutation exact: ex-ante 1/2-EF", 300, uniform_perm_sweep},
      {12, "PS baseline: sd-EF, EF1 and picking-sequence terms", 120, ps_sweep},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.pass && secs > c.budget_s) o = fail("over budget: " + o.detail);
    failed += !o.pass;
    std::printf("%s C%02d %s | %s | %.2fs (budget %.0fs)\n", o.pass ? "PASS" : "FAIL", c.id, c.name.c_str(),
                o.detail.c_str(), secs, c.budget_s);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
