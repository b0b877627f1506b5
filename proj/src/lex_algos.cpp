#include "bobw/lex_algos.hpp"

#include <algorithm>
#include <numeric>

#include "bobw/error.hpp"

namespace bobw {

IntegralAllocation run_picking_sequence(const OrdinalProfile& p, const PickingSequence& seq) {
  if (static_cast<int>(seq.size()) != p.m)
    throw PreconditionError("picking sequence must have length m = " + std::to_string(p.m));
  IntegralAllocation a = IntegralAllocation::empty(p.n);
  std::vector<char> taken(p.m, 0);
  for (int agent : seq) {
    if (agent < 0 || agent >= p.n) throw PreconditionError("picking sequence names an unknown agent");
    for (int g : p.rankings[agent])
      if (!taken[g]) {
        taken[g] = 1;
        a.bundles[agent].push_back(g);
        break;
      }
  }
  for (auto& b : a.bundles) std::sort(b.begin(), b.end());
  return a;
}

IntegralAllocation run_picking_sequence(const Instance& inst, const PickingSequence& seq) {
  return run_picking_sequence(ordinal_profile(inst), seq);
}

IntegralAllocation strip_dummy_goods(IntegralAllocation a, int real_m) {
  auto strip = [real_m](GoodSet& s) { s.erase(std::lower_bound(s.begin(), s.end(), real_m), s.end()); };
  for (auto& b : a.bundles) strip(b);
  strip(a.pool);
  return a;
}

void require_lexicographic(const Instance& inst) {
  require_valid(inst);
  if (!has_lexicographic_preferences(inst))
    throw PreconditionError("algorithm requires lexicographic preferences for every agent");
}

UtseRun utse_run(const Instance& inst, const Decomposition* pinned) {
  require_lexicographic(inst);
  UtseRun run;
  OrdinalProfile p = ordinal_profile(inst);
  if (p.m < p.n) {
    p = padded(p, p.n);
    run.padded = true;
  }
  run.trace = run_eating(p, Rational(1));
  run.summary = summarize(run.trace);
  if (pinned) {
    require_decomposes(*pinned, run.summary.X);
    run.decomposition = *pinned;
  } else {
    run.decomposition = bvn_decompose(run.summary.X);
  }

  std::vector<WeightedAllocation> support;
  for (const auto& term : run.decomposition.terms) {
    IntegralAllocation z = IntegralAllocation::empty(p.n);
    std::vector<char> used(p.m, 0);
    for (int i = 0; i < p.n; ++i) {
      z.bundles[i] = {term.column_of_row[i]};
      used[term.column_of_row[i]] = 1;
    }
    if (run.padded) {
      // Every good is allocated; each agent holds at most one real good.
      support.push_back({term.weight, strip_dummy_goods(std::move(z), p.real_m)});
      continue;
    }
    GoodSet tail;
    for (int g = 0; g < p.m; ++g)
      if (!used[g]) tail.push_back(g);
    std::vector<int> holders;  // N_L
    for (int i = 0; i < p.n; ++i)
      if (contains(run.summary.L, term.column_of_row[i])) holders.push_back(i);
    BOBW_ENSURE(!holders.empty(), "utse: a decomposition term has no holder of a last consumed good");
    const Rational share = term.weight / static_cast<long>(holders.size());
    for (int h : holders) {
      IntegralAllocation full = z;
      full.bundles[h] = set_union(full.bundles[h], tail);
      support.push_back({share, std::move(full)});
    }
  }
  run.distribution = RandomizedAllocation(std::move(support));
  return run;
}

RandomizedAllocation utse(const Instance& inst) { return utse_run(inst).distribution; }

DepRoundK2Sampler::DepRoundK2Sampler(const Instance& inst) {
  require_lexicographic(inst);
  n_ = inst.n;
  m_ = inst.m;
  if (m_ <= n_) throw PreconditionError("depround-k2 requires more goods than agents");
  summary_ = summarize(run_eating(ordinal_profile(inst), Rational(1)));
  if (summary_.k != 2)
    throw PreconditionError("depround-k2 requires k = 2, this instance has k = " +
                            (summary_.k ? std::to_string(*summary_.k) : to_string(summary_.last_mass)));
  super_ = build_supergood_matrix(summary_);
  combined_ = super_.combined();
  leftovers_ = set_union(summary_.L, summary_.U);
}

DepRoundK2Sampler::Draw DepRoundK2Sampler::draw(SplitMix64& rng) const {
  const BinaryMatrix z = dependent_round(combined_, rng);
  const std::size_t s = super_.base_goods.size();
  Draw d;
  d.alloc = IntegralAllocation::empty(n_);
  std::vector<int> holders;
  for (int i = 0; i < n_; ++i) {
    for (std::size_t b = 0; b < s; ++b)
      if (z[i][b]) d.alloc.bundles[i].push_back(super_.base_goods[b]);
    if (z[i][s]) holders.push_back(i);
  }
  BOBW_ENSURE(holders.size() == 2, "depround-k2: super-good must go to exactly two agents");
  d.a = holders[0];
  d.b = holders[1];
  if (rng.uniform_below(std::uint64_t{2})) std::swap(d.a, d.b);
  const int ga = summary_.last_goods[d.a];
  d.alloc.bundles[d.a] = {ga};
  d.alloc.bundles[d.b] = without(leftovers_, ga);
  return d;
}

IntegralAllocation depround_k2_sample(const Instance& inst, std::uint64_t seed) {
  SplitMix64 rng(seed);
  return DepRoundK2Sampler(inst).sample(rng);
}

namespace {

PickingSequence permutation_sequence(const std::vector<int>& sigma, int m) {
  const int n = static_cast<int>(sigma.size());
  PickingSequence seq;
  for (int t = 0; t < m; ++t) seq.push_back(sigma[std::min(t, n - 1)]);
  return seq;
}

}  // namespace

RandomizedAllocation uniform_permutation_exact(const Instance& inst) {
  require_lexicographic(inst);
  if (inst.n > 9) throw ResourceCapError("exact uniform permutation is limited to n <= 9");
  const OrdinalProfile p = ordinal_profile(inst);
  std::vector<int> sigma(p.n);
  std::iota(sigma.begin(), sigma.end(), 0);
  long count = 1;
  for (int k = 2; k <= p.n; ++k) count *= k;
  const Rational w(1, count);
  std::vector<WeightedAllocation> support;
  do {
    support.push_back({w, run_picking_sequence(p, permutation_sequence(sigma, p.m))});
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return RandomizedAllocation(std::move(support));
}

IntegralAllocation uniform_permutation_sample(const OrdinalProfile& p, SplitMix64& rng) {
  std::vector<int> sigma(p.n);
  std::iota(sigma.begin(), sigma.end(), 0);
  // Fisher-Yates with exact bounded draws.
  for (int k = p.n - 1; k > 0; --k) std::swap(sigma[k], sigma[rng.uniform_below(std::uint64_t(k + 1))]);
  return run_picking_sequence(p, permutation_sequence(sigma, p.m));
}

IntegralAllocation uniform_permutation_sample(const Instance& inst, std::uint64_t seed) {
  require_lexicographic(inst);
  SplitMix64 rng(seed);
  return uniform_permutation_sample(ordinal_profile(inst), rng);
}

PickingSequence sigma_unenvied_sequence(const Instance& inst, const std::vector<int>& sigma,
                                        const std::vector<int>& tail) {
  require_lexicographic(inst);
  std::vector<int> sorted = sigma;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> agents(inst.n);
  std::iota(agents.begin(), agents.end(), 0);
  if (sorted != agents) throw PreconditionError("sigma must be a permutation of the agents");
  const int head = std::min(inst.n, inst.m);
  if (head + static_cast<int>(tail.size()) != inst.m)
    throw PreconditionError("sigma phase plus tail must cover all m goods");

  const OrdinalProfile p = ordinal_profile(inst);
  PickingSequence head_seq(sigma.begin(), sigma.begin() + head);
  // Partial picking: run on the first `head` turns only.
  IntegralAllocation a = IntegralAllocation::empty(p.n);
  std::vector<char> taken(p.m, 0);
  for (int agent : head_seq)
    for (int g : p.rankings[agent])
      if (!taken[g]) {
        taken[g] = 1;
        a.bundles[agent].push_back(g);
        break;
      }
  const Valuer v(inst);
  for (int t : tail) {
    if (t < 0 || t >= inst.n) throw PreconditionError("tail names an unknown agent");
    for (int i = 0; i < inst.n; ++i)
      if (i != t && v(i, a.bundles[i]) < v(i, a.bundles[t]))
        throw PreconditionError("agent " + std::to_string(t + 1) + " is envied by agent " + std::to_string(i + 1) +
                                " after the sigma phase");
  }
  PickingSequence seq = head_seq;
  seq.insert(seq.end(), tail.begin(), tail.end());
  return seq;
}

LexBobwResult solve_lex_bobw(const Instance& inst, std::optional<std::uint64_t> seed) {
  require_lexicographic(inst);
  LexBobwResult out;
  if (inst.m > inst.n) {
    const TraceSummary s = summarize(run_eating(ordinal_profile(inst), Rational(1)));
    out.k = s.k;
    if (s.k == 2) {
      if (!seed) throw PreconditionError("k = 2 dispatches to the depround-k2 sampler, which requires --seed");
      out.algorithm = "depround-k2";
      out.sample = depround_k2_sample(inst, *seed);
      return out;
    }
  }
  out.algorithm = "utse";
  UtseRun run = utse_run(inst);
  if (!out.k) out.k = run.summary.k;
  out.distribution = std::move(run.distribution);
  return out;
}

PsBaseline ps_baseline(const Instance& inst) {
  require_lexicographic(inst);
  PsBaseline out;
  OrdinalProfile p = ordinal_profile(inst);
  p = padded(p, (p.m + p.n - 1) / p.n * p.n);
  const int rounds = p.m / p.n;
  out.trace = run_eating(p, Rational(rounds));
  out.X = summarize(out.trace).X;

  // Row (r, i) holds agent i's consumption during [r, r+1).
  Matrix y;
  Matrix before = zero_matrix(p.n, p.m);
  for (int r = 1; r <= rounds; ++r) {
    Matrix now = prefix_allocation(out.trace, Rational(r));
    for (int i = 0; i < p.n; ++i) {
      auto& row = y.emplace_back(p.m);
      for (int g = 0; g < p.m; ++g) row[g] = now[i][g] - before[i][g];
    }
    before = std::move(now);
  }
  out.decomposition = bvn_decompose(y);

  std::vector<WeightedAllocation> support;
  for (const auto& term : out.decomposition.terms) {
    IntegralAllocation a = IntegralAllocation::empty(p.n);
    for (int row = 0; row < p.m; ++row) a.bundles[row % p.n].push_back(term.column_of_row[row]);
    for (auto& b : a.bundles) std::sort(b.begin(), b.end());
    support.push_back({term.weight, strip_dummy_goods(std::move(a), p.real_m)});
  }
  out.distribution = RandomizedAllocation(std::move(support));
  return out;
}

}  // namespace bobw
