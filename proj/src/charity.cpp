#include "bobw/charity.hpp"

#include <algorithm>

#include <json.hpp>

#include "bobw/audit.hpp"
#include "bobw/error.hpp"

namespace bobw {

namespace {

bool envied_by_someone(const Valuer& v, const std::vector<Rational>& own, const GoodSet& s) {
  for (int h = 0; h < v.n(); ++h)
    if (own[h] < v(h, s)) return true;
  return false;
}

std::vector<Rational> utilities(const Valuer& v, const IntegralAllocation& a) {
  std::vector<Rational> u;
  for (int i = 0; i < v.n(); ++i) u.push_back(v(i, a.bundles[i]));
  return u;
}

Rational welfare(const Valuer& v, const IntegralAllocation& a) {
  Rational w = 0;
  for (int i = 0; i < v.n(); ++i) w += v(i, a.bundles[i]);
  return w;
}

}  // namespace

std::optional<GoodSet> minimal_envied_subset(const Valuer& v, const IntegralAllocation& a, const GoodSet& candidate) {
  const auto own = utilities(v, a);
  if (candidate.empty() || !envied_by_someone(v, own, candidate)) return std::nullopt;
  GoodSet z = candidate;
  for (bool removed = true; removed;) {
    removed = false;
    for (int g : GoodSet(z)) {
      GoodSet smaller = without(z, g);
      if (envied_by_someone(v, own, smaller)) {
        z = std::move(smaller);
        removed = true;
      }
    }
  }
  return z;
}

std::optional<GoodSet> minimal_envied_subset(const Instance& inst, const IntegralAllocation& a,
                                             const GoodSet& candidate) {
  require_well_formed(a, inst.n, inst.m);
  return minimal_envied_subset(Valuer(inst), a, candidate);
}

std::optional<SwapStep> next_swap(const Valuer& v, const IntegralAllocation& a) {
  auto q = minimal_envied_subset(v, a, a.pool);
  if (!q) return std::nullopt;
  SwapStep step;
  step.Q = std::move(*q);
  for (int h = 0; h < v.n(); ++h)
    if (v(h, a.bundles[h]) < v(h, step.Q)) step.H.push_back(h);
  return step;
}

void apply_swap(IntegralAllocation& a, const GoodSet& q, int k) {
  a.pool = set_union(set_minus(a.pool, q), a.bundles[k]);
  a.bundles[k] = q;
}

void require_charity_instance(const Instance& inst) {
  require_valid(inst);
  if (!has_integer_valuations(inst))
    throw PreconditionError("charity algorithms need integer valuations (termination relies on integral utilities)");
}

SwapTrace random_charity_swap(const Valuer& v, SplitMix64& rng) {
  IntegralAllocation a = IntegralAllocation::empty(v.n(), v.m());
  SwapTrace trace;
  // Welfare is integral and strictly increasing, so it bounds the step count.
  Rational bound = 1;
  for (int i = 0; i < v.n(); ++i) bound += v(i, range_set(v.m()));
  while (auto step = next_swap(v, a)) {
    step->k = step->H[rng.uniform_below(static_cast<std::uint64_t>(step->H.size()))];
    apply_swap(a, step->Q, step->k);
    trace.steps.push_back(std::move(*step));
    BOBW_ENSURE(Rational(static_cast<long>(trace.steps.size())) <= bound, "charity swap exceeded its welfare bound");
  }
  trace.final_alloc = std::move(a);
  return trace;
}

SwapTrace random_charity_swap(const Instance& inst, std::uint64_t seed) {
  require_charity_instance(inst);
  SplitMix64 rng(seed);
  return random_charity_swap(Valuer(inst), rng);
}

IntegralAllocation replay_swap_trace(const Instance& inst, const SwapTrace& trace) {
  require_charity_instance(inst);
  const Valuer v(inst);
  IntegralAllocation a = IntegralAllocation::empty(inst.n, inst.m);
  for (std::size_t r = 0; r < trace.steps.size(); ++r) {
    const SwapStep& rec = trace.steps[r];
    auto expect = next_swap(v, a);
    const std::string at = "swap trace step " + std::to_string(r) + ": ";
    if (!expect) throw PreconditionError(at + "nobody envies the pool, the run should have stopped");
    if (expect->Q != rec.Q) throw PreconditionError(at + "Q is not the canonical minimal envied subset");
    if (expect->H != rec.H) throw PreconditionError(at + "H does not match the agents envying Q");
    if (!std::binary_search(rec.H.begin(), rec.H.end(), rec.k)) throw PreconditionError(at + "k is not in H");
    const Rational before = welfare(v, a);
    apply_swap(a, rec.Q, rec.k);
    if (welfare(v, a) <= before) throw PreconditionError(at + "welfare did not increase");
  }
  if (next_swap(v, a)) throw PreconditionError("swap trace ends while the pool is still envied");
  if (a != trace.final_alloc) throw PreconditionError("swap trace replay does not reproduce the final allocation");
  return a;
}

namespace {

// A cycle in the envy graph (i envies cycle[next]) found by DFS in ascending order.
std::optional<std::vector<int>> find_envy_cycle(const EnvyGraph& g) {
  std::vector<int> color(g.n, 0), parent(g.n, -1);
  for (int root = 0; root < g.n; ++root) {
    if (color[root]) continue;
    std::vector<std::pair<int, std::size_t>> stack{{root, 0}};
    color[root] = 1;
    while (!stack.empty()) {
      auto& [u, idx] = stack.back();
      if (idx == g.out[u].size()) {
        color[u] = 2;
        stack.pop_back();
        continue;
      }
      const int w = g.out[u][idx++];
      if (color[w] == 1) {
        std::vector<int> cycle{w};
        for (int x = u; x != w; x = parent[x]) cycle.push_back(x);
        std::reverse(cycle.begin() + 1, cycle.end());
        return cycle;  // cycle[0] -> cycle[1] -> ... -> cycle[0]
      }
      if (color[w] == 0) {
        color[w] = 1;
        parent[w] = u;
        stack.push_back({w, 0});
      }
    }
  }
  return std::nullopt;
}

}  // namespace

IntegralAllocation resolve_envy_cycles(const Valuer& v, IntegralAllocation a, int* rotations) {
  int count = 0;
  while (auto cycle = find_envy_cycle(envy_graph(v, a))) {
    const auto& c = *cycle;
    std::vector<GoodSet> next;
    for (std::size_t t = 0; t < c.size(); ++t) next.push_back(a.bundles[c[(t + 1) % c.size()]]);
    for (std::size_t t = 0; t < c.size(); ++t) a.bundles[c[t]] = std::move(next[t]);
    ++count;
  }
  if (rotations) *rotations = count;
  return a;
}

IntegralAllocation resolve_envy_cycles(const Instance& inst, const IntegralAllocation& a) {
  require_valid(inst);
  require_well_formed(a, inst.n, inst.m);
  return resolve_envy_cycles(Valuer(inst), a);
}

long default_step_cap(const Instance& inst) {
  const Valuer v(inst);
  Rational total = 0;
  for (int i = 0; i < inst.n; ++i) total += v(i, range_set(inst.m));
  Rational cap = Rational(static_cast<long>(inst.n) * inst.m) * (1 + total);
  if (cap > Rational(1L << 40)) return 1L << 40;
  return cap.get_num().get_si();
}

std::string phase_name(CharityPhase p) {
  switch (p) {
    case CharityPhase::PoolSwap: return "pool_swap";
    case CharityPhase::CycleRotation: return "cycle_rotation";
    case CharityPhase::Commit: return "commit";
    case CharityPhase::Exchange: return "exchange";
  }
  return "?";
}

namespace {

bool commit_keeps_efx(const Valuer& v, const IntegralAllocation& a, int s, int g) {
  const GoodSet grown = with(a.bundles[s], g);
  for (int h = 0; h < v.n(); ++h) {
    if (h == s) continue;
    const Rational own = v(h, a.bundles[h]);
    for (int r : grown)
      if (own < v(h, without(grown, r))) return false;
  }
  return true;
}

int smallest_envier(const Valuer& v, const IntegralAllocation& a, const GoodSet& s) {
  for (int h = 0; h < v.n(); ++h)
    if (v(h, a.bundles[h]) < v(h, s)) return h;
  return -1;
}

// Pair each source with a distinct pool good; follow "who takes this bundle"
// pointers backwards from the first source until they close a cycle, then
// move bundles along it. Every receiver strictly gains.
void exchange(const Valuer& v, IntegralAllocation& a, const std::vector<int>& sources) {
  const int n = v.n();
  std::vector<int> paired(n, -1);
  std::vector<GoodSet> z(n);
  std::vector<int> taker(n, -1);
  for (std::size_t t = 0; t < sources.size(); ++t) {
    const int s = sources[t];
    paired[s] = a.pool[t];
    auto zs = minimal_envied_subset(v, a, with(a.bundles[s], paired[s]));
    BOBW_ENSURE(zs && contains(*zs, paired[s]), "exchange: source bundle plus pool good is not envied");
    z[s] = std::move(*zs);
    taker[s] = smallest_envier(v, a, z[s]);
  }
  for (int c = 0; c < n; ++c)
    if (paired[c] < 0) taker[c] = smallest_envier(v, a, a.bundles[c]);

  std::vector<int> pos(n, -1), walk;
  int c = sources.front();
  while (pos[c] < 0) {
    pos[c] = static_cast<int>(walk.size());
    walk.push_back(c);
    c = taker[c];
    BOBW_ENSURE(c >= 0, "exchange: envied agent without an envier");
  }
  const std::vector<int> cycle(walk.begin() + pos[c], walk.end());

  std::vector<std::pair<int, GoodSet>> moves;
  GoodSet freed, used;
  for (int member : cycle) {
    if (paired[member] >= 0) {
      moves.push_back({taker[member], z[member]});
      freed = set_union(freed, set_minus(a.bundles[member], z[member]));
      used.push_back(paired[member]);
    } else {
      moves.push_back({taker[member], a.bundles[member]});
    }
  }
  for (auto& [to, bundle] : moves) a.bundles[to] = std::move(bundle);
  a.pool = set_union(set_minus(a.pool, normalized(used)), freed);
}

}  // namespace

BoundedCharityRun bounded_charity_run(const Instance& inst, const IntegralAllocation& start, long step_cap) {
  require_charity_instance(inst);
  require_well_formed(start, inst.n, inst.m);
  const Valuer v(inst);
  if (auto rep = check_efx(v, start); !rep.pass)
    throw PreconditionError("bounded_charity: start allocation is not EFX among the agents");
  if (step_cap < 0) throw PreconditionError("step cap must be nonnegative");

  BoundedCharityRun run;
  run.alloc = start;
  IntegralAllocation& a = run.alloc;
  auto record = [&](CharityPhase phase) {
    run.steps.push_back({phase, welfare(v, a), a.pool.size()});
    if (static_cast<long>(run.steps.size()) > step_cap) {
      nlohmann::json diag = {{"steps", run.steps.size()}, {"pool", a.pool}, {"bundles", a.bundles}};
      throw ResourceCapError("bounded_charity: step cap " + std::to_string(step_cap) + " exhausted", diag.dump());
    }
  };

  for (;;) {
    while (auto step = next_swap(v, a)) {
      apply_swap(a, step->Q, step->H.front());
      record(CharityPhase::PoolSwap);
    }
    int rotated = 0;
    a = resolve_envy_cycles(v, std::move(a), &rotated);
    for (int r = 0; r < rotated; ++r) record(CharityPhase::CycleRotation);
    if (a.pool.empty()) break;

    const auto sources = envy_graph(v, a).sources();
    bool committed = false;
    for (int s : sources) {
      for (int g : a.pool)
        if (commit_keeps_efx(v, a, s, g)) {
          a.bundles[s] = with(a.bundles[s], g);
          a.pool = without(a.pool, g);
          committed = true;
          break;
        }
      if (committed) break;
    }
    if (committed) {
      record(CharityPhase::Commit);
      continue;
    }
    if (a.pool.size() < sources.size()) break;
    exchange(v, a, sources);
    record(CharityPhase::Exchange);
  }

  BOBW_ENSURE(check_bounded_charity(inst, a).pass, "bounded_charity: output violates the contract");
  return run;
}

IntegralAllocation bounded_charity(const Instance& inst, const IntegralAllocation& start, long step_cap) {
  return bounded_charity_run(inst, start, step_cap).alloc;
}

}  // namespace bobw
