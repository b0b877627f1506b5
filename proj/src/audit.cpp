#include "bobw/audit.hpp"

#include <algorithm>
#include <set>

#include "bobw/error.hpp"

namespace bobw {

using nlohmann::json;

namespace {

AuditReport passed(std::string property) { return AuditReport{std::move(property), true, nullptr}; }

AuditReport failed(std::string property, json witness) {
  return AuditReport{std::move(property), false, std::move(witness)};
}

// Removal from a_j that leaves i the most value; ties go to the smaller good.
std::pair<int, Rational> best_removal(const Valuer& v, int i, const GoodSet& aj) {
  int best = -1;
  Rational best_val;
  for (int g : aj) {
    Rational val = v(i, without(aj, g));
    if (best < 0 || val > best_val) {
      best = g;
      best_val = val;
    }
  }
  return {best, best_val};
}

std::optional<json> efx_violation(const Valuer& v, const IntegralAllocation& a) {
  const int n = v.n();
  for (int i = 0; i < n; ++i) {
    const Rational own = v(i, a.bundles[i]);
    for (int j = 0; j < n; ++j) {
      if (i == j || a.bundles[j].empty()) continue;
      auto [g, val] = best_removal(v, i, a.bundles[j]);
      if (own < val)
        return json{{"envier", i},        {"envied", j},         {"removed", g},
                    {"own_value", to_string(own)}, {"remaining_value", to_string(val)}};
    }
  }
  return std::nullopt;
}

std::optional<json> pool_envy(const Valuer& v, const IntegralAllocation& a) {
  for (int i = 0; i < v.n(); ++i) {
    const Rational own = v(i, a.bundles[i]), pool = v(i, a.pool);
    if (own < pool)
      return json{{"envier", i}, {"envies", "pool"}, {"own_value", to_string(own)}, {"pool_value", to_string(pool)}};
  }
  return std::nullopt;
}

}  // namespace

AuditReport check_ef(const Instance& inst, const IntegralAllocation& a) {
  require_well_formed(a, inst.n, inst.m);
  const Valuer v(inst);
  for (int i = 0; i < inst.n; ++i) {
    const Rational own = v(i, a.bundles[i]);
    for (int j = 0; j < inst.n; ++j) {
      if (i == j) continue;
      const Rational other = v(i, a.bundles[j]);
      if (own < other)
        return failed("ef", {{"envier", i}, {"envied", j}, {"own_value", to_string(own)}, {"other_value", to_string(other)}});
    }
  }
  return passed("ef");
}

AuditReport check_ef1(const Instance& inst, const IntegralAllocation& a) {
  require_well_formed(a, inst.n, inst.m);
  const Valuer v(inst);
  for (int i = 0; i < inst.n; ++i) {
    const Rational own = v(i, a.bundles[i]);
    for (int j = 0; j < inst.n; ++j) {
      if (i == j || a.bundles[j].empty()) continue;
      // Best case for EF1 is removing the good whose loss hurts most.
      Rational least = v(i, a.bundles[j]);
      int removed = -1;
      for (int g : a.bundles[j]) {
        Rational val = v(i, without(a.bundles[j], g));
        if (removed < 0 || val < least) {
          least = val;
          removed = g;
        }
      }
      if (own < least)
        return failed("ef1", {{"envier", i},
                              {"envied", j},
                              {"removed", removed},
                              {"own_value", to_string(own)},
                              {"remaining_value", to_string(least)}});
    }
  }
  return passed("ef1");
}

AuditReport check_efx(const Valuer& v, const IntegralAllocation& a) {
  if (auto w = efx_violation(v, a)) return failed("efx", *w);
  return passed("efx");
}

AuditReport check_efx(const Instance& inst, const IntegralAllocation& a) {
  require_well_formed(a, inst.n, inst.m);
  return check_efx(Valuer(inst), a);
}

AuditReport check_efx_with_charity(const Instance& inst, const IntegralAllocation& a) {
  require_well_formed(a, inst.n, inst.m);
  const Valuer v(inst);
  if (auto w = efx_violation(v, a)) return failed("efx_with_charity", *w);
  if (auto w = pool_envy(v, a)) return failed("efx_with_charity", *w);
  return passed("efx_with_charity");
}

AuditReport check_bounded_charity(const Instance& inst, const IntegralAllocation& a) {
  auto rep = check_efx_with_charity(inst, a);
  rep.property = "bounded_charity";
  if (!rep.pass) return rep;
  const auto sources = envy_graph(Valuer(inst), a).sources();
  if (a.pool.size() >= sources.size())
    return failed("bounded_charity", {{"pool_size", a.pool.size()}, {"unenvied_agents", sources}});
  return rep;
}

std::optional<PickingSequence> reconstruct_picking_sequence(const OrdinalProfile& p, const IntegralAllocation& a) {
  std::vector<int> owner(p.m, -1);
  for (int i = 0; i < p.n; ++i)
    for (int g : a.bundles[i]) owner[g] = i;
  for (int g = 0; g < p.m; ++g)
    if (owner[g] < 0) return std::nullopt;
  std::vector<std::size_t> cursor(p.n, 0);
  std::vector<char> taken(p.m, 0);
  PickingSequence seq;
  for (int turn = 0; turn < p.m; ++turn) {
    int picker = -1;
    for (int i = 0; i < p.n && picker < 0; ++i) {
      while (taken[p.rankings[i][cursor[i]]]) ++cursor[i];
      const int top = p.rankings[i][cursor[i]];
      if (owner[top] == i) {
        picker = i;
        taken[top] = 1;
      }
    }
    if (picker < 0) return std::nullopt;
    seq.push_back(picker);
  }
  return seq;
}

AuditReport check_po_lex(const OrdinalProfile& p, const IntegralAllocation& a) {
  require_well_formed(a, p.n, p.m);
  if (!a.is_complete(p.m)) return failed("po_lex", {{"reason", "allocation is not complete"}});
  if (auto seq = reconstruct_picking_sequence(p, a)) return AuditReport{"po_lex", true, {{"sequence", *seq}}};
  // Report the goods that were left when the greedy got stuck.
  std::vector<int> owner(p.m);
  for (int i = 0; i < p.n; ++i)
    for (int g : a.bundles[i]) owner[g] = i;
  std::vector<char> taken(p.m, 0);
  PickingSequence partial;
  for (bool progressed = true; progressed;) {
    progressed = false;
    for (int i = 0; i < p.n && !progressed; ++i)
      for (int g : p.rankings[i])
        if (!taken[g]) {
          if (owner[g] == i) {
            taken[g] = 1;
            partial.push_back(i);
            progressed = true;
          }
          break;
        }
  }
  GoodSet stuck;
  for (int g = 0; g < p.m; ++g)
    if (!taken[g]) stuck.push_back(g);
  return failed("po_lex", {{"reason", "no agent's favourite remaining good is its own"},
                           {"partial_sequence", partial},
                           {"remaining", stuck}});
}

AuditReport check_po_lex(const Instance& inst, const IntegralAllocation& a) {
  require_lexicographic(inst);
  return check_po_lex(ordinal_profile(inst), a);
}

AuditReport check_sdef(const Matrix& x, const std::vector<std::vector<int>>& rankings) {
  const int n = static_cast<int>(x.size());
  if (static_cast<int>(rankings.size()) != n) throw PreconditionError("check_sdef: one ranking per row required");
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      Rational own = 0, other = 0;
      for (std::size_t k = 0; k < rankings[i].size(); ++k) {
        const int g = rankings[i][k];
        own += x[i][g];
        other += x[j][g];
        if (own < other)
          return failed("sdef", {{"agent", i},
                                 {"other", j},
                                 {"prefix_length", k + 1},
                                 {"own_mass", to_string(own)},
                                 {"other_mass", to_string(other)}});
      }
    }
  }
  return passed("sdef");
}

std::optional<Rational> exante_ratio(const RandomizedAllocation& dist, const Valuer& v, int i, int j) {
  const Rational own = expected_value(v, dist, i, i);
  const Rational other = expected_value(v, dist, i, j);
  if (other == 0) return std::nullopt;
  return Rational(own / other);
}

std::optional<Rational> exante_ratio(const RandomizedAllocation& dist, const Instance& inst, int i, int j) {
  return exante_ratio(dist, Valuer(inst), i, j);
}

PairRatio min_exante_ratio(const RandomizedAllocation& dist, const Valuer& v) {
  PairRatio best;
  std::vector<std::vector<Rational>> e(v.n(), std::vector<Rational>(v.n()));
  for (int i = 0; i < v.n(); ++i)
    for (int j = 0; j < v.n(); ++j) e[i][j] = expected_value(v, dist, i, j);
  for (int i = 0; i < v.n(); ++i)
    for (int j = 0; j < v.n(); ++j) {
      if (i == j || e[i][j] == 0) continue;
      Rational r = e[i][i] / e[i][j];
      if (!best.ratio || r < *best.ratio) best = {i, j, r};
    }
  return best;
}

AuditReport check_exante_ef(const RandomizedAllocation& dist, const Instance& inst, const Rational& alpha) {
  const Valuer v(inst);
  for (int i = 0; i < inst.n; ++i) {
    const Rational own = expected_value(v, dist, i, i);
    for (int j = 0; j < inst.n; ++j) {
      if (i == j) continue;
      const Rational other = expected_value(v, dist, i, j);
      if (own < alpha * other)
        return failed("exante_ef", {{"agent", i},
                                    {"other", j},
                                    {"alpha", to_string(alpha)},
                                    {"own_expectation", to_string(own)},
                                    {"other_expectation", to_string(other)}});
    }
  }
  return passed("exante_ef");
}

AuditReport check_exante_prop(const RandomizedAllocation& dist, const Instance& inst, const Rational& alpha) {
  const Valuer v(inst);
  const GoodSet all = range_set(inst.m);
  for (int i = 0; i < inst.n; ++i) {
    const Rational own = expected_value(v, dist, i, i);
    const Rational share = alpha * v(i, all) / inst.n;
    if (own < share)
      return failed("exante_prop",
                    {{"agent", i}, {"own_expectation", to_string(own)}, {"required", to_string(share)}});
  }
  return passed("exante_prop");
}

AuditReport check_stochastic_dominance_half(const RandomizedAllocation& dist, const Instance& inst) {
  const Valuer v(inst);
  for (int i = 0; i < inst.n; ++i) {
    // values[l][j] = v_i(A^l_j)
    std::vector<std::vector<Rational>> values;
    std::set<Rational> thresholds;
    for (const auto& e : dist.support()) {
      auto& row = values.emplace_back();
      for (int j = 0; j < inst.n; ++j) {
        row.push_back(v(i, e.alloc.bundles[j]));
        thresholds.insert(row.back());
      }
    }
    for (const auto& t : thresholds) {
      Rational own = 0;
      for (std::size_t l = 0; l < values.size(); ++l)
        if (values[l][i] >= t) own += dist.support()[l].prob;
      for (int j = 0; j < inst.n; ++j) {
        if (j == i) continue;
        Rational other = 0;
        for (std::size_t l = 0; l < values.size(); ++l)
          if (values[l][j] >= t) other += dist.support()[l].prob;
        if (2 * own < other)
          return failed("stochastic_dominance_half", {{"agent", i},
                                                      {"other", j},
                                                      {"threshold", to_string(t)},
                                                      {"own_probability", to_string(own)},
                                                      {"other_probability", to_string(other)}});
      }
    }
  }
  return passed("stochastic_dominance_half");
}

std::vector<int> EnvyGraph::sources() const {
  std::vector<int> s;
  for (int j = 0; j < n; ++j)
    if (envied_by_count[j] == 0) s.push_back(j);
  return s;
}

bool EnvyGraph::has_edge(int i, int j) const { return std::binary_search(out[i].begin(), out[i].end(), j); }

EnvyGraph envy_graph(const Valuer& v, const IntegralAllocation& a) {
  EnvyGraph g;
  g.n = v.n();
  g.out.assign(g.n, {});
  g.envied_by_count.assign(g.n, 0);
  for (int i = 0; i < g.n; ++i) {
    const Rational own = v(i, a.bundles[i]);
    for (int j = 0; j < g.n; ++j)
      if (i != j && own < v(i, a.bundles[j])) {
        g.out[i].push_back(j);
        ++g.envied_by_count[j];
      }
  }
  return g;
}

json to_json(const AuditReport& r) {
  json out = {{"property", r.property}, {"pass", r.pass}};
  if (!r.witness.is_null()) out["witness"] = r.witness;
  return out;
}

}  // namespace bobw
