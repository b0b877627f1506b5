#include "bobw/instance.hpp"

#include <algorithm>
#include <numeric>

#include "bobw/error.hpp"

namespace bobw {

Valuation Valuation::additive(std::vector<Rational> values) {
  Valuation v;
  v.kind = ValuationKind::Additive;
  v.values = std::move(values);
  return v;
}

Valuation Valuation::additive_ints(const std::vector<long>& values) {
  std::vector<Rational> vals;
  for (long x : values) vals.emplace_back(x);
  return additive(std::move(vals));
}

Valuation Valuation::lexicographic(std::vector<int> ranking) {
  Valuation v;
  v.kind = ValuationKind::Lexicographic;
  v.ranking = std::move(ranking);
  return v;
}

Valuation Valuation::table_of(std::vector<std::int64_t> table, bool subadditive) {
  Valuation v;
  v.kind = ValuationKind::Table;
  v.table = std::move(table);
  v.subadditive = subadditive;
  return v;
}

namespace {

const char* kind_name(ValuationKind k) {
  switch (k) {
    case ValuationKind::Additive: return "additive";
    case ValuationKind::Lexicographic: return "lexicographic";
    case ValuationKind::Table: return "table";
  }
  return "?";
}

void check_table(const Valuation& v, int m, const std::string& who, std::vector<std::string>& errors) {
  if (m > kMaxTableGoods) {
    errors.push_back(who + ": table valuations support at most " + std::to_string(kMaxTableGoods) + " goods");
    return;
  }
  const std::uint64_t size = std::uint64_t{1} << m;
  if (v.table.size() != size) {
    errors.push_back(who + ": table must have 2^m = " + std::to_string(size) + " entries");
    return;
  }
  if (v.table[0] != 0) {
    errors.push_back(who + ": empty-set value nonzero");
    return;
  }
  for (std::uint64_t s = 0; s < size; ++s) {
    if (v.table[s] < 0) {
      errors.push_back(who + ": negative value for bundle mask " + std::to_string(s));
      return;
    }
    for (int g = 0; g < m; ++g) {
      if ((s >> g & 1) && v.table[s ^ (std::uint64_t{1} << g)] > v.table[s]) {
        errors.push_back(who + ": non-monotone (mask " + std::to_string(s ^ (std::uint64_t{1} << g)) +
                         " worth more than its superset " + std::to_string(s) + ")");
        return;
      }
    }
  }
  if (!v.subadditive) return;
  // Disjoint pairs suffice given monotonicity.
  for (std::uint64_t s = 1; s < size; ++s) {
    const std::uint64_t rest = (size - 1) & ~s;
    for (std::uint64_t t = rest; t; t = (t - 1) & rest) {
      if (v.table[s] + v.table[t] < v.table[s | t]) {
        errors.push_back(who + ": subadditivity flag set but v(" + std::to_string(s) + ") + v(" +
                         std::to_string(t) + ") < v(union)");
        return;
      }
    }
  }
}

}  // namespace

ValidationReport validate_instance(const Instance& inst) {
  ValidationReport rep;
  auto& errors = rep.errors;
  if (inst.n < 1) errors.push_back("n must be at least 1");
  if (inst.m < 1) errors.push_back("m must be at least 1");
  if (static_cast<int>(inst.valuations.size()) != inst.n)
    errors.push_back("expected " + std::to_string(inst.n) + " valuations, got " +
                     std::to_string(inst.valuations.size()));
  if (!inst.labels.empty() && static_cast<int>(inst.labels.size()) != inst.m)
    errors.push_back("labels must have length m");
  if (errors.empty()) {
    for (int i = 0; i < inst.n; ++i) {
      const Valuation& v = inst.valuations[i];
      const std::string who = "agent " + std::to_string(i);
      rep.kinds.push_back(kind_name(v.kind));
      switch (v.kind) {
        case ValuationKind::Additive:
          if (static_cast<int>(v.values.size()) != inst.m)
            errors.push_back(who + ": additive values must have length m");
          for (const auto& x : v.values)
            if (x < 0) {
              errors.push_back(who + ": negative additive value");
              break;
            }
          break;
        case ValuationKind::Lexicographic: {
          std::vector<int> sorted = v.ranking;
          std::sort(sorted.begin(), sorted.end());
          std::vector<int> expect(inst.m);
          std::iota(expect.begin(), expect.end(), 0);
          if (sorted != expect) errors.push_back(who + ": ranking is not a permutation of the goods");
          break;
        }
        case ValuationKind::Table:
          check_table(v, inst.m, who, errors);
          break;
      }
    }
  }
  rep.valid = errors.empty();
  return rep;
}

void require_valid(const Instance& inst) {
  auto rep = validate_instance(inst);
  if (!rep.valid) throw PreconditionError("invalid instance: " + rep.errors.front());
}

std::string good_label(const Instance& inst, int g) {
  if (g >= 0 && g < static_cast<int>(inst.labels.size())) return inst.labels[g];
  return "g" + std::to_string(g + 1);
}

std::vector<BigInt> canonical_lex_values(const std::vector<int>& ranking) {
  const int m = static_cast<int>(ranking.size());
  std::vector<BigInt> out(m);
  for (int r = 0; r < m; ++r) {
    BigInt v = 1;
    v <<= (m - 1 - r);
    out.at(ranking[r]) = v;
  }
  return out;
}

bool is_lexicographic_additive(const std::vector<Rational>& values) {
  std::vector<Rational> v = values;
  std::sort(v.begin(), v.end());
  Rational below = 0;
  for (const auto& x : v) {
    if (x <= below) return false;
    below += x;
  }
  return true;
}

bool is_lexicographic_additive(const std::vector<long>& values) {
  std::vector<Rational> v;
  for (long x : values) v.emplace_back(x);
  return is_lexicographic_additive(v);
}

Ordering lex_compare_bundles(const std::vector<int>& ranking, const GoodSet& s, const GoodSet& t) {
  for (int g : ranking) {
    const bool in_s = contains(s, g), in_t = contains(t, g);
    if (in_s != in_t) return in_s ? Ordering::Greater : Ordering::Less;
  }
  return Ordering::Equal;
}

namespace {

void check_bundle(const Instance& inst, int agent, const GoodSet& bundle) {
  if (agent < 0 || agent >= inst.n) throw PreconditionError("agent index out of range");
  for (int g : bundle)
    if (g < 0 || g >= inst.m) throw PreconditionError("good index out of range");
}

}  // namespace

Rational value_of(const Instance& inst, int agent, const GoodSet& bundle) {
  check_bundle(inst, agent, bundle);
  const Valuation& v = inst.valuations[agent];
  Rational total = 0;
  switch (v.kind) {
    case ValuationKind::Additive:
      for (int g : bundle) total += v.values[g];
      break;
    case ValuationKind::Lexicographic: {
      auto canon = canonical_lex_values(v.ranking);
      for (int g : bundle) total += canon[g];
      break;
    }
    case ValuationKind::Table:
      total = Rational(static_cast<long>(v.table[to_mask(bundle)]));
      break;
  }
  return total;
}

Valuer::Valuer(const Instance& inst) : inst_(&inst), goods_(inst.n) {
  for (int i = 0; i < inst.n; ++i) {
    const Valuation& v = inst.valuations[i];
    if (v.kind == ValuationKind::Additive) {
      goods_[i] = v.values;
    } else if (v.kind == ValuationKind::Lexicographic) {
      for (const auto& x : canonical_lex_values(v.ranking)) goods_[i].emplace_back(x);
    }
  }
}

bool Valuer::is_additive_like(int agent) const {
  return inst_->valuations[agent].kind != ValuationKind::Table;
}

const Rational& Valuer::good_value(int agent, int g) const {
  if (!is_additive_like(agent)) throw PreconditionError("good_value needs an additive agent");
  return goods_[agent][g];
}

Rational Valuer::operator()(int agent, const GoodSet& bundle) const {
  if (!is_additive_like(agent))
    return Rational(static_cast<long>(inst_->valuations[agent].table[to_mask(bundle)]));
  Rational total = 0;
  for (int g : bundle) total += goods_[agent][g];
  return total;
}

std::vector<int> ordinal_ranking(const Instance& inst, int agent) {
  const Valuation& v = inst.valuations.at(agent);
  if (v.kind == ValuationKind::Lexicographic) return v.ranking;
  if (v.kind == ValuationKind::Table)
    throw PreconditionError("agent " + std::to_string(agent) + " has a table valuation; ordinal preferences undefined");
  std::vector<int> order(inst.m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return v.values[a] > v.values[b]; });
  for (int r = 1; r < inst.m; ++r)
    if (v.values[order[r]] == v.values[order[r - 1]])
      throw PreconditionError("agent " + std::to_string(agent) + " has tied good values; ordinal ranking undefined");
  return order;
}

bool has_lexicographic_preferences(const Instance& inst) {
  for (const auto& v : inst.valuations) {
    if (v.kind == ValuationKind::Table) return false;
    if (v.kind == ValuationKind::Additive && !is_lexicographic_additive(v.values)) return false;
  }
  return true;
}

bool has_integer_valuations(const Instance& inst) {
  for (const auto& v : inst.valuations)
    if (v.kind == ValuationKind::Additive)
      for (const auto& x : v.values)
        if (!is_integer(x)) return false;
  return true;
}

bool is_subadditive(const Instance& inst, int agent) {
  const Valuation& v = inst.valuations.at(agent);
  if (v.kind != ValuationKind::Table) return true;  // additive valuations are subadditive
  if (inst.m > kMaxTableGoods) return false;
  const std::uint64_t size = std::uint64_t{1} << inst.m;
  for (std::uint64_t s = 1; s < size; ++s) {
    const std::uint64_t rest = (size - 1) & ~s;
    for (std::uint64_t t = rest; t; t = (t - 1) & rest)
      if (v.table[s] + v.table[t] < v.table[s | t]) return false;
  }
  return true;
}

}  // namespace bobw
