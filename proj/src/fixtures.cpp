#include "bobw/fixtures.hpp"

#include <algorithm>
#include <cctype>

#include "bobw/error.hpp"

namespace bobw {

Rational default_epsilon() { return Rational(1, 1000); }

namespace {

Instance labelled(int n, int m, std::vector<Valuation> vals) {
  Instance inst;
  inst.n = n;
  inst.m = m;
  inst.valuations = std::move(vals);
  for (int g = 0; g < m; ++g) inst.labels.push_back("g" + std::to_string(g + 1));
  return inst;
}

void require_lex_consistent(const Instance& inst) {
  require_valid(inst);
  for (const auto& v : inst.valuations)
    if (!is_lexicographic_additive(v.values))
      throw PreconditionError("epsilon too large: fixture values are no longer lexicographic");
}

}  // namespace

Instance fixture_a() {
  return labelled(3, 4,
                  {Valuation::lexicographic({0, 2, 3, 1}), Valuation::lexicographic({0, 1, 3, 2}),
                   Valuation::lexicographic({1, 2, 3, 0})});
}

Instance fixture_b(const Rational& eps) {
  if (eps <= 0) throw PreconditionError("epsilon must be positive");
  const Rational big = 1 + 16 * eps;
  std::vector<Valuation> vals;
  vals.push_back(Valuation::additive({big, 1, 8 * eps, 4 * eps, 2 * eps, eps}));
  vals.push_back(Valuation::additive({1, big, 8 * eps, 4 * eps, 2 * eps, eps}));
  for (int i = 0; i < 4; ++i) vals.push_back(Valuation::additive({1, eps, 8 * eps, 4 * eps, 2 * eps, big}));
  Instance inst = labelled(6, 6, std::move(vals));
  inst.epsilon = eps;
  require_lex_consistent(inst);
  return inst;
}

Instance fixture_c(const Rational& eps) {
  if (eps <= 0) throw PreconditionError("epsilon must be positive");
  const Rational e2 = eps / 2, e4 = eps / 4, e8 = eps / 8;
  std::vector<Valuation> vals;
  vals.push_back(Valuation::additive({4 + eps, 2 + e2, 2, e4, e8}));
  vals.push_back(Valuation::additive({4 + eps, 2 + e2, 2, e4, e8}));
  vals.push_back(Valuation::additive({e8, e4, 2 + e2, 4 + eps, 2}));
  vals.push_back(Valuation::additive({e8, e4, 2, 4 + eps, 2 + e2}));
  Instance inst = labelled(4, 5, std::move(vals));
  inst.epsilon = eps;
  require_lex_consistent(inst);
  return inst;
}

Instance fixture_d() {
  return labelled(2, 3, {Valuation::lexicographic({0, 1, 2}), Valuation::lexicographic({0, 1, 2})});
}

Instance fixture_e() {
  // Additive tables over {a, b, c}; bit g is good g.
  auto table = [](long a, long b, long c) {
    std::vector<std::int64_t> t(8);
    for (int s = 0; s < 8; ++s) t[s] = (s & 1 ? a : 0) + (s & 2 ? b : 0) + (s & 4 ? c : 0);
    return Valuation::table_of(std::move(t), true);
  };
  Instance inst;
  inst.n = 2;
  inst.m = 3;
  inst.labels = {"a", "b", "c"};
  inst.valuations = {table(3, 2, 1), table(3, 1, 2)};
  return inst;
}

std::optional<Instance> fixture_by_name(const std::string& name, const std::optional<Rational>& eps) {
  std::string key;
  for (char c : name)
    if (c != '-' && c != '_') key += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  const Rational e = eps.value_or(default_epsilon());
  if (key == "FIXA") return fixture_a();
  if (key == "FIXB") return fixture_b(e);
  if (key == "FIXC") return fixture_c(e);
  if (key == "FIXD") return fixture_d();
  if (key == "FIXE") return fixture_e();
  return std::nullopt;
}

Decomposition fixture_c_reference_decomposition() {
  Decomposition d;
  d.rows = 4;
  d.cols = 5;
  d.terms.push_back({Rational(1, 2), {0, 1, 3, 4}});
  d.terms.push_back({Rational(1, 2), {1, 0, 2, 3}});
  return d;
}

}  // namespace bobw
