#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bobw/goods.hpp"
#include "bobw/rational.hpp"

namespace bobw {

enum class ValuationKind { Additive, Lexicographic, Table };

inline constexpr int kMaxTableGoods = 20;

struct Valuation {
  ValuationKind kind = ValuationKind::Additive;
  std::vector<Rational> values;      // Additive: one per good
  std::vector<int> ranking;          // Lexicographic: most preferred first
  std::vector<std::int64_t> table;   // Table: indexed by bundle bitmask
  bool subadditive = false;          // Table only; verified by validation

  static Valuation additive(std::vector<Rational> values);
  static Valuation additive_ints(const std::vector<long>& values);
  static Valuation lexicographic(std::vector<int> ranking);
  static Valuation table_of(std::vector<std::int64_t> table, bool subadditive = false);
};

struct Instance {
  int n = 0;
  int m = 0;
  std::vector<Valuation> valuations;
  std::vector<std::string> labels;
  std::optional<Rational> epsilon;  // recorded for fixtures built from a parameter
};

struct ValidationReport {
  bool valid = true;
  std::vector<std::string> errors;
  std::vector<std::string> kinds;  // per agent
};

ValidationReport validate_instance(const Instance& inst);
// Throws PreconditionError carrying the first validation error.
void require_valid(const Instance& inst);

std::string good_label(const Instance& inst, int g);

std::vector<BigInt> canonical_lex_values(const std::vector<int>& ranking);
bool is_lexicographic_additive(const std::vector<Rational>& values);
bool is_lexicographic_additive(const std::vector<long>& values);

enum class Ordering { Less, Equal, Greater };
Ordering lex_compare_bundles(const std::vector<int>& ranking, const GoodSet& s, const GoodSet& t);

Rational value_of(const Instance& inst, int agent, const GoodSet& bundle);

// Cached per-agent valuation used by the hot loops of the algorithms and audits.
class Valuer {
 public:
  explicit Valuer(const Instance& inst);
  Valuer(Instance&&) = delete;  // holds a pointer; the instance must outlive it
  const Instance& instance() const { return *inst_; }
  int n() const { return inst_->n; }
  int m() const { return inst_->m; }
  Rational operator()(int agent, const GoodSet& bundle) const;
  // Additive and lexicographic agents only.
  const Rational& good_value(int agent, int g) const;
  bool is_additive_like(int agent) const;

 private:
  const Instance* inst_;
  std::vector<std::vector<Rational>> goods_;  // empty row for Table agents
};

// Strict ordinal ranking: the lexicographic ranking itself, or additive values
// sorted decreasingly. Throws PreconditionError on ties or Table agents.
std::vector<int> ordinal_ranking(const Instance& inst, int agent);

// True when every agent's preferences are lexicographic (Lexicographic kind, or
// Additive with lexicographic-consistent values).
bool has_lexicographic_preferences(const Instance& inst);

// Every valuation has nonnegative integer values (charity algorithms need this).
bool has_integer_valuations(const Instance& inst);

bool is_subadditive(const Instance& inst, int agent);

}  // namespace bobw
