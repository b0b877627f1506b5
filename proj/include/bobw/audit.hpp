#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bobw/allocation.hpp"
#include "bobw/instance.hpp"
#include "bobw/lex_algos.hpp"

namespace bobw {

struct AuditReport {
  std::string property;
  bool pass = true;
  nlohmann::json witness;  // null on pass unless the check emits a certificate

  explicit operator bool() const { return pass; }
};

AuditReport check_ef(const Instance& inst, const IntegralAllocation& a);
AuditReport check_ef1(const Instance& inst, const IntegralAllocation& a);
AuditReport check_efx(const Instance& inst, const IntegralAllocation& a);
AuditReport check_efx(const Valuer& v, const IntegralAllocation& a);

// EFX among bundles and nobody envies the pool.
AuditReport check_efx_with_charity(const Instance& inst, const IntegralAllocation& a);
// Additionally |pool| < number of unenvied agents.
AuditReport check_bounded_charity(const Instance& inst, const IntegralAllocation& a);

// Greedy reconstruction of a picking sequence; on pass the witness holds the
// sequence. Requires lexicographic preferences and a complete allocation.
AuditReport check_po_lex(const Instance& inst, const IntegralAllocation& a);
AuditReport check_po_lex(const OrdinalProfile& p, const IntegralAllocation& a);
std::optional<PickingSequence> reconstruct_picking_sequence(const OrdinalProfile& p, const IntegralAllocation& a);

AuditReport check_sdef(const Matrix& x, const std::vector<std::vector<int>>& rankings);

// E[v_i(X_i)] / E[v_i(X_j)]; nullopt when the denominator is zero.
std::optional<Rational> exante_ratio(const RandomizedAllocation& dist, const Instance& inst, int i, int j);
std::optional<Rational> exante_ratio(const RandomizedAllocation& dist, const Valuer& v, int i, int j);

struct PairRatio {
  int i = -1, j = -1;
  std::optional<Rational> ratio;  // nullopt = unbounded
};
// Smallest ratio over ordered pairs; i = -1 when every ratio is unbounded or n = 1.
PairRatio min_exante_ratio(const RandomizedAllocation& dist, const Valuer& v);

AuditReport check_exante_ef(const RandomizedAllocation& dist, const Instance& inst, const Rational& alpha);
// E[v_i(X_i)] >= alpha * v_i(M) / n.
AuditReport check_exante_prop(const RandomizedAllocation& dist, const Instance& inst, const Rational& alpha);

// Pr[v_i(X_i) >= T] >= 1/2 Pr[v_i(X_j) >= T] at every achievable threshold T.
AuditReport check_stochastic_dominance_half(const RandomizedAllocation& dist, const Instance& inst);

// Envy graph: edge i -> j when v_i(X_i) < v_i(X_j).
struct EnvyGraph {
  int n = 0;
  std::vector<std::vector<int>> out;  // ascending targets
  std::vector<int> envied_by_count;

  std::vector<int> sources() const;  // unenvied agents, ascending
  bool has_edge(int i, int j) const;
};

EnvyGraph envy_graph(const Valuer& v, const IntegralAllocation& a);

nlohmann::json to_json(const AuditReport& r);

}  // namespace bobw
