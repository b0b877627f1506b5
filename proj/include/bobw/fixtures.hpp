#pragma once

#include <optional>
#include <string>

#include "bobw/instance.hpp"
#include "bobw/rounding.hpp"

namespace bobw {

Rational default_epsilon();  // 1/1000

// Impossibility instance: 3 agents, 4 goods, lexicographic.
Instance fixture_a();
// Uniform Permutation counterexample: 6 agents, 6 goods, additive in epsilon.
Instance fixture_b(const Rational& eps = default_epsilon());
// UTSE tightness example: 4 agents, 5 goods, additive in epsilon.
Instance fixture_c(const Rational& eps = default_epsilon());
// Two agents with the same ranking over 3 goods.
Instance fixture_d();
// Two additive agents over {a, b, c} written as tables.
Instance fixture_e();

std::optional<Instance> fixture_by_name(const std::string& name, const std::optional<Rational>& eps = std::nullopt);

// A fixed two-term decomposition of the FIX-C eating matrix.
Decomposition fixture_c_reference_decomposition();

}  // namespace bobw
