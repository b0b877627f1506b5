#include <doctest.h>

#include "bobw/audit.hpp"
#include "bobw/error.hpp"
#include "bobw/fixtures.hpp"
#include "bobw/lex_algos.hpp"
#include "support.hpp"

using namespace bobw;

namespace {

Rational q(long a, long b = 1) { return make_rational(a, b); }

IntegralAllocation alloc(std::vector<GoodSet> bundles) { return IntegralAllocation{std::move(bundles), {}}; }

}  // namespace

TEST_CASE("picking sequences") {
  CHECK(run_picking_sequence(fixture_a(), {0, 1, 2, 2}) == alloc({{0}, {1}, {2, 3}}));
  CHECK(run_picking_sequence(fixture_d(), {1, 0, 0}) == alloc({{1, 2}, {0}}));
  Instance one;
  one.n = 1;
  one.m = 3;
  one.valuations = {Valuation::lexicographic({2, 0, 1})};
  CHECK(run_picking_sequence(one, {0, 0, 0}) == alloc({{0, 1, 2}}));
  CHECK_THROWS_AS(run_picking_sequence(fixture_d(), {0, 1}), PreconditionError);
}

TEST_CASE("utse on identical rankings is exactly envy-free") {
  const Instance fd = fixture_d();
  const RandomizedAllocation d = utse(fd);
  REQUIRE(d.size() == 2);
  const RandomizedAllocation expect({{q(1, 2), alloc({{0}, {1, 2}})}, {q(1, 2), alloc({{1, 2}, {0}})}});
  CHECK(std::is_permutation(d.support().begin(), d.support().end(), expect.support().begin(),
                            [](const WeightedAllocation& a, const WeightedAllocation& b) {
                              return a.prob == b.prob && a.alloc == b.alloc;
                            }));
  CHECK(exante_ratio(d, fd, 0, 1) == q(1));
  CHECK(exante_ratio(d, fd, 1, 0) == q(1));
  CHECK(expected_value(Valuer(fd), d, 0, 0) == q(7, 2));
}

TEST_CASE("utse with the pinned decomposition of the tight example") {
  const Rational eps(1, 1000);
  const Instance inst = fixture_c(eps);
  const Decomposition pinned = fixture_c_reference_decomposition();
  const UtseRun run = utse_run(inst, &pinned);
  const Rational expect = (3 + 25 * eps / 32) / (Rational(7, 2) + 3 * eps / 4);
  CHECK(exante_ratio(run.distribution, inst, 0, 1) == expect);
  CHECK(expect < Rational(6, 7) + eps);
  CHECK(expect >= Rational(6, 7));

  const UtseRun def = utse_run(inst);
  CHECK(*exante_ratio(def.distribution, inst, 0, 1) >= Rational(6, 7));
  CHECK(*min_exante_ratio(def.distribution, Valuer(inst)).ratio >= Rational(6, 7));

  Decomposition broken = pinned;
  broken.terms[0].weight = q(1, 3);
  CHECK_THROWS_AS(utse_run(inst, &broken), PreconditionError);
}

TEST_CASE("utse support allocations are EFX, PO and come from picking sequences") {
  SplitMix64 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + static_cast<int>(rng.uniform_below(std::uint64_t{4}));
    const int m = 1 + static_cast<int>(rng.uniform_below(std::uint64_t{7}));
    const Instance inst = testing::random_lex_instance(rng, n, m);
    const UtseRun run = utse_run(inst);
    for (const auto& e : run.distribution.support()) {
      CHECK(e.alloc.is_complete(m));
      CHECK(check_efx(inst, e.alloc).pass);
      const auto po = check_po_lex(inst, e.alloc);
      REQUIRE(po.pass);
      const PickingSequence seq = po.witness["sequence"].get<PickingSequence>();
      CHECK(run_picking_sequence(inst, seq) == e.alloc);
    }
    if (run.summary.k) {
      const long k = *run.summary.k;
      const auto min = min_exante_ratio(run.distribution, Valuer(inst));
      if (min.ratio) CHECK(*min.ratio >= make_rational(3 * k, 3 * k + 1));
    }
  }
}

TEST_CASE("uniform permutation on the six-agent example") {
  const Rational eps(1, 1000);
  const Instance inst = fixture_b(eps);
  const RandomizedAllocation d = uniform_permutation_exact(inst);
  const Matrix x = associated_fractional(d, 6, 6);
  const std::vector<long> row1 = {288, 144, 72, 96, 120, 0}, row2 = {0, 576, 24, 48, 72, 0},
                          rest = {108, 0, 156, 144, 132, 180};
  for (int g = 0; g < 6; ++g) {
    CHECK(x[0][g] == q(row1[g], 720));
    CHECK(x[1][g] == q(row2[g], 720));
    for (int i = 2; i < 6; ++i) CHECK(x[i][g] == q(rest[g], 720));
  }
  const Rational expect = (432 + 5808 * eps) / (576 + 528 * eps);
  CHECK(exante_ratio(d, inst, 0, 1) == expect);
  // First order in eps the coefficient is 5412/576, not 5412.
  CHECK(expect != q(3, 4) + 5412 * eps);
  CHECK(expect > q(3, 4) + 9 * eps);
  CHECK(expect < q(3, 4) + q(5412, 576) * eps);
  CHECK(check_exante_ef(d, inst, q(1, 2)).pass);
  CHECK_FALSE(check_exante_ef(d, inst, q(3, 4) + 10 * eps).pass);
}

TEST_CASE("uniform permutation edge cases") {
  Instance one;
  one.n = 1;
  one.m = 3;
  one.valuations = {Valuation::lexicographic({1, 2, 0})};
  const RandomizedAllocation d = uniform_permutation_exact(one);
  REQUIRE(d.size() == 1);
  CHECK(d.support()[0].alloc == alloc({{0, 1, 2}}));
  const IntegralAllocation s = uniform_permutation_sample(fixture_b(), 9);
  CHECK(s.is_complete(6));
  CHECK(s == uniform_permutation_sample(fixture_b(), 9));
}

TEST_CASE("sigma-unenvied sequences") {
  CHECK(sigma_unenvied_sequence(fixture_a(), {0, 1, 2}, {2}) == PickingSequence{0, 1, 2, 2});
  CHECK_THROWS_AS(sigma_unenvied_sequence(fixture_a(), {0, 1, 2}, {1}), PreconditionError);
  CHECK_THROWS_AS(sigma_unenvied_sequence(fixture_a(), {0, 1}, {2, 2}), PreconditionError);
  SplitMix64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + static_cast<int>(rng.uniform_below(std::uint64_t{3}));
    const int m = n + static_cast<int>(rng.uniform_below(std::uint64_t{4}));
    const Instance inst = testing::random_lex_instance(rng, n, m);
    const auto sigma = testing::random_permutation(rng, n);
    // The last picker is never envied: everyone else picked before it.
    const std::vector<int> tail(m - n, sigma.back());
    const PickingSequence seq = sigma_unenvied_sequence(inst, sigma, tail);
    const IntegralAllocation a = run_picking_sequence(inst, seq);
    CHECK(check_efx(inst, a).pass);
    CHECK(check_po_lex(inst, a).pass);
  }
}

TEST_CASE("depround-k2 samples on the tight example") {
  const Instance inst = fixture_c();
  const DepRoundK2Sampler sampler(inst);
  SplitMix64 rng(42);
  for (int r = 0; r < 500; ++r) {
    const auto d = sampler.draw(rng);
    CHECK(d.a != d.b);
    CHECK(d.alloc.is_complete(inst.m));
    CHECK(check_efx(inst, d.alloc).pass);
    CHECK(check_po_lex(inst, d.alloc).pass);
  }
  CHECK(depround_k2_sample(inst, 5) == depround_k2_sample(inst, 5));
  // FIX-A has k = 1; a square instance has m = n.
  const Instance a = fixture_a();
  CHECK_THROWS_AS(DepRoundK2Sampler{a}, PreconditionError);
  Instance square;
  square.n = 2;
  square.m = 2;
  square.valuations = {Valuation::lexicographic({0, 1}), Valuation::lexicographic({1, 0})};
  CHECK_THROWS_AS(DepRoundK2Sampler{square}, PreconditionError);
}

TEST_CASE("depround-k2 still partitions when two holders share a last good") {
  SplitMix64 rng(1);
  int found = 0;
  for (int trial = 0; trial < 4000 && found < 5; ++trial) {
    const Instance inst = testing::random_lex_instance(rng, 3, 4 + static_cast<int>(rng.uniform_below(std::uint64_t{3})));
    const TraceSummary s = summarize(run_eating(inst, q(1)));
    if (s.k != 2 || s.L.size() == static_cast<std::size_t>(inst.n)) continue;
    ++found;
    const DepRoundK2Sampler sampler(inst);
    for (int r = 0; r < 200; ++r) {
      const auto d = sampler.draw(rng);
      CHECK(d.alloc.is_complete(inst.m));
      CHECK(check_efx(inst, d.alloc).pass);
    }
  }
  CHECK(found > 0);
}

TEST_CASE("lex-bobw dispatch") {
  const LexBobwResult c = solve_lex_bobw(fixture_c(), 7);
  CHECK(c.algorithm == "depround-k2");
  CHECK(c.sample.has_value());
  CHECK_THROWS_AS(solve_lex_bobw(fixture_c(), std::nullopt), PreconditionError);
  const LexBobwResult d = solve_lex_bobw(fixture_d(), std::nullopt);
  CHECK(d.algorithm == "utse");
  CHECK(d.k == 1);
  CHECK_THROWS_AS(solve_lex_bobw(fixture_e(), 1), PreconditionError);
}

TEST_CASE("probabilistic serial baseline on the impossibility instance") {
  const Instance inst = fixture_a();
  const PsBaseline ps = ps_baseline(inst);
  std::vector<std::vector<int>> rankings;
  for (int i = 0; i < inst.n; ++i) rankings.push_back(ordinal_ranking(inst, i));
  CHECK(check_sdef(strip_dummies(ps.X, inst.m), rankings).pass);
  for (const auto& e : ps.distribution.support()) {
    CHECK(check_ef1(inst, e.alloc).pass);
    CHECK(check_po_lex(inst, e.alloc).pass);
  }
  // The mixture is the stripped full-run eating matrix.
  CHECK(associated_fractional(ps.distribution, inst.n, inst.m) == strip_dummies(ps.X, inst.m));
}
