#include <doctest.h>

#include "bobw/charity.hpp"
#include "bobw/error.hpp"
#include "bobw/fixtures.hpp"
#include "bobw/json_io.hpp"
#include "bobw/lex_algos.hpp"

using namespace bobw;

TEST_CASE("rational json") {
  CHECK(rational_from_json(json(3)) == 3);
  CHECK(rational_from_json(json("-6/4")) == Rational(-3, 2));
  CHECK_THROWS_AS(rational_from_json(json("1/0")), PreconditionError);
  CHECK_THROWS_AS(rational_from_json(json(0.5)), PreconditionError);
}

TEST_CASE("instance round trip") {
  for (const char* name : {"FIX-A", "fix-b", "FIX_C", "fixd", "FIX-E"}) {
    const Instance inst = load_instance(name);
    const Instance back = instance_from_json(to_json(inst));
    CHECK(to_json(back) == to_json(inst));
  }
  CHECK(load_instance("FIX-C", Rational(1, 100)).epsilon == Rational(1, 100));
  CHECK_THROWS_AS(load_instance("FIX-Z"), PreconditionError);
}

TEST_CASE("instance json validation") {
  const json bad = {{"n", 1}, {"m", 2}, {"valuations", {{{"kind", "additive"}, {"values", {1}}}}}};
  // Parsing keeps malformed instances so validation can report every error.
  const ValidationReport r = validate_instance(instance_from_json(bad));
  CHECK_FALSE(r.valid);
  CHECK_FALSE(r.errors.empty());
  CHECK_THROWS_AS(load_instance("/nonexistent/instance.json"), PreconditionError);
}

TEST_CASE("allocation and distribution round trips") {
  const IntegralAllocation a{{{0}, {1, 2}}, {3}};
  CHECK(allocation_from_json(to_json(a)) == a);

  const RandomizedAllocation u = utse(fixture_c());
  const RandomizedAllocation back = randomized_from_json(to_json(u));
  REQUIRE(back.support().size() == u.support().size());
  for (std::size_t l = 0; l < u.support().size(); ++l) {
    CHECK(back.support()[l].prob == u.support()[l].prob);
    CHECK(back.support()[l].alloc == u.support()[l].alloc);
  }

  const Matrix x = {{Rational(1, 3), Rational(2, 3)}, {Rational(0), Rational(1)}};
  CHECK(matrix_from_json(matrix_to_json(x)) == x);
}

TEST_CASE("decomposition round trip") {
  const Decomposition d = fixture_c_reference_decomposition();
  const Decomposition back = decomposition_from_json(to_json(d), d.rows, d.cols);
  REQUIRE(back.terms.size() == d.terms.size());
  for (std::size_t t = 0; t < d.terms.size(); ++t) {
    CHECK(back.terms[t].weight == d.terms[t].weight);
    CHECK(back.terms[t].column_of_row == d.terms[t].column_of_row);
  }
}

TEST_CASE("swap trace round trip") {
  const Instance e = fixture_e();
  const SwapTrace t = random_charity_swap(e, 12);
  const SwapTrace back = swap_trace_from_json(to_json(t));
  CHECK(back.final_alloc == t.final_alloc);
  REQUIRE(back.steps.size() == t.steps.size());
  for (std::size_t s = 0; s < t.steps.size(); ++s) {
    CHECK(back.steps[s].Q == t.steps[s].Q);
    CHECK(back.steps[s].H == t.steps[s].H);
    CHECK(back.steps[s].k == t.steps[s].k);
  }
  CHECK(replay_swap_trace(e, back) == t.final_alloc);
}
