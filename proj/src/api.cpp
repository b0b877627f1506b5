#include "bobw/api.hpp"

#include <cmath>
#include <memory>

#include "bobw/audit.hpp"
#include "bobw/charity.hpp"
#include "bobw/error.hpp"
#include "bobw/fixtures.hpp"
#include "bobw/json_io.hpp"
#include "bobw/lex_algos.hpp"

namespace bobw {

namespace {

// Accumulates audit records; the result fails if any record fails.
struct Audits {
  json records = json::array();
  bool pass = true;

  void add(const AuditReport& r, std::optional<std::size_t> support_index = std::nullopt) {
    json j = to_json(r);
    if (support_index) j["support_index"] = *support_index;
    records.push_back(std::move(j));
    pass = pass && r.pass;
  }

  // One record per property over a whole distribution: the first failure or a pass.
  template <class Check>
  void over_support(const RandomizedAllocation& d, const std::string& property, Check check) {
    for (std::size_t l = 0; l < d.size(); ++l) {
      AuditReport r = check(d.support()[l].alloc);
      if (!r.pass) {
        add(r, l);
        return;
      }
    }
    records.push_back({{"property", property}, {"pass", true}, {"support_size", d.size()}});
  }

  int status() const { return pass ? kExitPass : kExitPropertyFail; }
};

json optional_ratio(const std::optional<Rational>& r) { return r ? json(to_string(*r)) : json(nullptr); }

json min_ratio_json(const RandomizedAllocation& d, const Instance& inst) {
  const PairRatio p = min_exante_ratio(d, Valuer(inst));
  if (p.i < 0) return nullptr;
  return {{"i", p.i}, {"j", p.j}, {"ratio", optional_ratio(p.ratio)}};
}

void lex_expost_audits(Audits& audits, const Instance& inst, const RandomizedAllocation& d) {
  audits.over_support(d, "efx", [&](const IntegralAllocation& a) { return check_efx(inst, a); });
  audits.over_support(d, "po_lex", [&](const IntegralAllocation& a) { return check_po_lex(inst, a); });
}

std::uint64_t need_seed(const std::optional<std::uint64_t>& seed, const std::string& what) {
  if (!seed) throw PreconditionError("seed required for samplers (" + what + ")");
  return *seed;
}

CommandResult utse_result(const Instance& inst) {
  const UtseRun run = utse_run(inst);
  Audits audits;
  lex_expost_audits(audits, inst, run.distribution);
  json body = {{"algorithm", "utse"},
               {"padded", run.padded},
               {"eating", to_json(run.summary)},
               {"decomposition", to_json(run.decomposition)},
               {"distribution", to_json(run.distribution)},
               {"min_exante_ratio", min_ratio_json(run.distribution, inst)}};
  if (run.summary.k) {
    const long k = *run.summary.k;
    body["k"] = k;
    const Rational alpha = k == 1 ? Rational(1) : make_rational(3 * k, 3 * k + 1);
    audits.add(check_exante_ef(run.distribution, inst, alpha));
  }
  body["audits"] = audits.records;
  return {body, audits.status()};
}

CommandResult lex_sample_result(const Instance& inst, const std::string& algorithm, const IntegralAllocation& a) {
  Audits audits;
  audits.add(check_efx(inst, a));
  audits.add(check_po_lex(inst, a));
  return {{{"algorithm", algorithm}, {"allocation", to_json(a)}, {"audits", audits.records}}, audits.status()};
}

json steps_json(const std::vector<CharityStep>& steps) {
  json out = json::array();
  for (const auto& s : steps)
    out.push_back({{"phase", phase_name(s.phase)}, {"welfare", to_string(s.welfare)}, {"pool_size", s.pool_size}});
  return out;
}

IntegralAllocation allocation_input(const json& j) {
  if (j.contains("allocation")) return allocation_from_json(j.at("allocation"));
  return allocation_from_json(j);
}

RandomizedAllocation distribution_input(const json& j) {
  if (j.contains("distribution")) return randomized_from_json(j.at("distribution"));
  if (j.contains("support")) return randomized_from_json(j);
  return point_mass(allocation_input(j));
}

json certificate_json(const FeasibilityResult& r) {
  json rows = json::array();
  for (std::size_t c = 0; c < r.system.size(); ++c) {
    if (r.farkas_multipliers[c] == 0) continue;
    json coeffs = json::array();
    for (const auto& a : r.system[c].coeffs) coeffs.push_back(to_string(a));
    rows.push_back({{"multiplier", to_string(r.farkas_multipliers[c])},
                    {"constraint", r.system[c].origin},
                    {"coeffs", coeffs},
                    {"constant", to_string(r.system[c].constant)}});
  }
  return {{"combination", rows}, {"contradiction", to_string(r.contradiction)}};
}

bool certificate_valid(const FeasibilityResult& r) {
  if (r.feasible || r.farkas_multipliers.size() != r.system.size()) return false;
  for (const auto& y : r.farkas_multipliers)
    if (y < 0) return false;
  const LinearConstraint c = combine(r.system, r.farkas_multipliers);
  for (const auto& a : c.coeffs)
    if (a != 0) return false;
  return c.constant < 0;
}

json feasibility_json(const FeasibilityResult& r) {
  json out = {{"feasible", r.feasible}, {"constraints", r.system.size()}};
  if (r.feasible) {
    json w = json::array();
    for (const auto& x : r.weights) w.push_back(to_string(x));
    out["weights"] = w;
  } else {
    out["certificate"] = certificate_json(r);
    out["certificate_valid"] = certificate_valid(r);
  }
  return out;
}

Matrix integer_table(const std::vector<std::vector<long>>& rows, long den) {
  Matrix x;
  for (const auto& r : rows) {
    auto& out = x.emplace_back();
    for (long v : r) out.push_back(make_rational(v, den));
  }
  return x;
}

// Entry-by-entry differences, as {row, col, got, expected}.
json matrix_diff(const Matrix& got, const Matrix& expected) {
  json diff = json::array();
  for (std::size_t i = 0; i < expected.size(); ++i)
    for (std::size_t g = 0; g < expected[i].size(); ++g) {
      const bool present = i < got.size() && g < got[i].size();
      if (!present || got[i][g] != expected[i][g])
        diff.push_back({{"row", i},
                        {"col", g},
                        {"got", present ? json(to_string(got[i][g])) : json(nullptr)},
                        {"expected", to_string(expected[i][g])}});
    }
  return diff;
}

CommandResult repro_impossibility() {
  const Instance inst = fixture_a();
  const std::vector<IntegralAllocation> listed = {
      {{{0}, {1}, {2, 3}}, {}}, {{{0}, {2, 3}, {1}}, {}}, {{{2}, {0}, {1, 3}}, {}}, {{{2, 3}, {0}, {1}}, {}}};
  std::vector<IntegralAllocation> sorted_listed = listed;
  std::sort(sorted_listed.begin(), sorted_listed.end());

  const auto efx = enumerate_efx(inst);
  json allocs = json::array();
  for (const auto& a : efx) allocs.push_back({{"bundles", a.bundles}, {"labelled", describe(a, &inst)}});
  const FeasibilityResult fm = sdef_feasibility(efx, ordinal_profile(inst).rankings, inst.m);

  const bool match = efx == sorted_listed;
  const bool ok = match && !fm.feasible && certificate_valid(fm);
  json body = {{"scenario", "impossibility"},
               {"efx_allocations", allocs},
               {"count", efx.size()},
               {"matches_reference", match},
               {"sdef_mixture", feasibility_json(fm)},
               {"summary", std::to_string(efx.size()) + " EFX allocations; sd-EF mixture " +
                               (fm.feasible ? "feasible" : "infeasible")}};
  if (!match) {
    json expected = json::array();
    for (const auto& a : sorted_listed) expected.push_back(describe(a, &inst));
    body["expected"] = expected;
  }
  return {body, ok ? kExitPass : kExitPropertyFail};
}

CommandResult repro_example_4_1(const Rational& eps) {
  const Instance inst = fixture_b(eps);
  const RandomizedAllocation d = uniform_permutation_exact(inst);
  const Matrix x = associated_fractional(d, inst.n, inst.m);
  const std::vector<long> rest = {108, 0, 156, 144, 132, 180};
  const Matrix expected = integer_table({{288, 144, 72, 96, 120, 0}, {0, 576, 24, 48, 72, 0}, rest, rest, rest, rest}, 720);
  const json diff = matrix_diff(x, expected);

  const Rational closed = (432 + 5808 * eps) / (576 + 528 * eps);
  const auto ratio = exante_ratio(d, inst, 0, 1);
  const bool ratio_ok = ratio && *ratio == closed;
  const bool half = check_exante_ef(d, inst, Rational(1, 2)).pass;
  json body = {{"scenario", "example-4-1"},
               {"epsilon", to_string(eps)},
               {"support_size", d.size()},
               {"fractional", matrix_to_json(x)},
               {"matrix_matches", diff.empty()},
               {"ratio_1_2", optional_ratio(ratio)},
               {"ratio_closed_form", to_string(closed)},
               {"ratio_matches", ratio_ok},
               {"ratio_decimal", ratio ? ratio->get_d() : 0.0},
               {"exante_half_ef", half}};
  if (!diff.empty()) body["diff"] = diff;
  return {body, diff.empty() && ratio_ok && half ? kExitPass : kExitPropertyFail};
}

CommandResult repro_utse_tight(const Rational& eps) {
  const Instance inst = fixture_c(eps);
  const Decomposition pinned = fixture_c_reference_decomposition();
  const UtseRun fixed = utse_run(inst, &pinned);
  const UtseRun def = utse_run(inst);
  const Rational h(1, 2), z(0);
  const Matrix expected = {{h, h, z, z, z}, {h, h, z, z, z}, {z, z, h, h, z}, {z, z, z, h, h}};
  const json diff = matrix_diff(fixed.summary.X, expected);

  const Rational closed = (3 + 25 * eps / 32) / (Rational(7, 2) + 3 * eps / 4);
  const auto pinned_ratio = exante_ratio(fixed.distribution, inst, 0, 1);
  const auto default_ratio = exante_ratio(def.distribution, inst, 0, 1);
  const PairRatio def_min = min_exante_ratio(def.distribution, Valuer(inst));
  const Rational six_sevenths(6, 7);
  const bool k_ok = fixed.summary.k == 2;
  const bool pinned_ok = pinned_ratio && *pinned_ratio == closed;
  const bool default_ok = default_ratio && *default_ratio >= six_sevenths && def_min.ratio && *def_min.ratio >= six_sevenths;
  json body = {{"scenario", "utse-tight"},
               {"epsilon", to_string(eps)},
               {"eating_matrix", matrix_to_json(fixed.summary.X)},
               {"matrix_matches", diff.empty()},
               {"k", fixed.summary.k ? json(*fixed.summary.k) : json(nullptr)},
               {"pinned_ratio_1_2", optional_ratio(pinned_ratio)},
               {"pinned_closed_form", to_string(closed)},
               {"pinned_matches", pinned_ok},
               {"default_ratio_1_2", optional_ratio(default_ratio)},
               {"default_min_ratio", optional_ratio(def_min.ratio)},
               {"default_at_least_6_7", default_ok}};
  if (!diff.empty()) body["diff"] = diff;
  return {body, diff.empty() && k_ok && pinned_ok && default_ok ? kExitPass : kExitPropertyFail};
}

CommandResult repro_ps_baseline(const Instance& inst) {
  require_lexicographic(inst);
  const PsBaseline ps = ps_baseline(inst);
  const OrdinalProfile p = ordinal_profile(inst);
  const OrdinalProfile pp = padded(p, ps.trace.m);
  Audits audits;
  audits.add(check_sdef(ps.X, pp.rankings));
  audits.over_support(ps.distribution, "ef1", [&](const IntegralAllocation& a) { return check_ef1(inst, a); });
  audits.over_support(ps.distribution, "picking_sequence",
                      [&](const IntegralAllocation& a) { return check_po_lex(p, a); });
  json body = {{"scenario", "ps-baseline"},
               {"instance", to_json(inst)},
               {"eating", to_json(ps.trace)},
               {"X", matrix_to_json(ps.X)},
               {"terms", ps.decomposition.terms.size()},
               {"distribution", to_json(ps.distribution)},
               {"audits", audits.records}};
  return {body, audits.status()};
}

}  // namespace

Padding parse_padding(const std::string& s) {
  if (s == "none") return Padding::None;
  if (s == "agents") return Padding::ToAgents;
  if (s == "multiple") return Padding::ToMultipleOfAgents;
  throw PreconditionError("padding must be none, agents or multiple, got '" + s + "'");
}

CommandResult cmd_validate(const Instance& inst) {
  const ValidationReport r = validate_instance(inst);
  json body = {{"valid", r.valid}, {"errors", r.errors}, {"kinds", r.kinds}};
  if (r.valid) {
    body["lexicographic"] = has_lexicographic_preferences(inst);
    body["integer_valued"] = has_integer_valuations(inst);
    std::vector<bool> sub;
    for (int i = 0; i < inst.n; ++i) sub.push_back(is_subadditive(inst, i));
    body["subadditive"] = sub;
  }
  return {body, r.valid ? kExitPass : kExitPropertyFail};
}

CommandResult cmd_eat(const Instance& inst, const Rational& duration, Padding pad) {
  require_valid(inst);
  const EatingTrace t = run_eating(inst, duration, pad);
  return {{{"trace", to_json(t)}, {"summary", to_json(summarize(t))}}, kExitPass};
}

CommandResult cmd_solve(const Instance& inst, const std::string& algorithm, std::optional<std::uint64_t> seed,
                        long step_cap) {
  require_valid(inst);
  if (algorithm == "utse") return utse_result(inst);
  if (algorithm == "depround-k2") {
    const DepRoundK2Sampler sampler(inst);
    SplitMix64 rng(need_seed(seed, algorithm));
    const auto draw = sampler.draw(rng);
    CommandResult r = lex_sample_result(inst, algorithm, draw.alloc);
    r.body["k"] = 2;
    r.body["super_good_holders"] = {draw.a, draw.b};
    return r;
  }
  if (algorithm == "lex-bobw") {
    const LexBobwResult res = solve_lex_bobw(inst, seed);
    CommandResult r = res.distribution ? utse_result(inst) : lex_sample_result(inst, res.algorithm, *res.sample);
    r.body["dispatched_to"] = res.algorithm;
    r.body["algorithm"] = "lex-bobw";
    return r;
  }
  if (algorithm == "uniform-perm") {
    if (seed) return lex_sample_result(inst, algorithm, uniform_permutation_sample(inst, *seed));
    const RandomizedAllocation d = uniform_permutation_exact(inst);
    Audits audits;
    lex_expost_audits(audits, inst, d);
    audits.add(check_exante_ef(d, inst, Rational(1, 2)));
    return {{{"algorithm", algorithm},
             {"distribution", to_json(d)},
             {"min_exante_ratio", min_ratio_json(d, inst)},
             {"audits", audits.records}},
            audits.status()};
  }
  if (algorithm == "charity" || algorithm == "bounded-charity") {
    const SwapTrace trace = random_charity_swap(inst, need_seed(seed, algorithm));
    Audits audits;
    json body = {{"algorithm", algorithm}, {"swap_trace", to_json(trace)}};
    if (algorithm == "charity") {
      audits.add(check_efx_with_charity(inst, trace.final_alloc));
      body["allocation"] = to_json(trace.final_alloc);
    } else {
      const BoundedCharityRun run =
          bounded_charity_run(inst, trace.final_alloc, step_cap < 0 ? default_step_cap(inst) : step_cap);
      audits.add(check_bounded_charity(inst, run.alloc));
      body["bounded_charity_steps"] = steps_json(run.steps);
      body["allocation"] = to_json(run.alloc);
    }
    body["audits"] = audits.records;
    return {body, audits.status()};
  }
  throw PreconditionError("unknown algorithm '" + algorithm +
                          "' (utse, depround-k2, lex-bobw, uniform-perm, charity, bounded-charity)");
}

CommandResult cmd_verify(const Instance& inst, const json& input, const std::string& property,
                         const std::optional<Rational>& alpha) {
  require_valid(inst);
  Audits audits;
  if (property == "ef") {
    audits.add(check_ef(inst, allocation_input(input)));
  } else if (property == "ef1") {
    audits.add(check_ef1(inst, allocation_input(input)));
  } else if (property == "efx") {
    audits.add(check_efx(inst, allocation_input(input)));
  } else if (property == "efx-with-charity") {
    audits.add(check_efx_with_charity(inst, allocation_input(input)));
  } else if (property == "bounded-charity") {
    audits.add(check_bounded_charity(inst, allocation_input(input)));
  } else if (property == "po-lex") {
    audits.add(check_po_lex(inst, allocation_input(input)));
  } else if (property == "sdef") {
    const Matrix x = input.is_array() ? matrix_from_json(input)
                                      : associated_fractional(distribution_input(input), inst.n, inst.m);
    if (static_cast<int>(x.size()) != inst.n) throw PreconditionError("sdef: matrix needs one row per agent");
    const int cols = x.empty() ? inst.m : static_cast<int>(x.front().size());
    audits.add(check_sdef(x, padded(ordinal_profile(inst), cols).rankings));
  } else if (property == "exante-ef") {
    audits.add(check_exante_ef(distribution_input(input), inst, alpha.value_or(Rational(1))));
  } else if (property == "exante-prop") {
    audits.add(check_exante_prop(distribution_input(input), inst, alpha.value_or(Rational(1))));
  } else if (property == "sd-half") {
    audits.add(check_stochastic_dominance_half(distribution_input(input), inst));
  } else {
    throw PreconditionError("unknown property '" + property + "'");
  }
  return {{{"audits", audits.records}}, audits.status()};
}

Sampler make_sampler(const Instance& inst, const std::string& name) {
  require_valid(inst);
  auto owned = std::make_shared<const Instance>(inst);
  if (name == "depround-k2") {
    auto s = std::make_shared<const DepRoundK2Sampler>(*owned);
    return [s](SplitMix64& rng) { return s->sample(rng); };
  }
  if (name == "uniform-perm") {
    require_lexicographic(*owned);
    auto p = std::make_shared<const OrdinalProfile>(ordinal_profile(*owned));
    return [p](SplitMix64& rng) { return uniform_permutation_sample(*p, rng); };
  }
  if (name == "charity" || name == "bounded-charity") {
    require_charity_instance(*owned);
    auto v = std::make_shared<const Valuer>(*owned);
    const bool bounded = name == "bounded-charity";
    const long cap = default_step_cap(*owned);
    return [owned, v, bounded, cap](SplitMix64& rng) {
      IntegralAllocation a = random_charity_swap(*v, rng).final_alloc;
      return bounded ? bounded_charity(*owned, a, cap) : a;
    };
  }
  throw PreconditionError("unknown sampler '" + name + "' (depround-k2, charity, bounded-charity, uniform-perm)");
}

CommandResult cmd_sample(const Instance& inst, const std::string& sampler, std::uint64_t seed, std::size_t count) {
  const Sampler s = make_sampler(inst, sampler);
  Audits audits;
  json samples = json::array();
  bool first_failure = true;
  for (std::size_t r = 0; r < count; ++r) {
    SplitMix64 rng(derive_seed(seed, r));
    const IntegralAllocation a = s(rng);
    samples.push_back(to_json(a));
    std::vector<AuditReport> reps;
    if (sampler == "charity")
      reps.push_back(check_efx_with_charity(inst, a));
    else if (sampler == "bounded-charity")
      reps.push_back(check_bounded_charity(inst, a));
    else
      reps = {check_efx(inst, a), check_po_lex(inst, a)};
    for (const auto& rep : reps)
      if (!rep.pass && first_failure) {
        audits.add(rep, r);
        first_failure = false;
      }
  }
  return {{{"sampler", sampler}, {"seed", seed}, {"samples", samples}, {"audits", audits.records}}, audits.status()};
}

CommandResult cmd_estimate(const Instance& inst, const std::string& sampler, std::size_t n_samples,
                           std::uint64_t seed) {
  const auto rows = estimate_ratios(inst, make_sampler(inst, sampler), n_samples, seed);
  json pairs = json::array();
  const RatioEstimate* worst = nullptr;
  for (const auto& e : rows) {
    const bool finite = std::isfinite(e.ratio);
    pairs.push_back({{"i", e.i},
                     {"j", e.j},
                     {"own_mean", e.own_mean},
                     {"other_mean", e.other_mean},
                     {"ratio", finite ? json(e.ratio) : json(nullptr)},
                     {"sigma", finite ? json(e.sigma) : json(nullptr)},
                     {"ci_low", finite ? json(e.ratio - 3 * e.sigma) : json(nullptr)},
                     {"ci_high", finite ? json(e.ratio + 3 * e.sigma) : json(nullptr)}});
    if (finite && (!worst || e.ratio < worst->ratio)) worst = &e;
  }
  json body = {{"sampler", sampler}, {"samples", n_samples}, {"seed", seed}, {"pairs", pairs}};
  body["min_pair"] = worst ? json{{"i", worst->i}, {"j", worst->j}, {"ratio", worst->ratio}, {"sigma", worst->sigma}}
                           : json(nullptr);
  return {body, kExitPass};
}

CommandResult cmd_oracle(const Instance& inst, const std::string& what, std::size_t leaf_cap) {
  require_valid(inst);
  if (what == "efx" || what == "sdef") {
    const auto efx = enumerate_efx(inst);
    json allocs = json::array();
    for (const auto& a : efx) allocs.push_back({{"bundles", a.bundles}, {"labelled", describe(a, &inst)}});
    json body = {{"efx_allocations", allocs}, {"count", efx.size()}};
    if (what == "sdef") {
      require_lexicographic(inst);
      body["sdef_mixture"] = feasibility_json(sdef_feasibility(efx, ordinal_profile(inst).rankings, inst.m));
    }
    return {body, kExitPass};
  }
  if (what == "charity3" || what == "charity4") {
    const int algorithm = what == "charity3" ? 3 : 4;
    const CharityDistribution d = exact_distribution_charity(inst, algorithm, leaf_cap);
    Audits audits;
    if (algorithm == 3) {
      audits.over_support(d.merged, "efx_with_charity",
                          [&](const IntegralAllocation& a) { return check_efx_with_charity(inst, a); });
      audits.add(check_stochastic_dominance_half(d.merged, inst));
      audits.add(check_exante_ef(d.merged, inst, Rational(1, 2)));
    } else {
      audits.over_support(d.merged, "bounded_charity",
                          [&](const IntegralAllocation& a) { return check_bounded_charity(inst, a); });
      bool subadditive = true;
      for (int i = 0; i < inst.n; ++i) subadditive = subadditive && is_subadditive(inst, i);
      // The proportionality guarantee needs subadditivity; report it either way.
      const AuditReport prop = check_exante_prop(d.merged, inst, Rational(1, 2));
      if (subadditive) audits.add(prop);
      else audits.records.push_back(to_json(prop));
    }
    return {{{"leaves", d.leaves.size()}, {"distribution", to_json(d.merged)}, {"audits", audits.records}},
            audits.status()};
  }
  throw PreconditionError("unknown oracle '" + what + "' (efx, sdef, charity3, charity4)");
}

CommandResult cmd_repro(const std::string& scenario, const std::optional<Rational>& epsilon,
                        const std::optional<std::string>& instance) {
  const Rational eps = epsilon.value_or(default_epsilon());
  if (scenario == "impossibility") return repro_impossibility();
  if (scenario == "example-4-1") return repro_example_4_1(eps);
  if (scenario == "utse-tight") return repro_utse_tight(eps);
  if (scenario == "ps-baseline") return repro_ps_baseline(load_instance(instance.value_or("FIX-A"), epsilon));
  throw PreconditionError("unknown scenario '" + scenario + "' (impossibility, example-4-1, utse-tight, ps-baseline)");
}

}  // namespace bobw
