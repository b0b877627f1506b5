// bobw: command-line front end. Every command prints JSON on stdout (or to
// --out) and exits 0 on pass, 2 on a property failure, 3 on bad input and
// 4 when a resource cap is hit.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "bobw/api.hpp"
#include "bobw/error.hpp"
#include "bobw/json_io.hpp"

namespace {

using bobw::CommandResult;
using nlohmann::json;

struct Common {
  std::string instance;
  std::string epsilon;
  std::string out;
  bool table = false;

  std::optional<bobw::Rational> eps() const {
    if (epsilon.empty()) return std::nullopt;
    return bobw::parse_rational(epsilon);
  }
  bobw::Instance load() const { return bobw::load_instance(instance, eps()); }
};

int emit(const CommandResult& r, const Common& c) {
  const std::string text = r.body.dump(2) + "\n";
  if (c.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(c.out);
    if (!f) throw bobw::PreconditionError("cannot write '" + c.out + "'");
    f << text;
  }
  return r.status;
}

// Plain-text table for `estimate --table`.
int emit_table(const CommandResult& r) {
  std::printf("%4s %4s %14s %14s %10s %10s %10s\n", "i", "j", "E[v_i(X_i)]", "E[v_i(X_j)]", "ratio", "ci_low",
              "ci_high");
  for (const auto& p : r.body["pairs"]) {
    auto num = [](const json& v) { return v.is_null() ? std::string("inf") : std::to_string(v.get<double>()); };
    std::printf("%4d %4d %14.6f %14.6f %10s %10s %10s\n", p["i"].get<int>(), p["j"].get<int>(),
                p["own_mean"].get<double>(), p["other_mean"].get<double>(), num(p["ratio"]).c_str(),
                num(p["ci_low"]).c_str(), num(p["ci_high"]).c_str());
  }
  return r.status;
}

void add_instance(CLI::App* cmd, Common& c) {
  cmd->add_option("instance", c.instance, "Fixture name (FIX-A..FIX-E) or instance JSON path")->required();
  cmd->add_option("--epsilon", c.epsilon, "p/q override for FIX-B / FIX-C");
  cmd->add_option("-o,--out", c.out, "Write JSON here instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Best-of-both-worlds fair division toolkit"};
  app.require_subcommand(1);
  Common c;
  std::optional<std::uint64_t> seed;
  std::string algorithm, sampler, property, input, duration = "1", pad = "none", scenario, oracle, alpha;
  std::optional<std::string> repro_instance;
  std::size_t count = 1, samples = 20000, leaf_cap = 1000000;
  long step_cap = -1;

  auto* validate = app.add_subcommand("validate", "Check an instance against its preference class");
  add_instance(validate, c);

  auto* eat = app.add_subcommand("eat", "Run the eating algorithm and print the trace");
  add_instance(eat, c);
  eat->add_option("--duration", duration, "Eating time as p/q");
  eat->add_option("--pad", pad, "Dummy goods: none | agents | multiple");

  auto* solve = app.add_subcommand("solve", "Run an allocation algorithm and audit its output");
  add_instance(solve, c);
  solve->add_option("-a,--algorithm", algorithm, "utse | depround-k2 | lex-bobw | uniform-perm | charity | bounded-charity")
      ->required();
  solve->add_option("--seed", seed, "64-bit seed (required for samplers)");
  solve->add_option("--step-cap", step_cap, "Bounded charity step cap");

  auto* verify = app.add_subcommand("verify", "Audit an allocation, matrix or distribution file");
  add_instance(verify, c);
  verify->add_option("input", input, "JSON file (solve output works too)")->required();
  verify->add_option("-p,--property", property,
                     "ef | ef1 | efx | efx-with-charity | bounded-charity | po-lex | sdef | exante-ef | exante-prop | sd-half")
      ->required();
  verify->add_option("--alpha", alpha, "p/q factor for exante-ef / exante-prop (default 1)");

  auto* sample = app.add_subcommand("sample", "Draw seeded samples from a randomized algorithm");
  add_instance(sample, c);
  sample->add_option("-s,--sampler", sampler, "depround-k2 | charity | bounded-charity | uniform-perm")->required();
  sample->add_option("--seed", seed, "64-bit seed")->required();
  sample->add_option("-n,--count", count, "Number of samples");

  auto* est = app.add_subcommand("estimate", "Monte Carlo ex-ante ratios with 3-sigma intervals");
  add_instance(est, c);
  est->add_option("-s,--sampler", sampler, "depround-k2 | charity | bounded-charity | uniform-perm")->required();
  est->add_option("--seed", seed, "64-bit seed")->required();
  est->add_option("-N,--samples", samples, "Sample count (>= 1000)");
  est->add_flag("--table", c.table, "Print a text table instead of JSON");

  auto* orc = app.add_subcommand("oracle", "Brute-force ground truth");
  orc->add_option("what", oracle, "efx | sdef | charity3 | charity4")->required();
  add_instance(orc, c);
  orc->add_option("--leaf-cap", leaf_cap, "Branch leaf cap for charity oracles");

  auto* repro = app.add_subcommand("repro", "Reproduce a worked example");
  repro->add_option("scenario", scenario, "impossibility | example-4-1 | utse-tight | ps-baseline")->required();
  repro->add_option("--instance", repro_instance, "Instance for ps-baseline (default FIX-A)");
  repro->add_option("--epsilon", c.epsilon, "p/q for the parameterized fixtures");
  repro->add_option("-o,--out", c.out, "Write JSON here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return bobw::kExitPrecondition;
  }

  try {
    if (*validate) return emit(bobw::cmd_validate(c.load()), c);
    if (*eat) return emit(bobw::cmd_eat(c.load(), bobw::parse_rational(duration), bobw::parse_padding(pad)), c);
    if (*solve) return emit(bobw::cmd_solve(c.load(), algorithm, seed, step_cap), c);
    if (*verify) {
      std::optional<bobw::Rational> a;
      if (!alpha.empty()) a = bobw::parse_rational(alpha);
      return emit(bobw::cmd_verify(c.load(), bobw::read_json_file(input), property, a), c);
    }
    if (*sample) return emit(bobw::cmd_sample(c.load(), sampler, *seed, count), c);
    if (*est) {
      const CommandResult r = bobw::cmd_estimate(c.load(), sampler, samples, *seed);
      return c.table ? emit_table(r) : emit(r, c);
    }
    if (*orc) return emit(bobw::cmd_oracle(c.load(), oracle, leaf_cap), c);
    if (*repro) return emit(bobw::cmd_repro(scenario, c.eps(), repro_instance), c);
  } catch (const bobw::PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return bobw::kExitPrecondition;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed JSON input: " << e.what() << "\n";
    return bobw::kExitPrecondition;
  } catch (const bobw::ResourceCapError& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    if (!e.diagnostic().empty()) std::cerr << e.diagnostic() << "\n";
    return bobw::kExitResourceCap;
  } catch (const bobw::InvariantError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
