#pragma once

// JSON-in/JSON-out entry points shared by the command-line tool and the
// Python bindings. Each returns a body plus a status: 0 pass, 2 property
// failure. Precondition and cap violations propagate as exceptions.

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "bobw/eating.hpp"
#include "bobw/instance.hpp"
#include "bobw/oracle.hpp"

namespace bobw {

struct CommandResult {
  nlohmann::json body;
  int status = 0;
};

inline constexpr int kExitPass = 0;
inline constexpr int kExitPropertyFail = 2;
inline constexpr int kExitPrecondition = 3;
inline constexpr int kExitResourceCap = 4;

Padding parse_padding(const std::string& s);  // none | agents | multiple

CommandResult cmd_validate(const Instance& inst);
CommandResult cmd_eat(const Instance& inst, const Rational& duration, Padding pad);

// utse | depround-k2 | lex-bobw | uniform-perm | charity | bounded-charity.
// step_cap < 0 uses the default bounded-charity cap.
CommandResult cmd_solve(const Instance& inst, const std::string& algorithm, std::optional<std::uint64_t> seed,
                        long step_cap = -1);

// property: ef | ef1 | efx | efx-with-charity | bounded-charity | po-lex (allocation input);
// sdef (matrix or distribution); exante-ef | exante-prop | sd-half (distribution).
CommandResult cmd_verify(const Instance& inst, const nlohmann::json& input, const std::string& property,
                         const std::optional<Rational>& alpha = std::nullopt);

// depround-k2 | charity | bounded-charity | uniform-perm
Sampler make_sampler(const Instance& inst, const std::string& name);
CommandResult cmd_sample(const Instance& inst, const std::string& sampler, std::uint64_t seed, std::size_t count);
CommandResult cmd_estimate(const Instance& inst, const std::string& sampler, std::size_t n_samples,
                           std::uint64_t seed);

// efx | sdef | charity3 | charity4
CommandResult cmd_oracle(const Instance& inst, const std::string& what, std::size_t leaf_cap = 1000000);

// impossibility | example-4-1 | utse-tight | ps-baseline
CommandResult cmd_repro(const std::string& scenario, const std::optional<Rational>& epsilon,
                        const std::optional<std::string>& instance);

}  // namespace bobw
