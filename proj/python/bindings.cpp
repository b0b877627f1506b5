#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bobw/api.hpp"
#include "bobw/error.hpp"
#include "bobw/json_io.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using nlohmann::json;

namespace {

// Accepts a fixture name, a file path, or an instance as a JSON string.
bobw::Instance resolve(const std::string& source, const std::optional<std::string>& epsilon) {
  std::optional<bobw::Rational> eps;
  if (epsilon) eps = bobw::parse_rational(*epsilon);
  if (!source.empty() && source.front() == '{') {
    if (eps) throw bobw::PreconditionError("epsilon only applies to the parameterized fixtures");
    try {
      return bobw::instance_from_json(json::parse(source));
    } catch (const json::exception& e) {
      throw bobw::PreconditionError(std::string("malformed instance JSON: ") + e.what());
    }
  }
  return bobw::load_instance(source, eps);
}

py::tuple out(const bobw::CommandResult& r) { return py::make_tuple(r.status, r.body.dump()); }

}  // namespace

PYBIND11_MODULE(_bobw, m) {
  m.doc() = "bobw core: exact fair-division algorithms and audits (JSON strings in, JSON strings out)";

  static py::exception<bobw::PreconditionError> precondition(m, "PreconditionError", PyExc_ValueError);
  static py::exception<bobw::ResourceCapError> cap(m, "ResourceCapError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const bobw::PreconditionError& e) {
      py::set_error(precondition, e.what());
    } catch (const bobw::ResourceCapError& e) {
      const std::string msg = e.diagnostic().empty() ? e.what() : std::string(e.what()) + "\n" + e.diagnostic();
      py::set_error(cap, msg.c_str());
    } catch (const json::exception& e) {
      py::set_error(precondition, e.what());
    }
  });

  m.def("instance", [](const std::string& source, std::optional<std::string> eps) {
    return bobw::to_json(resolve(source, eps)).dump();
  }, "source"_a, "epsilon"_a = py::none());

  m.def("validate", [](const std::string& source, std::optional<std::string> eps) {
    return out(bobw::cmd_validate(resolve(source, eps)));
  }, "source"_a, "epsilon"_a = py::none());

  m.def("eat", [](const std::string& source, const std::string& duration, const std::string& pad,
                  std::optional<std::string> eps) {
    return out(bobw::cmd_eat(resolve(source, eps), bobw::parse_rational(duration), bobw::parse_padding(pad)));
  }, "source"_a, "duration"_a = "1", "pad"_a = "none", "epsilon"_a = py::none());

  m.def("solve", [](const std::string& source, const std::string& algorithm, std::optional<std::uint64_t> seed,
                    long step_cap, std::optional<std::string> eps) {
    const bobw::Instance inst = resolve(source, eps);
    bobw::CommandResult r;
    {
      py::gil_scoped_release release;
      r = bobw::cmd_solve(inst, algorithm, seed, step_cap);
    }
    return out(r);
  }, "source"_a, "algorithm"_a, "seed"_a = py::none(), "step_cap"_a = -1, "epsilon"_a = py::none());

  m.def("verify", [](const std::string& source, const std::string& input, const std::string& property,
                     std::optional<std::string> alpha, std::optional<std::string> eps) {
    std::optional<bobw::Rational> a;
    if (alpha) a = bobw::parse_rational(*alpha);
    return out(bobw::cmd_verify(resolve(source, eps), json::parse(input), property, a));
  }, "source"_a, "input"_a, "property"_a, "alpha"_a = py::none(), "epsilon"_a = py::none());

  m.def("sample", [](const std::string& source, const std::string& sampler, std::uint64_t seed, std::size_t count,
                     std::optional<std::string> eps) {
    return out(bobw::cmd_sample(resolve(source, eps), sampler, seed, count));
  }, "source"_a, "sampler"_a, "seed"_a, "count"_a = 1, "epsilon"_a = py::none());

  m.def("estimate", [](const std::string& source, const std::string& sampler, std::size_t samples, std::uint64_t seed,
                       std::optional<std::string> eps) {
    const bobw::Instance inst = resolve(source, eps);
    bobw::CommandResult r;
    {
      py::gil_scoped_release release;
      r = bobw::cmd_estimate(inst, sampler, samples, seed);
    }
    return out(r);
  }, "source"_a, "sampler"_a, "samples"_a, "seed"_a, "epsilon"_a = py::none());

  m.def("oracle", [](const std::string& what, const std::string& source, std::size_t leaf_cap,
                     std::optional<std::string> eps) {
    return out(bobw::cmd_oracle(resolve(source, eps), what, leaf_cap));
  }, "what"_a, "source"_a, "leaf_cap"_a = 1000000, "epsilon"_a = py::none());

  m.def("repro", [](const std::string& scenario, std::optional<std::string> eps, std::optional<std::string> instance) {
    std::optional<bobw::Rational> e;
    if (eps) e = bobw::parse_rational(*eps);
    return out(bobw::cmd_repro(scenario, e, instance));
  }, "scenario"_a, "epsilon"_a = py::none(), "instance"_a = py::none());
}
