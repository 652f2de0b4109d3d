// Python module: instance-text entry points mirroring the CLI commands.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "stoplat/commands.hpp"
#include "stoplat/format.hpp"
#include "stoplat/hunt.hpp"
#include "stoplat/rieszcore.hpp"
#include "stoplat/search.hpp"
#include "stoplat/selftest.hpp"

namespace py = pybind11;
using namespace stoplat;

namespace {

TimeClass time_class(bool optional) { return optional ? TimeClass::optional : TimeClass::stopping; }

std::vector<std::string> values_of(const RandomTime& t) {
  std::vector<std::string> out;
  for (const auto& v : t.values()) out.push_back(format_time(v));
  return out;
}

// Same default grid as the CLI: denominator q, max = largest finite input.
Grid grid_for(std::int64_t q, const std::vector<RandomTime>& inputs) { return Grid::covering(q, inputs); }

py::dict outcome_dict(const char* status) {
  py::dict d;
  d["status"] = status;
  return d;
}

py::dict check(const std::string& text, const std::string& name) {
  const auto inst = cli::parse_instance(text);
  const auto& t = inst.time(name);
  py::dict d;
  d["stopping"] = is_stopping_time(t, inst.filtration);
  d["optional"] = is_optional_time(t, inst.filtration);
  return d;
}

std::vector<std::string> minorant(const std::string& text, const std::string& name, bool optional) {
  const auto inst = cli::parse_instance(text);
  return values_of(max_stopping_minorant(inst.time(name), inst.filtration, time_class(optional)));
}

py::dict decompose(const std::string& text, std::int64_t q, bool optional) {
  const auto inst = cli::parse_instance(text);
  const auto s_name = inst.role("S");
  if (!s_name) throw std::invalid_argument("instance has no S role");
  const auto& s = inst.time(*s_name);
  auto bounds = inst.part_bounds();
  auto inputs = bounds;
  inputs.push_back(s);
  const auto grid = grid_for(q, inputs);
  const auto out = decompose_stopping(s, bounds, inst.filtration, grid, time_class(optional));
  if (const auto* d = std::get_if<StDecomposition>(&out)) {
    auto r = outcome_dict("found");
    py::list parts;
    for (const auto& p : d->parts) parts.append(values_of(p));
    r["parts"] = parts;
    return r;
  }
  if (const auto* n = std::get_if<NotFoundOnGrid>(&out)) {
    auto r = outcome_dict("not-found");
    r["grid"] = describe(n->grid);
    r["explored"] = n->states_explored;
    return r;
  }
  const auto& p = std::get<PreconditionFailed>(out);
  auto r = outcome_dict("precondition");
  r["code"] = to_string(p.code);
  r["reason"] = p.reason;
  return r;
}

py::dict interpolate(const std::string& text, const std::string& mode, std::int64_t q, bool optional) {
  const auto inst = cli::parse_instance(text);
  const auto a = inst.times_of(inst.set_a);
  const auto b = inst.times_of(inst.set_b);
  if (mode == "pointwise") {
    try {
      auto r = outcome_dict("found");
      r["time"] = values_of(interpolate_pointwise(a, b, inst.filtration, time_class(optional)));
      return r;
    } catch (const PreconditionError& e) {
      auto r = outcome_dict("precondition");
      r["reason"] = e.what();
      return r;
    }
  }
  if (mode != "cone") throw std::invalid_argument("mode must be pointwise or cone");
  auto inputs = a;
  inputs.insert(inputs.end(), b.begin(), b.end());
  const auto out = interpolate_cone(a, b, inst.filtration, grid_for(q, inputs), time_class(optional));
  if (const auto* t = std::get_if<RandomTime>(&out)) {
    auto r = outcome_dict("found");
    r["time"] = values_of(*t);
    return r;
  }
  if (const auto* n = std::get_if<NotFoundOnGrid>(&out)) {
    auto r = outcome_dict("not-found");
    r["grid"] = describe(n->grid);
    return r;
  }
  const auto& p = std::get<PreconditionFailed>(out);
  auto r = outcome_dict("precondition");
  r["code"] = to_string(p.code);
  r["reason"] = p.reason;
  return r;
}

std::string hunt_report(std::uint64_t seed, std::size_t instances, std::size_t threads) {
  HuntConfig cfg;
  cfg.seed = seed;
  cfg.instances = instances;
  cfg.threads = threads;
  py::gil_scoped_release release;
  return cli::emit_report(hunt(cfg));
}

py::tuple run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code;
  {
    py::gil_scoped_release release;
    code = cli::run(args, out, err);
  }
  return py::make_tuple(code, out.str(), err.str());
}

py::list selftest(std::uint64_t seed, std::size_t instances) {
  py::list out;
  for (const auto& r : run_selftest({seed, instances})) out.append(py::make_tuple(r.name, r.passed, r.cases, r.detail));
  return out;
}

}  // namespace

PYBIND11_MODULE(_stoplat, m) {
  m.doc() = "Stopping times on finite filtered spaces";
  py::register_exception<cli::ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<CapExceeded>(m, "CapExceeded", PyExc_RuntimeError);

  m.def("check", &check, py::arg("text"), py::arg("name"));
  m.def("minorant", &minorant, py::arg("text"), py::arg("name"), py::arg("optional") = false);
  m.def("decompose", &decompose, py::arg("text"), py::arg("q") = 4, py::arg("optional") = false);
  m.def("interpolate", &interpolate, py::arg("text"), py::arg("mode") = "pointwise", py::arg("q") = 4,
        py::arg("optional") = false);
  m.def("hunt", &hunt_report, py::arg("seed") = 0, py::arg("instances") = 100, py::arg("threads") = 1);
  m.def("run", &run, py::arg("args"));
  m.def("selftest", &selftest, py::arg("seed") = 0, py::arg("instances") = 200);
  m.attr("__version__") = kVersion;
}
