// Copyright 2026 The subknap Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "subknap/experiments.hpp"
#include "subknap/io.hpp"
#include "subknap/multilinear.hpp"
#include "subknap/rounding.hpp"
#include "subknap/verify.hpp"

namespace py = pybind11;
using namespace subknap;

namespace {

SparseFractionalPoint make_point(std::vector<Element> integral,
                                 const std::map<Element, double>& fractional) {
  std::vector<SparseFractionalPoint::Entry> frac(fractional.begin(), fractional.end());
  return SparseFractionalPoint(std::move(integral), std::move(frac));
}

KnapsackParams make_params(double eps, const std::string& mode, std::optional<std::size_t> t,
                           std::optional<std::size_t> r, std::optional<std::size_t> phases,
                           std::uint64_t seed, double limit, std::size_t trials) {
  KnapsackParams p;
  p.eps = eps;
  p.mode = parse_mode(mode);
  p.t = t;
  p.r = r;
  p.phases = phases;
  p.seed = seed;
  p.limit = limit;
  p.rounding_trials = trials;
  return p;
}

}  // namespace

PYBIND11_MODULE(_subknap, m) {
  m.doc() = "Monotone submodular maximization under a knapsack constraint";

  py::register_exception<CapacityError>(m, "CapacityError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const InputError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  py::class_<Instance>(m, "Instance")
      .def_property_readonly("n", &Instance::size)
      .def_readonly("costs", &Instance::costs)
      .def_readonly("name", &Instance::name)
      .def_property_readonly("family", [](const Instance& i) { return std::string(i.objective.type_name()); })
      .def("value", [](const Instance& i, const std::vector<Element>& s) { return i.objective.value(s); },
           py::arg("elements"))
      .def("cost", [](const Instance& i, const std::vector<Element>& s) { return i.cost(s); },
           py::arg("elements"))
      .def("to_json", [](const Instance& i) { return instance_to_json(i).dump(); })
      .def("__len__", &Instance::size);

  m.def("load_instance", &load_instance, py::arg("path"));
  m.def("instance_from_json",
        [](const std::string& text, const std::string& name) {
          Json doc;
          try {
            doc = Json::parse(text);
          } catch (const nlohmann::json::exception& e) {
            throw InputError(std::string("invalid JSON: ") + e.what());
          }
          return instance_from_json(doc, name);
        },
        py::arg("text"), py::arg("name") = "");
  m.def("save_instance", &save_instance, py::arg("path"), py::arg("instance"));

  m.def("generate",
        [](const std::string& family, std::size_t n, std::uint64_t seed, double cost_max,
           bool adversarial, bool integer_weights) {
          GenParams p;
          p.family = parse_family(family);
          p.n = n;
          p.seed = seed;
          p.cost_max = cost_max;
          p.adversarial = adversarial;
          p.integer_weights = integer_weights;
          return generate(p);
        },
        py::arg("family"), py::arg("n"), py::arg("seed") = 0, py::arg("cost_max") = 0.5,
        py::arg("adversarial") = false, py::arg("integer_weights") = false);

  m.def("eval_exact",
        [](const Instance& inst, std::vector<Element> integral, const std::map<Element, double>& fractional) {
          CountingOracle oracle(inst);
          double v = eval_exact(oracle, make_point(std::move(integral), fractional));
          return py::make_tuple(v, oracle.query_count());
        },
        py::arg("instance"), py::arg("integral"), py::arg("fractional"),
        "F(x) and the number of oracle queries used.");

  m.def("round_point",
        [](const Instance& inst, std::vector<Element> integral, const std::map<Element, double>& fractional,
           std::uint64_t seed) {
          return round_point(make_point(std::move(integral), fractional), inst.costs, seed).final_set;
        },
        py::arg("instance"), py::arg("integral"), py::arg("fractional"), py::arg("seed") = 0);

  m.def("_run_json",
        [](const Instance& inst, const std::string& algorithm, double eps, const std::string& mode,
           std::optional<std::size_t> t, std::optional<std::size_t> r, std::optional<std::size_t> phases,
           std::uint64_t seed, double limit, std::size_t trials, bool traces) {
          RunRow row = run_algorithm(inst, algorithm, make_params(eps, mode, t, r, phases, seed, limit, trials));
          Json doc{{"algorithm", row.algorithm}, {"n", row.n},         {"epsilon", row.eps},
                   {"set", row.set},             {"value", row.value}, {"cost", row.cost},
                   {"queries", row.queries},     {"millis", row.millis}};
          if (row.knapsack) doc["knapsack"] = to_json(*row.knapsack, traces);
          return doc.dump();
        },
        py::arg("instance"), py::arg("algorithm"), py::arg("epsilon"), py::arg("mode"), py::arg("t"),
        py::arg("r"), py::arg("phases"), py::arg("seed"), py::arg("limit"), py::arg("trials"),
        py::arg("traces"));

  m.def("_verify_json",
        [](const Instance& inst, double eps, std::optional<std::size_t> t, std::optional<std::size_t> r,
           std::optional<std::size_t> phases, std::uint64_t seed, std::size_t trials, bool traces) {
          VerifyOptions o;
          o.eps = eps;
          o.t = t;
          o.r = r;
          o.phases = phases;
          o.seed = seed;
          o.rounding_trials = trials;
          return to_json(verify_instance(inst, o), traces).dump();
        },
        py::arg("instance"), py::arg("epsilon"), py::arg("t"), py::arg("r"), py::arg("phases"),
        py::arg("seed"), py::arg("trials"), py::arg("traces"));

  m.def("csv_header", []() { return std::string(csv_header()); });
}
