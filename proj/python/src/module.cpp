/**
 * Copyright 2026 The drfkit Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "drfkit/cycles.hpp"
#include "drfkit/drf.hpp"
#include "drfkit/edrf.hpp"
#include "drfkit/harness.hpp"
#include "drfkit/io.hpp"
#include "drfkit/pdrf.hpp"

namespace py = pybind11;
using namespace drfkit;

namespace {

py::object fraction(const Rational& value) {
  static py::object cls = py::module_::import("fractions").attr("Fraction");
  return cls(value.to_string());
}

py::object big(const BigInt& value) { return py::module_::import("builtins").attr("int")(value.get_str()); }

py::dict allocation_dict(const Allocation& a) {
  py::dict out;
  out["tasks"] = a.tasks;
  out["per_user_amounts"] = a.per_user_amounts;
  out["consumed"] = a.consumed;
  out["residual"] = a.residual;
  return out;
}

py::dict drf(const std::string& scenario, bool remove_saturated, bool trace) {
  DrfOptions options;
  options.remove_saturated = remove_saturated;
  options.collect_trace = trace;
  auto r = drf_allocate(parse_scenario(scenario), options);
  auto out = allocation_dict(r.allocation);
  out["halt_reason"] = to_string(r.trace.halt_reason);
  out["iterations"] = r.trace.iterations;
  if (trace) {
    py::list steps;
    for (const auto& s : r.trace.steps) steps.append(py::make_tuple(s.iteration, s.user, fraction(s.allocated_share)));
    out["trace"] = steps;
  }
  return out;
}

py::dict pdrf(const std::string& scenario, bool finishing) {
  auto s = parse_scenario(scenario);
  auto r = pdrf_allocate(s);
  auto out = allocation_dict(finishing ? finishing_pass(s, r) : r.allocation);
  out["k"] = fraction(r.k);
  out["ds_star"] = fraction(r.ds_star);
  return out;
}

py::dict edrf(const std::string& scenario) {
  auto a = edrf_allocate(parse_scenario(scenario));
  py::dict shares, amounts;
  for (const auto& [id, share] : a.shares) shares[py::str(id)] = fraction(share);
  for (const auto& [id, vec] : a.amounts) {
    py::list row;
    for (const auto& v : vec) row.append(fraction(v));
    amounts[py::str(id)] = row;
  }
  py::list rounds;
  for (const auto& r : a.rounds) {
    py::dict round;
    round["x"] = fraction(r.x);
    round["active"] = r.active;
    round["saturated_resources"] = r.saturated_resources;
    rounds.append(round);
  }
  py::dict out;
  out["shares"] = shares;
  out["per_user_amounts"] = amounts;
  out["rounds"] = rounds;
  return out;
}

py::dict cycles(const std::string& scenario) {
  auto p = cycle_profile(parse_scenario(scenario));
  py::dict occurrences;
  for (const auto& [id, n] : p.occurrences) occurrences[py::str(id)] = big(n);
  py::dict out;
  out["lcm_ds"] = fraction(p.lcm_ds);
  out["full_length"] = big(p.full_length);
  out["occurrences"] = occurrences;
  out["basic_length"] = p.basic_length;
  out["basic_occurrences"] = p.basic_occurrences;
  return out;
}

py::dict decompose(const std::string& scenario) {
  auto d = decompose_higher_order(parse_scenario(scenario));
  py::list layers;
  for (const auto& l : d.layers) {
    py::dict layer;
    layer["active"] = l.active;
    layer["occurrences"] = l.occurrences;
    layer["k"] = fraction(l.k);
    layer["iterations"] = l.iterations;
    layer["consumed"] = l.consumed;
    layers.append(layer);
  }
  py::dict out;
  out["layers"] = layers;
  out["residual"] = d.residual;
  return out;
}

std::string bench(std::size_t users, std::size_t resources, const std::string& demands, const std::string& reserves,
                  std::size_t trials, std::uint64_t seed, bool strict_drf, bool finishing, std::size_t threads) {
  ExperimentConfig c;
  c.n_users = users;
  c.n_resources = resources;
  c.demand_interval = parse_interval(demands);
  c.reserve_interval = parse_interval(reserves);
  c.trials = trials;
  c.seed = seed;
  c.drf_options.strict_paper_mode = strict_drf;
  c.apply_finishing_pass = finishing;
  c.threads = threads;
  validate_config(c);
  py::gil_scoped_release release;
  return stats_document(run_experiment(c));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact multi-resource fair allocation: DRF, EDRF and PDRF.";
  m.def("drf", &drf, py::arg("scenario"), py::arg("remove_saturated") = true, py::arg("trace") = false);
  m.def("pdrf", &pdrf, py::arg("scenario"), py::arg("finishing_pass") = false);
  m.def("edrf", &edrf, py::arg("scenario"));
  m.def("cycles", &cycles, py::arg("scenario"));
  m.def("decompose", &decompose, py::arg("scenario"));
  m.def("bench", &bench, py::arg("users"), py::arg("resources"), py::arg("demands"), py::arg("reserves"),
        py::arg("trials"), py::arg("seed"), py::arg("strict_drf"), py::arg("finishing_pass"), py::arg("threads"));
}
