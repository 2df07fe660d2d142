#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qsq/cost.hpp"
#include "qsq/error.hpp"
#include "qsq/io.hpp"
#include "qsq/layout.hpp"
#include "qsq/simulator.hpp"
#include "qsq/synth.hpp"
#include "qsq/verify.hpp"

namespace py = pybind11;
using namespace qsq;

namespace {

std::map<std::string, std::int64_t> closed_forms(const cost::CostReport& r) {
  std::map<std::string, std::int64_t> out;
  for (cost::Metric m : cost::kMetrics) out[std::string(cost::metric_name(m))] = r.at(m).closed_form;
  return out;
}

// Per metric: closed_form, measured, delta and the cause names.
py::dict reconciled(int n) {
  const auto r = cost::reconcile(cost::measure(synth::synthesize_squarer(n)), n);
  py::dict out;
  for (cost::Metric m : cost::kMetrics) {
    const auto& e = r.at(m);
    py::list causes;
    for (auto c : e.causes) causes.append(std::string(cost::cause_name(c)));
    py::dict row;
    row["closed_form"] = e.closed_form;
    row["measured"] = *e.measured;
    row["delta"] = *e.delta;
    row["causes"] = causes;
    out[py::str(std::string(cost::metric_name(m)))] = row;
  }
  return out;
}

std::uint64_t square(const synth::SquarerCircuit& c, std::uint64_t a) {
  if (a >> c.n) throw py::value_error("input does not fit in n bits");
  sim::BasisAssignment in;
  in.wires.assign(c.netlist.wire_count(), 0);
  sim::write_value(in, c.input(), a);
  return sim::read_value(sim::run_basis(c.netlist, in).state, c.output);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Garbage-free quantum squaring circuits: synthesis, simulation, costs.";

  static py::exception<Error> error(m, "QsqError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  py::class_<synth::SquarerCircuit>(m, "Squarer")
      .def_readonly("n", &synth::SquarerCircuit::n)
      .def_property_readonly("wire_count",
                             [](const synth::SquarerCircuit& c) { return c.netlist.wire_count(); })
      .def_property_readonly("gate_count",
                             [](const synth::SquarerCircuit& c) { return c.netlist.gates().size(); })
      .def_property_readonly("stage_widths",
                             [](const synth::SquarerCircuit& c) {
                               std::vector<int> w;
                               for (const auto& s : c.stages) w.push_back(s.width);
                               return w;
                             })
      .def_property_readonly("and_count", &synth::SquarerCircuit::total_and_count)
      .def("to_json",
           [](const synth::SquarerCircuit& c, bool expanded) {
             return io::to_json(expanded ? ir::expand(c.netlist) : c.netlist);
           },
           py::arg("expanded") = false)
      .def("to_qasm", [](const synth::SquarerCircuit& c) { return io::to_qasm(ir::expand(c.netlist)); })
      .def("grid", [](const synth::SquarerCircuit& c) { return layout::dump(c.grid); })
      .def("square", &square, py::arg("a"), "Basis-simulate the circuit on input a.")
      .def("verify",
           [](const synth::SquarerCircuit& c) {
             for (const auto& check : verify::verify_squarer(c)) {
               if (!check.report.ok()) return false;
             }
             return true;
           },
           "Exhaustive check of every input at macro and block level.")
      .def("__repr__", [](const synth::SquarerCircuit& c) {
        return "<Squarer n=" + std::to_string(c.n) + " wires=" +
               std::to_string(c.netlist.wire_count()) + ">";
      });

  m.def("synthesize", &synth::synthesize_squarer, py::arg("n"));

  m.def("arrange",
        [](int n) {
          const auto g = layout::arrange(n);
          std::vector<std::vector<std::string>> rows;
          for (const auto& row : g.rows) {
            auto& out = rows.emplace_back();
            for (const auto& e : row) out.push_back(e.label());
          }
          return rows;
        },
        py::arg("n"), "Operand grid rows as labels (\"a0a1\", \"a2\", \"0\").");
  m.def("grid_value", [](int n, std::uint64_t a) { return layout::grid_value(layout::arrange(n), a); },
        py::arg("n"), py::arg("a"));

  m.def("proposed_costs", [](int n) { return closed_forms(cost::proposed_costs(n)); },
        py::arg("n"));
  m.def("baseline_costs",
        [](const std::string& design, int n) {
          return closed_forms(cost::baseline_costs(cost::design_from_name(design), n));
        },
        py::arg("design"), py::arg("n"));
  m.def("reduction_ratios", [] {
    std::map<std::pair<std::string, std::string>, std::string> out;
    for (const auto& r : cost::reduction_ratios()) {
      out[{std::string(cost::metric_name(r.metric)), std::string(cost::design_name(r.baseline))}] =
          r.percent;
    }
    return out;
  });
  m.def("reconcile", &reconciled, py::arg("n"),
        "Closed form, measured value, delta and causes for each metric.");
}
