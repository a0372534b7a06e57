#include "teicp/cli.hpp"
#include "teicp/errors.hpp"
#include "teicp/oracle.hpp"
#include "teicp/problem_io.hpp"
#include "teicp/solver_cop.hpp"
#include "teicp/solver_gen.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace teicp;

namespace {

Tensor make_tensor(int order, int dim, std::vector<double> entries) { return Tensor(order, dim, std::move(entries)); }

TensorPair make_pair(const Tensor& a, const Tensor& b) { return TensorPair(a, b); }

py::dict pair_dict(const CEigenpair& p) {
  py::dict d;
  d["lambda"] = p.lambda;
  d["x"] = p.x;
  d["w"] = p.w;
  d["k"] = p.k;
  d["t"] = p.t;
  d["rank"] = p.rank;
  return d;
}

py::list pair_list(const std::vector<CEigenpair>& v) {
  py::list out;
  for (const auto& p : v) out.append(pair_dict(p));
  return out;
}

}  // namespace

PYBIND11_MODULE(_teicp, m) {
  m.doc() = "complementarity eigenpairs of tensor pairs";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);

  py::class_<Tensor>(m, "Tensor")
      .def(py::init(&make_tensor), py::arg("order"), py::arg("dim"), py::arg("entries"))
      .def_property_readonly("order", &Tensor::order)
      .def_property_readonly("dim", &Tensor::dim)
      .def_property_readonly("entries",
                             [](const Tensor& t) { return std::vector<double>(t.entries().begin(), t.entries().end()); })
      .def_static("identity", &Tensor::identity, py::arg("order"), py::arg("dim"));

  py::class_<TensorPair>(m, "TensorPair")
      .def(py::init(&make_pair), py::arg("A"), py::arg("B"))
      .def_readonly("A", &TensorPair::A)
      .def_readonly("B", &TensorPair::B);

  m.def("formula_tensor", &formula_tensor, py::arg("family"), py::arg("order"), py::arg("dim"), py::arg("seed") = 0);
  m.def("formula_families", &formula_families);
  m.def("load_problem", &load_problem, py::arg("path"));
  m.def("pair_from_json", [](const std::string& s) { return pair_from_json(nlohmann::json::parse(s)); });
  m.def("generate_problem", [](const std::string& a, const std::string& b, int dim, int order, std::uint64_t seed) {
    return generate_problem(a, b, dim, order, seed).dump();
  });

  m.def(
      "all_ceigs_copositive",
      [](const TensorPair& pair, bool assert_copositive, int k_max) {
        CopOptions o;
        o.assert_copositive = assert_copositive;
        o.k_max = k_max;
        py::gil_scoped_release release;
        auto v = all_ceigs_copositive(pair, o);
        py::gil_scoped_acquire acquire;
        return pair_list(v);
      },
      py::arg("pair"), py::arg("assert_copositive") = false, py::arg("k_max") = 0);

  m.def(
      "all_ceigs_general",
      [](const TensorPair& pair, std::uint64_t seed, int k_max) {
        GenOptions o;
        o.seed = seed;
        o.k_max = k_max;
        py::gil_scoped_release release;
        auto v = all_ceigs_general(pair, o);
        py::gil_scoped_acquire acquire;
        return pair_list(v);
      },
      py::arg("pair"), py::arg("seed") = 1, py::arg("k_max") = 0);

  m.def(
      "enumerate_all",
      [](const TensorPair& pair) {
        auto r = enumerate_all(pair);
        py::dict d;
        d["pairs"] = pair_list(r.pairs);
        d["diagnostics"] = r.diagnostics;
        return d;
      },
      py::arg("pair"));

  m.def(
      "run_problem",
      [](const TensorPair& pair, const std::string& method, std::uint64_t seed, bool assert_copositive, bool oracle) {
        RunOptions o;
        o.method = method;
        o.seed = seed;
        o.assert_copositive = assert_copositive;
        o.oracle = oracle;
        RunResult r;
        {
          py::gil_scoped_release release;
          r = run_problem(pair, o);
        }
        return py::make_tuple(r.report.dump(), r.exit_code);
      },
      py::arg("pair"), py::arg("method") = "auto", py::arg("seed") = 1, py::arg("assert_copositive") = false,
      py::arg("oracle") = false);
}
