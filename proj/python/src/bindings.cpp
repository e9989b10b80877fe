#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "boxkernel/filtering.hpp"
#include "boxkernel/graphon.hpp"
#include "boxkernel/learn.hpp"
#include "boxkernel/localize.hpp"
#include "boxkernel/verify.hpp"

namespace py = pybind11;
using namespace boxkernel;

namespace {

Signal to_signal(const Grid& g, const CVector& v) { return Signal(g, v); }

GridKernel sample_named(const std::string& name, const Grid& g, KernelRole role,
                        const std::map<std::string, double>& params) {
  return sample(catalog_entry(name, params), g, role);
}

}  // namespace

PYBIND11_MODULE(_boxkernel, m) {
  m.doc() = "Box-product kernel algebra, graphon spectra and polynomial filters";

  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  py::enum_<KernelRole>(m, "KernelRole")
      .value("symbol", KernelRole::symbol)
      .value("graphon", KernelRole::graphon)
      .value("kernel", KernelRole::kernel);

  py::enum_<SpectrumKind>(m, "SpectrumKind")
      .value("kernel", SpectrumKind::kernel)
      .value("graphon", SpectrumKind::graphon);

  py::class_<Grid>(m, "Grid")
      .def(py::init<double, double, int>(), py::arg("lo") = 0.0, py::arg("hi") = 1.0, py::arg("n") = 256)
      .def_property_readonly("lo", &Grid::lo)
      .def_property_readonly("hi", &Grid::hi)
      .def_property_readonly("n", &Grid::size)
      .def_property_readonly("nodes", &Grid::nodes)
      .def_property_readonly("weights", &Grid::weights)
      .def("nearest_index", &Grid::nearest_index)
      .def("__len__", &Grid::size)
      .def("__repr__", [](const Grid& g) {
        return "Grid(" + std::to_string(g.lo()) + ", " + std::to_string(g.hi()) + ", " +
               std::to_string(g.size()) + ")";
      });

  py::class_<GridKernel>(m, "GridKernel")
      .def(py::init<Grid, CMatrix, KernelRole>(), py::arg("grid"), py::arg("matrix"), py::arg("role"))
      .def_property_readonly("grid", &GridKernel::grid)
      .def_property_readonly("matrix", &GridKernel::matrix)
      .def_property_readonly("role", &GridKernel::role)
      .def("with_role", &GridKernel::with_role)
      .def("is_hermitian", &GridKernel::is_hermitian, py::arg("tol") = 1e-12);

  m.def("catalog_names", &catalog_names);
  m.def("sample", &sample_named, py::arg("name"), py::arg("grid"), py::arg("role") = KernelRole::graphon,
        py::arg("params") = std::map<std::string, double>{});
  m.def("adjoint", &adjoint);
  m.def("box_product", &box_product);
  m.def("box_delta", &box_delta);
  m.def("box_power", &box_power);
  m.def("induced_kernel", &induced_kernel);
  m.def("kernel_to_graphon", &kernel_to_graphon);
  m.def("induced_graphon_kernel", &induced_graphon_kernel, py::arg("w"), py::arg("n") = 1);
  m.def("digraphon_kernel", [](const GridKernel& w) { return digraphon_kernel(w).kernel; });

  py::class_<SpectralDecomposition>(m, "SpectralDecomposition")
      .def_property_readonly("eigenvalues", &SpectralDecomposition::eigenvalues)
      .def_property_readonly("modes", &SpectralDecomposition::modes)
      .def_property_readonly("kind", &SpectralDecomposition::kind)
      .def("__len__", &SpectralDecomposition::size);

  m.def("decompose", py::overload_cast<const GridKernel&, std::optional<int>>(&decompose), py::arg("k"),
        py::arg("modes") = py::none());
  m.def("mercer_reconstruct", &mercer_reconstruct);

  py::class_<BoxPolynomial>(m, "BoxPolynomial")
      .def(py::init<std::vector<cplx>>(), py::arg("coeffs"))
      .def_property_readonly("coeffs", &BoxPolynomial::coeffs)
      .def_property_readonly("degree", &BoxPolynomial::degree)
      .def("__call__", &BoxPolynomial::operator())
      .def("__mul__", &poly_mul)
      .def("__eq__", &BoxPolynomial::operator==);

  m.def("realize", &realize);
  m.def("spectral_transfer", &spectral_transfer);

  m.def(
      "apply_operator",
      [](const GridKernel& k, const CVector& f) { return apply_operator(k, to_signal(k.grid(), f)).values(); });
  m.def(
      "filter_operator",
      [](const BoxPolynomial& p, const GridKernel& k, const CVector& f) {
        return filter_operator(FilterSpec(p, k), to_signal(k.grid(), f)).values();
      },
      py::arg("poly"), py::arg("kernel"), py::arg("signal"));
  m.def(
      "filter_pointwise",
      [](const BoxPolynomial& p, const GridKernel& k, const CVector& f, double rank_tol) {
        const RkhsContext ctx(decompose(k), rank_tol);
        return filter_pointwise(FilterSpec(p, k), ctx, to_signal(k.grid(), f)).values();
      },
      py::arg("poly"), py::arg("kernel"), py::arg("signal"), py::arg("rank_tol") = 1e-10);

  m.def("gft", [](const CVector& f, const SpectralDecomposition& dec) {
    return gft(to_signal(dec.grid(), f), dec).values;
  });
  m.def("kv_fourier", [](const SpectralDecomposition& dec, int v) { return kv_fourier(dec, v).values; });

  m.def(
      "design_coeffs",
      [](const std::vector<int>& centers, const SpectralDecomposition& dec, int B, const std::vector<cplx>& t) {
        const CoefficientDesign d = design_coeffs(centers, dec, B, t);
        return py::dict(py::arg("coeffs") = d.coeffs, py::arg("mid_energy") = d.mid_energy,
                        py::arg("tail_energy") = d.tail_energy,
                        py::arg("constraint_residual") = d.constraint_residual);
      });

  py::class_<FilterModel>(m, "FilterModel")
      .def_readonly("abscissae", &FilterModel::abscissae)
      .def_readonly("targets", &FilterModel::targets)
      .def_readonly("coeffs", &FilterModel::coeffs)
      .def("__call__", &eval_filter);

  m.def(
      "fit_filter",
      [](const std::vector<double>& sigmas, const std::vector<double>& targets, const std::string& design,
         const std::map<std::string, double>& params, double reg) {
        return fit_filter(sigmas, targets, catalog_entry(design, params), reg);
      },
      py::arg("sigmas"), py::arg("targets"), py::arg("design_kernel") = "min",
      py::arg("params") = std::map<std::string, double>{}, py::arg("reg") = 0.0);

  m.def("verify_properties", [](std::uint64_t seed) {
    py::list out;
    for (const auto& r : verify_properties(seed))
      out.append(py::dict(py::arg("name") = r.name, py::arg("value") = r.value,
                          py::arg("tolerance") = r.tolerance, py::arg("pass") = r.pass));
    return out;
  }, py::arg("seed") = 2024);
}
