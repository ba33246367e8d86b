#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kelvin_eit/bounds.hpp"
#include "kelvin_eit/dnmaps.hpp"
#include "kelvin_eit/errors.hpp"
#include "kelvin_eit/geometry.hpp"
#include "kelvin_eit/harmonics.hpp"
#include "kelvin_eit/moebius2d.hpp"
#include "kelvin_eit/verify.hpp"

namespace py = pybind11;
using namespace kelvin_eit;

namespace {

py::dict report_to_dict(const BoundReport& rep) {
  py::dict out;
  out["rho"] = rep.rho;
  out["d"] = rep.d;
  out["r"] = rep.r ? py::object(py::float_(*rep.r)) : py::object(py::none());
  out["lower"] = rep.lower;
  out["mid"] = rep.mid ? py::object(py::float_(*rep.mid)) : py::object(py::none());
  out["upper"] = rep.upper;
  out["least_upper"] = rep.least_upper;
  out["worse"] = rep.worse;
  out["ratio_numeric"] =
      rep.ratio_numeric ? py::object(py::float_(*rep.ratio_numeric)) : py::object(py::none());
  out["sector"] = rep.sector;
  out["truncation"] = rep.truncation;
  out["converged"] = rep.converged;
  out["error"] = rep.error;
  return out;
}

NormRatioConfig make_config(int truncation, int max_sector, double tol) {
  NormRatioConfig config;
  config.truncation = truncation;
  config.max_sector = max_sector;
  config.tol = tol;
  return config;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Kelvin transforms, DN maps and distinguishability bounds";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<SingularityError>(m, "SingularityError", PyExc_ZeroDivisionError);
  py::register_exception<GridMismatchError>(m, "GridMismatchError", PyExc_ValueError);

  // geometry
  py::class_<InversionMap>(m, "InversionMap")
      .def(py::init<Vec, double>(), py::arg("center"), py::arg("radius"))
      .def_property_readonly("center", &InversionMap::center)
      .def_property_readonly("radius", &InversionMap::radius)
      .def("factor", &InversionMap::factor)
      .def("apply", &InversionMap::apply)
      .def("jacobian", [](const InversionMap& map, const Vec& x) { return jacobian(map, x); })
      .def("kelvin", [](const InversionMap& map, const ScalarField& f, const Vec& x) {
        return kelvin_apply(map, f, x);
      });

  py::class_<BallCorrespondence>(m, "BallCorrespondence")
      .def_readonly("dim", &BallCorrespondence::dim)
      .def_readonly("concentric", &BallCorrespondence::concentric)
      .def_readonly("a", &BallCorrespondence::a)
      .def_readonly("rho", &BallCorrespondence::rho)
      .def_readonly("e_a", &BallCorrespondence::e_a)
      .def_readonly("a_hat", &BallCorrespondence::a_hat)
      .def_readonly("b", &BallCorrespondence::b)
      .def_readonly("r", &BallCorrespondence::r)
      .def_readonly("C", &BallCorrespondence::C)
      .def_readonly("R", &BallCorrespondence::R)
      .def("apply", &BallCorrespondence::apply)
      .def("factor", &BallCorrespondence::factor)
      .def("kelvin", &BallCorrespondence::kelvin);

  m.def("correspondence_from_concentric", &correspondence_from_concentric, py::arg("a"), py::arg("r"));
  m.def("correspondence_from_ball", &correspondence_from_ball, py::arg("C"), py::arg("R"));
  m.def("boundary_inversion", &boundary_inversion);

  // harmonics
  py::class_<BoundaryGrid>(m, "BoundaryGrid")
      .def_readonly("dim", &BoundaryGrid::dim)
      .def_readonly("zonal", &BoundaryGrid::zonal)
      .def_readonly("points", &BoundaryGrid::points)
      .def_readonly("weights", &BoundaryGrid::weights)
      .def("__len__", &BoundaryGrid::size);
  m.def("circle_grid", &circle_grid, py::arg("count"));
  m.def("sphere_grid", &sphere_grid, py::arg("polar_count"), py::arg("azimuth_count"));
  m.def("default_grid", &default_grid, py::arg("d"), py::arg("max_degree"), py::arg("axis"));

  py::class_<HarmonicBasis>(m, "HarmonicBasis")
      .def(py::init<int, int, const Vec&>(), py::arg("dim"), py::arg("max_degree"), py::arg("axis"))
      .def("__len__", &HarmonicBasis::size)
      .def_property_readonly("degrees",
                             [](const HarmonicBasis& b) {
                               std::vector<int> out;
                               for (const auto& idx : b.indices()) out.push_back(idx.degree);
                               return out;
                             })
      .def("evaluate_all", &HarmonicBasis::evaluate_all)
      .def("sample", &HarmonicBasis::sample)
      .def("analyze", py::overload_cast<const BoundaryGrid&, const std::vector<double>&>(
                          &HarmonicBasis::analyze, py::const_))
      .def("synthesize", &HarmonicBasis::synthesize);
  m.def("harmonic_dimension", &harmonic_dimension);

  // DN maps
  m.def("lambda_hat", &lambda_hat, py::arg("n"), py::arg("d"), py::arg("r"));
  m.def("lambda_diff", &lambda_diff, py::arg("n"), py::arg("d"), py::arg("r"));
  m.def("lambda_ratio", &lambda_ratio, py::arg("n"), py::arg("d"), py::arg("r"));
  m.def("convergence_degree", &convergence_degree, py::arg("d"), py::arg("r"), py::arg("rel_tol") = 1e-6);
  m.def("radial_profile", [](int n, int d, double r, double eta) { return radial_profile(n, d, r)(eta); },
        py::arg("n"), py::arg("d"), py::arg("r"), py::arg("eta"));
  m.def("forward_solve_nonconcentric", &forward_solve_nonconcentric, py::arg("corr"), py::arg("basis"),
        py::arg("grid"), py::arg("f"), py::arg("x"));
  m.def("apply_dn_difference",
        py::overload_cast<const BallCorrespondence&, const HarmonicBasis&, const BoundaryGrid&,
                          const std::vector<double>&>(&apply_dn_difference),
        py::arg("corr"), py::arg("basis"), py::arg("grid"), py::arg("samples"));
  m.def("apply_dn_difference_concentric",
        py::overload_cast<double, const HarmonicBasis&, const BoundaryGrid&, const ScalarField&>(
            &apply_dn_difference),
        py::arg("r"), py::arg("basis"), py::arg("grid"), py::arg("f"));
  m.def("kelvin_galerkin_matrix", &kelvin_galerkin_matrix, py::arg("corr"), py::arg("basis"), py::arg("grid"));

  // bounds
  m.def("lower_bound", &lower_bound, py::arg("rho"));
  m.def("upper_bound", &upper_bound, py::arg("rho"));
  m.def("mid_bound", &mid_bound, py::arg("rho"), py::arg("d"), py::arg("r"));
  m.def("least_upper_bound", &least_upper_bound, py::arg("rho"), py::arg("d"));
  m.def("worse_bound", &worse_bound, py::arg("rho"), py::arg("d"));

  py::class_<NormRatioResult>(m, "NormRatioResult")
      .def_readonly("ratio", &NormRatioResult::ratio)
      .def_readonly("lambda0", &NormRatioResult::lambda0)
      .def_readonly("denominator", &NormRatioResult::denominator)
      .def_readonly("attaining_sector", &NormRatioResult::attaining_sector)
      .def_readonly("truncation", &NormRatioResult::truncation)
      .def_readonly("converged", &NormRatioResult::converged);

  m.def(
      "numeric_norm_ratio",
      [](double rho, int d, double r, int truncation, int max_sector, double tol) {
        py::gil_scoped_release release;
        return numeric_norm_ratio(rho, d, r, make_config(truncation, max_sector, tol));
      },
      py::arg("rho"), py::arg("d"), py::arg("r"), py::arg("truncation") = 0, py::arg("max_sector") = 6,
      py::arg("tol") = 1e-10);
  m.def(
      "weighted_operator_norm",
      [](const BallCorrespondence& corr, double s, double t, bool concentric_operator, int max_degree) {
        return weighted_operator_norm(corr, s, t, concentric_operator, max_degree);
      },
      py::arg("corr"), py::arg("s"), py::arg("t"), py::arg("concentric_operator"), py::arg("max_degree"));
  m.def(
      "sweep",
      [](const std::vector<double>& rho, const std::vector<double>& r, const std::vector<int>& d,
         int truncation, int max_sector, double tol, unsigned threads) {
        std::vector<BoundReport> reports;
        {
          py::gil_scoped_release release;
          reports = sweep(rho, r, d, make_config(truncation, max_sector, tol), threads);
        }
        py::list out;
        for (const auto& rep : reports) out.append(report_to_dict(rep));
        return out;
      },
      py::arg("rho"), py::arg("r"), py::arg("d"), py::arg("truncation") = 0, py::arg("max_sector") = 6,
      py::arg("tol") = 1e-10, py::arg("threads") = 0);

  // moebius
  m.def("moebius_apply", &moebius_apply, py::arg("a"), py::arg("x"));
  m.def("inversion_complex", &inversion_complex, py::arg("a"), py::arg("x"));
  m.def("reflect_across", &reflect_across, py::arg("a"), py::arg("z"));
  m.def("reflection_identity_residual", &reflection_identity_residual, py::arg("a"), py::arg("x"));
  m.def(
      "intersection_check",
      [](Complex a, Complex x, double tol) {
        const IntersectionReport rep = intersection_check(a, x, tol);
        py::dict out;
        out["inversion_image"] = rep.inversion_image;
        out["moebius_image"] = rep.moebius_image;
        out["r_xa"] = rep.r_xa;
        out["r_tilde"] = rep.r_tilde;
        out["max_residual"] = rep.max_residual;
        out["passed"] = rep.passed;
        return out;
      },
      py::arg("a"), py::arg("x"), py::arg("tol") = 1e-12);

  // verification
  m.def(
      "verify",
      [](std::uint64_t seed, const std::vector<std::string>& only) {
        py::dict out;
        for (const auto& suite : run_verification(seed, only)) {
          py::list checks;
          for (const auto& c : suite.checks)
            checks.append(py::dict(py::arg("name") = c.name, py::arg("passed") = c.passed,
                                   py::arg("error") = c.error, py::arg("tol") = c.tol));
          out[py::str(suite.suite)] = checks;
        }
        return out;
      },
      py::arg("seed") = 0, py::arg("only") = std::vector<std::string>{});
}
