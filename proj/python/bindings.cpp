// Copyright 2026 The qbm Authors
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

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>
#include <vector>

#include "qbm/cat.hpp"
#include "qbm/cli.hpp"
#include "qbm/densmat.hpp"
#include "qbm/fokker_planck.hpp"
#include "qbm/gaussian.hpp"
#include "qbm/oracle.hpp"
#include "qbm/validation.hpp"

namespace py = pybind11;
using namespace qbm;

namespace {

py::array_t<double> grid_array(const PhaseSpaceGrid& g) {
  const GridSpec& s = g.spec();
  py::array_t<double> out({s.nq, s.np});
  auto v = g.values();
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

py::dict fokker_planck(const SimParams& params, const StateInit& state, double t_end, std::size_t nq,
                       std::size_t np, double cfl) {
  const GridSpec spec = covering_grid(params, state, t_end, nq, np);
  PhaseSpaceGrid w = post_squeeze_grid(spec, params, state);
  w.normalize();
  const CoefficientSource source = extracted_coefficients(params);
  FokkerPlanckOptions opts;
  opts.coefficients = source;
  const double dt = cfl * max_stable_dt(spec, params, source(t_end > 0 ? t_end : 1.0 / params.gamma));
  FokkerPlanckResult r;
  {
    py::gil_scoped_release release;
    r = fokker_planck_integrate(w, params, t_end, dt, opts);
  }
  const PhaseSpaceGrid& last = r.snapshots.back().grid;
  const GridMoments m = last.moments();
  py::array_t<double> q(spec.nq), p(spec.np);
  for (std::size_t i = 0; i < spec.nq; ++i) q.mutable_data()[i] = spec.q(i);
  for (std::size_t j = 0; j < spec.np; ++j) p.mutable_data()[j] = spec.p(j);
  py::dict out;
  out["q"] = q;
  out["p"] = p;
  out["w"] = grid_array(last);
  out["steps"] = r.steps;
  out["dt"] = r.dt;
  out["max_mass_drift"] = r.max_mass_drift;
  out["moments"] = py::dict(py::arg("mean_q") = m.mean_q, py::arg("mean_p") = m.mean_p, py::arg("var_q") = m.var_q,
                            py::arg("var_p") = m.var_p, py::arg("cov_qp") = m.cov_qp, py::arg("mass") = m.mass);
  return out;
}

}  // namespace

PYBIND11_MODULE(_qbm, m) {
  m.doc() = "Exact solution of the Ohmic free-particle master equation at high temperature";

  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  py::enum_<Prep>(m, "Prep").value("ZeroTemp", Prep::ZeroTemp).value("BathTemp", Prep::BathTemp);

  py::class_<SimParams>(m, "SimParams")
      .def(py::init([](double mass, double gamma, double kT, double hbar) {
             SimParams p{mass, gamma, kT, hbar};
             p.validate();
             return p;
           }),
           py::arg("m") = 1.0, py::arg("gamma") = 1.0, py::arg("kT") = 5.0, py::arg("hbar") = 1.0)
      .def_readwrite("m", &SimParams::m)
      .def_readwrite("gamma", &SimParams::gamma)
      .def_readwrite("kT", &SimParams::kT)
      .def_readwrite("hbar", &SimParams::hbar)
      .def("thermal_wavelength", &SimParams::thermal_wavelength)
      .def("__repr__", [](const SimParams& p) {
        std::ostringstream s;
        s << "SimParams(m=" << p.m << ", gamma=" << p.gamma << ", kT=" << p.kT << ", hbar=" << p.hbar << ")";
        return s.str();
      });
  m.def("figure_params", &figure_params);

  py::class_<GaussianInit>(m, "GaussianInit")
      .def(py::init([](double x0, double sigma, Prep prep) {
             GaussianInit g{x0, sigma, prep};
             g.validate();
             return g;
           }),
           py::arg("x0"), py::arg("sigma"), py::arg("prep") = Prep::ZeroTemp)
      .def_readwrite("x0", &GaussianInit::x0)
      .def_readwrite("sigma", &GaussianInit::sigma)
      .def_readwrite("prep", &GaussianInit::prep);

  py::class_<CatInit>(m, "CatInit")
      .def(py::init([](double d, double sigma, Prep prep) {
             CatInit c{d, sigma, prep};
             c.validate();
             return c;
           }),
           py::arg("d"), py::arg("sigma"), py::arg("prep") = Prep::ZeroTemp)
      .def_readwrite("d", &CatInit::d)
      .def_readwrite("sigma", &CatInit::sigma)
      .def_readwrite("prep", &CatInit::prep)
      .def("norm", &CatInit::norm)
      .def("overlap_exponent", &CatInit::overlap_exponent);

  py::class_<GreenEval>(m, "GreenEval")
      .def_readonly("g", &GreenEval::g)
      .def_readonly("gdot", &GreenEval::gdot)
      .def_readonly("gddot", &GreenEval::gddot);
  py::class_<FluctuationMoments>(m, "FluctuationMoments")
      .def_readonly("x2", &FluctuationMoments::x2)
      .def_readonly("xxd", &FluctuationMoments::xxd)
      .def_readonly("xd2", &FluctuationMoments::xd2);
  py::class_<SecondMoments>(m, "SecondMoments")
      .def_readonly("a11", &SecondMoments::a11)
      .def_readonly("a12", &SecondMoments::a12)
      .def_readonly("a22", &SecondMoments::a22)
      .def_readonly("det", &SecondMoments::det)
      .def_readonly("prep", &SecondMoments::prep);
  py::class_<PhasePoint>(m, "PhasePoint").def_readonly("q", &PhasePoint::q).def_readonly("p", &PhasePoint::p);
  py::class_<InterferenceMeasure>(m, "InterferenceMeasure")
      .def_readonly("a_of_t", &InterferenceMeasure::a_of_t)
      .def_readonly("phi_q", &InterferenceMeasure::phi_q)
      .def_readonly("phi_p", &InterferenceMeasure::phi_p);
  py::class_<ExtractedCoefficients>(m, "ExtractedCoefficients")
      .def_readonly("gamma_coeff", &ExtractedCoefficients::gamma_coeff)
      .def_readonly("omega2", &ExtractedCoefficients::omega2)
      .def_readonly("d_pp", &ExtractedCoefficients::d_pp)
      .def_readonly("d_qp", &ExtractedCoefficients::d_qp);

  m.def("green_function", &green_function, py::arg("t"), py::arg("params"));
  m.def("fluctuation_moments", &fluctuation_moments, py::arg("t"), py::arg("params"));
  m.def("decoherence_time", &decoherence_time, py::arg("params"), py::arg("d"));
  m.def("second_moments", py::overload_cast<double, const SimParams&, double, Prep>(&second_moments), py::arg("t"),
        py::arg("params"), py::arg("sigma"), py::arg("prep") = Prep::ZeroTemp);
  m.def("mean_trajectory", &mean_trajectory, py::arg("t"), py::arg("params"), py::arg("x0"));

  m.def("wigner", &wigner_gaussian, py::arg("q"), py::arg("p"), py::arg("t"), py::arg("params"), py::arg("state"));
  m.def("wigner", &wigner_cat, py::arg("q"), py::arg("p"), py::arg("t"), py::arg("params"), py::arg("state"));
  m.def(
      "wigner_grid",
      [](const py::array_t<double>& q, const py::array_t<double>& p, double t, const SimParams& params,
         const StateInit& state) {
        auto qs = q.unchecked<1>();
        auto ps = p.unchecked<1>();
        py::array_t<double> out({qs.shape(0), ps.shape(0)});
        auto o = out.mutable_unchecked<2>();
        for (py::ssize_t i = 0; i < qs.shape(0); ++i) {
          for (py::ssize_t j = 0; j < ps.shape(0); ++j) {
            o(i, j) = std::holds_alternative<CatInit>(state)
                          ? wigner_cat(qs(i), ps(j), t, params, std::get<CatInit>(state))
                          : wigner_gaussian(qs(i), ps(j), t, params, std::get<GaussianInit>(state));
          }
        }
        return out;
      },
      py::arg("q"), py::arg("p"), py::arg("t"), py::arg("params"), py::arg("state"));
  m.def("char_function", &char_function_gaussian, py::arg("Q"), py::arg("P"), py::arg("t"), py::arg("params"),
        py::arg("state"));
  m.def("char_function", &char_function_cat, py::arg("Q"), py::arg("P"), py::arg("t"), py::arg("params"),
        py::arg("state"));

  m.def("interference_measure", &interference_measure, py::arg("t"), py::arg("params"), py::arg("state"));
  m.def("interference_shorttime", &interference_shorttime, py::arg("t"), py::arg("params"), py::arg("state"));
  m.def("probability_distribution", &probability_distribution, py::arg("x"), py::arg("t"), py::arg("params"),
        py::arg("state"));
  m.def("attenuation", &attenuation, py::arg("t"), py::arg("params"), py::arg("state"));
  m.def("attenuation_shorttime", &attenuation_shorttime, py::arg("t"), py::arg("params"), py::arg("state"));

  m.def("rho_element", &rho_element_gaussian, py::arg("x"), py::arg("x_prime"), py::arg("t"), py::arg("params"),
        py::arg("state"));
  m.def("rho_element", &rho_element_cat, py::arg("x"), py::arg("x_prime"), py::arg("t"), py::arg("params"),
        py::arg("state"));
  m.def("purity", &purity, py::arg("t"), py::arg("params"), py::arg("state"));
  m.def("purity_shorttime", &purity_shorttime, py::arg("t"), py::arg("params"), py::arg("sigma"));
  m.def("negativity_witness", &negativity_witness, py::arg("t"), py::arg("params"), py::arg("sigma"),
        py::arg("prep") = Prep::ZeroTemp);
  m.def(
      "purity_quadrature",
      [](double t, const SimParams& params, const StateInit& state) {
        return purity_quadrature(char_sampler(t, params, state), char_box(t, params, state), params.hbar).value;
      },
      py::arg("t"), py::arg("params"), py::arg("state"));

  m.def(
      "extract_coefficients",
      [](double t, const SimParams& params, double sigma_a, double sigma_b) {
        return extract_coefficients(t, params, {sigma_a, sigma_b});
      },
      py::arg("t"), py::arg("params"), py::arg("sigma_a"), py::arg("sigma_b"));
  m.def("fokker_planck", &fokker_planck, py::arg("params"), py::arg("state"), py::arg("t_end"), py::arg("nq") = 256,
        py::arg("np") = 256, py::arg("cfl") = 0.9,
        "Integrate from the post-squeeze state on a covering grid; returns the final grid and its moments.");

  m.def(
      "validate",
      [](const std::vector<std::string>& groups, std::size_t fp_grid) {
        ValidationSettings settings;
        settings.fp_grid = fp_grid;
        py::list out;
        for (const CheckGroup& g : check_groups()) {
          if (!groups.empty() && std::find(groups.begin(), groups.end(), g.name) == groups.end()) continue;
          for (const CheckResult& r : g.run(settings)) {
            out.append(py::make_tuple(r.name, r.error, r.tolerance, r.passed));
          }
        }
        return out;
      },
      py::arg("groups") = std::vector<std::string>{}, py::arg("fp_grid") = 256,
      "Run the cross-validation checks at the figure parameters; returns (name, error, tolerance, passed) tuples.");

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
