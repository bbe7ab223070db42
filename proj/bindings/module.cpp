#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "logeuler/checks.hpp"
#include "logeuler/classical.hpp"
#include "logeuler/hydro.hpp"
#include "logeuler/scenario.hpp"
#include "logeuler/serialization.hpp"
#include "logeuler/symmetrizer.hpp"

namespace py = pybind11;
using namespace logeuler;

namespace {

EosSpec eos_from_json_str(const std::string& text) {
  try {
    return nlohmann::json::parse(text).get<EosSpec>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad EOS JSON: ") + e.what());
  }
}

py::dict report_to_dict(const Report& rep) {
  py::dict d;
  d["command"] = rep.command;
  d["seed"] = rep.seed;
  d["pass"] = rep.pass();
  py::list checks;
  for (const auto& c : rep.checks) {
    py::dict cd;
    cd["name"] = c.name;
    cd["pass"] = c.pass;
    cd["metric"] = c.metric;
    cd["tolerance"] = c.tolerance;
    cd["detail"] = c.detail;
    checks.append(cd);
  }
  d["checks"] = checks;
  d["artifacts"] = rep.artifacts;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Barotropic EOS family with a logarithmic branch, the symmetrizing "
            "change of variables for the relativistic Euler system, and a 1D "
            "finite-volume verification solver";

  py::register_exception<Error>(m, "LogeulerError");

  py::enum_<EosFamily>(m, "EosFamily")
      .value("Polytropic", EosFamily::Polytropic)
      .value("Chaplygin", EosFamily::Chaplygin)
      .value("Logarithmic", EosFamily::Logarithmic)
      .value("GeneralPower", EosFamily::GeneralPower);

  py::class_<EosSpec>(m, "EosSpec")
      .def(py::init<>())
      .def_readwrite("family", &EosSpec::family)
      .def_readwrite("A", &EosSpec::A)
      .def_readwrite("K1", &EosSpec::K1)
      .def_readwrite("K", &EosSpec::K)
      .def_readwrite("c", &EosSpec::c)
      .def_static("polytropic", &EosSpec::polytropic, py::arg("A"),
                  py::arg("K1") = 1.0, py::arg("K") = 0.0, py::arg("c") = 1.0)
      .def_static("chaplygin", &EosSpec::chaplygin, py::arg("A"),
                  py::arg("K1") = 1.0, py::arg("K") = 0.0, py::arg("c") = 1.0)
      .def_static("logarithmic", &EosSpec::logarithmic, py::arg("K1") = 1.0,
                  py::arg("K") = 0.0, py::arg("c") = 1.0)
      .def_static("general_power", &EosSpec::general_power, py::arg("A"),
                  py::arg("K1") = 1.0, py::arg("K") = 0.0, py::arg("c") = 1.0)
      .def("validate", &EosSpec::validate)
      .def("to_json", [](const EosSpec& eos) { return nlohmann::json(eos).dump(); })
      .def_static("from_json", &eos_from_json_str, py::arg("text"))
      .def("__repr__", [](const EosSpec& eos) {
        return "EosSpec(" + std::string(to_string(eos.family)) + ", A=" +
               std::to_string(eos.A) + ", K1=" + std::to_string(eos.K1) + ")";
      });

  m.def("pressure", &pressure, py::arg("eos"), py::arg("rho"));
  m.def("dp_drho", &dp_drho, py::arg("eos"), py::arg("rho"));
  m.def("d2p_drho2", &d2p_drho2, py::arg("eos"), py::arg("rho"));
  m.def("sound_speed", &sound_speed, py::arg("eos"), py::arg("rho"));
  m.def("enthalpy_density", &enthalpy_density, py::arg("eos"), py::arg("rho"));
  m.def("ode_residual", &ode_residual, py::arg("eos"), py::arg("rho"));
  m.def("subluminal_check", &subluminal_check, py::arg("eos"), py::arg("rho"));

  py::class_<AdmissibleWindow>(m, "AdmissibleWindow")
      .def(py::init<>())
      .def_readwrite("rho_star", &AdmissibleWindow::rho_star)
      .def_readwrite("rho_max", &AdmissibleWindow::rho_max)
      .def_readwrite("delta", &AdmissibleWindow::delta)
      .def("rho_min", &AdmissibleWindow::rho_min)
      .def("velocity_margin", &AdmissibleWindow::velocity_margin);

  m.def("lemma1_bounds", &lemma1_bounds, py::arg("eos"),
        py::arg("rho_max_factor") = 1e3, py::arg("delta_factor") = 1e-6);

  py::class_<SymmetryParams>(m, "SymmetryParams")
      .def(py::init<double, double>(), py::arg("A"), py::arg("B") = 0.0)
      .def_readwrite("A", &SymmetryParams::A)
      .def_readwrite("B", &SymmetryParams::B);

  m.def("v_of_rho",
        py::overload_cast<const EosSpec&, const SymmetryParams&, double>(&v_of_rho),
        py::arg("eos"), py::arg("params"), py::arg("rho"));
  m.def("rho_of_v", &rho_of_v, py::arg("eos"), py::arg("params"), py::arg("v"));

  py::class_<ClassicalField1D>(m, "ClassicalField1D")
      .def(py::init<>())
      .def_readwrite("rho", &ClassicalField1D::rho)
      .def_readwrite("u", &ClassicalField1D::u)
      .def_readwrite("dx", &ClassicalField1D::dx)
      .def_readwrite("t", &ClassicalField1D::t);

  py::class_<SymmetricField1D>(m, "SymmetricField1D")
      .def_readonly("v", &SymmetricField1D::v)
      .def_readonly("u", &SymmetricField1D::u)
      .def_readonly("dx", &SymmetricField1D::dx)
      .def_readonly("t", &SymmetricField1D::t);

  py::class_<EvolvePairResult>(m, "EvolvePairResult")
      .def_readonly("classical", &EvolvePairResult::classical)
      .def_readonly("symmetric", &EvolvePairResult::symmetric)
      .def_readonly("v_from_classical", &EvolvePairResult::v_from_classical)
      .def_readonly("max_abs_diff", &EvolvePairResult::max_abs_diff)
      .def_readonly("steps", &EvolvePairResult::steps);

  m.def(
      "evolve_pair",
      [](const ClassicalField1D& init, const EosSpec& eos, const SymmetryParams& p,
         double t_end) { return evolve_pair(init, eos, p, t_end); },
      py::arg("init"), py::arg("eos"), py::arg("params"), py::arg("t_end"));

  py::class_<PrimState>(m, "PrimState")
      .def(py::init([](double rho, std::array<double, 3> v) {
             return PrimState{rho, v};
           }),
           py::arg("rho"), py::arg("v") = std::array<double, 3>{0.0, 0.0, 0.0})
      .def_readwrite("rho", &PrimState::rho)
      .def_readwrite("v", &PrimState::v)
      .def("v_squared", &PrimState::v_squared);

  py::class_<SymState>(m, "SymState")
      .def(py::init([](std::array<double, 4> w) { return SymState{w}; }),
           py::arg("w") = std::array<double, 4>{0.0, 0.0, 0.0, 0.0})
      .def_readwrite("w", &SymState::w);

  py::class_<CoeffSet>(m, "CoeffSet")
      .def_readonly("Psi", &CoeffSet::Psi)
      .def_readonly("B1", &CoeffSet::B1)
      .def_readonly("B2", &CoeffSet::B2)
      .def_readonly("B3", &CoeffSet::B3)
      .def_readonly("B4", &CoeffSet::B4)
      .def_readonly("B5", &CoeffSet::B5);

  py::class_<SpdReport>(m, "SpdReport")
      .def_readonly("lambda1", &SpdReport::lambda1)
      .def_readonly("lambda2", &SpdReport::lambda2)
      .def_readonly("lambda3", &SpdReport::lambda3)
      .def_readonly("numeric", &SpdReport::numeric)
      .def_readonly("max_rel_eigen_error", &SpdReport::max_rel_eigen_error)
      .def_readonly("cholesky_ok", &SpdReport::cholesky_ok)
      .def_readonly("spd", &SpdReport::spd);

  py::enum_<AkVariant>(m, "AkVariant")
      .value("VelocityWeighted", AkVariant::VelocityWeighted)
      .value("Unweighted", AkVariant::Unweighted);

  py::class_<Symmetrizer>(m, "Symmetrizer")
      .def(py::init<const EosSpec&>(), py::arg("eos"))
      .def(py::init<EosSpec, AdmissibleWindow, bool>(), py::arg("eos"),
           py::arg("window"), py::arg("enforce_margins") = true)
      .def("kappa", &Symmetrizer::kappa)
      .def("phi", &Symmetrizer::phi, py::arg("rho"))
      .def("big_phi", &Symmetrizer::big_phi, py::arg("rho"))
      .def("big_phi_prime", &Symmetrizer::big_phi_prime, py::arg("rho"))
      .def("to_sym", &Symmetrizer::to_sym, py::arg("state"))
      .def("from_sym", &Symmetrizer::from_sym, py::arg("w"))
      .def("coeffs", &Symmetrizer::coeffs, py::arg("state"))
      .def("assemble_A0", &Symmetrizer::assemble_A0, py::arg("state"))
      .def("assemble_Ak", &Symmetrizer::assemble_Ak, py::arg("state"), py::arg("k"),
           py::arg("variant") = AkVariant::VelocityWeighted)
      .def("check_A0_spd", &Symmetrizer::check_A0_spd, py::arg("state"))
      .def("jacobian_w", &Symmetrizer::jacobian_w, py::arg("state"))
      .def("jacobian_det", &Symmetrizer::jacobian_det, py::arg("state"))
      .def("build_phi_table", &Symmetrizer::build_phi_table, py::arg("nodes") = 2048)
      .def("window", &Symmetrizer::window);

  m.def(
      "resolve_ak_variant",
      [](const Symmetrizer& sym, int samples, std::uint64_t seed) {
        SplitMix64 rng(seed);
        const VariantResolution vr = resolve_ak_variant(sym, samples, rng);
        py::dict d;
        d["selected"] = vr.selected;
        d["residual_selected"] = vr.residual_selected;
        d["residual_rejected"] = vr.residual_rejected;
        return d;
      },
      py::arg("symmetrizer"), py::arg("samples") = 64, py::arg("seed") = 1);

  py::class_<PrimState1D>(m, "PrimState1D")
      .def(py::init<double, double>(), py::arg("rho"), py::arg("v") = 0.0)
      .def_readwrite("rho", &PrimState1D::rho)
      .def_readwrite("v", &PrimState1D::v);

  py::class_<ConsState>(m, "ConsState")
      .def(py::init<double, double>(), py::arg("D") = 0.0, py::arg("S") = 0.0)
      .def_readwrite("D", &ConsState::D)
      .def_readwrite("S", &ConsState::S);

  py::class_<Flux1D>(m, "Flux1D")
      .def_readonly("D", &Flux1D::D)
      .def_readonly("S", &Flux1D::S);

  m.def("prim_to_cons", &prim_to_cons, py::arg("eos"), py::arg("state"));
  m.def("cons_to_prim", &cons_to_prim, py::arg("eos"), py::arg("cons"),
        py::arg("window"), py::arg("rho_guess") = 0.0);
  m.def("flux", &flux, py::arg("eos"), py::arg("state"));
  m.def("characteristic_speeds", &characteristic_speeds, py::arg("eos"), py::arg("state"));
  m.def("wave_speeds", &wave_speeds, py::arg("eos"), py::arg("left"), py::arg("right"));

  m.def(
      "run_scenario",
      [](const std::string& scenario_json, const std::filesystem::path& out_dir) {
        const HydroScenario scenario =
            hydro_scenario_from_json(nlohmann::json::parse(scenario_json));
        const RunSummary s = run_scenario(scenario, out_dir);
        py::dict d;
        d["steps"] = s.steps;
        d["t_final"] = s.t_final;
        d["drift_D"] = s.drift_D;
        d["drift_S"] = s.drift_S;
        d["clamped_cells"] = s.clamped_cells;
        py::list arts;
        for (const auto& a : s.artifacts) arts.append(a.string());
        d["artifacts"] = arts;
        return d;
      },
      py::arg("scenario_json"), py::arg("out_dir"),
      "Integrate a scenario given as a JSON string; snapshots land in out_dir.");

  m.def(
      "check_eos",
      [](const EosSpec& eos, int samples, std::uint64_t seed) {
        SuiteOptions opts;
        opts.samples = samples;
        opts.seed = seed;
        return report_to_dict(run_eos_checks(eos, opts));
      },
      py::arg("eos"), py::arg("samples") = 1000, py::arg("seed") = 1);

  m.def(
      "verify_symmetrizer",
      [](const EosSpec& eos, int samples, std::uint64_t seed) {
        SuiteOptions opts;
        opts.samples = samples;
        opts.seed = seed;
        return report_to_dict(run_symmetrizer_checks(eos, opts));
      },
      py::arg("eos"), py::arg("samples") = 1000, py::arg("seed") = 1);
}
