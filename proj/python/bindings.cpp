#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "moltrap/aqrm.hpp"
#include "moltrap/sweeps.hpp"

namespace py = pybind11;
using namespace moltrap;

namespace {

PhysicalConfig make_config(double j0, double omega_mu, std::array<double, 3> omega,
                           std::array<double, 3> ell_over_L, double delta) {
  PhysicalConfig cfg;
  cfg.j0 = j0;
  cfg.omega_mu = omega_mu;
  cfg.omega = omega;
  cfg.ell_over_L = ell_over_L;
  cfg.delta = delta;
  cfg.validate();
  return cfg;
}

py::dict gate_dict(const GateResult& r) {
  py::dict d;
  d["fidelity"] = r.fidelity;
  d["fidelity_local_phase_opt"] = r.fidelity_local_opt;
  d["conditional_phase"] = r.conditional_phase;
  py::list phases, returns;
  for (int c = 0; c < 4; ++c) {
    phases.append(r.output_phases[c]);
    returns.append(r.internal_return_population[c]);
  }
  d["output_phases"] = phases;
  d["return_populations"] = returns;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Quantized-motion dipole-dipole simulations for two optically trapped "
            "polar molecules. Frequencies in 2*pi*kHz, times in ms.";

  py::class_<CouplingConstants>(m, "CouplingConstants")
      .def_readonly("eta", &CouplingConstants::eta)
      .def_readonly("g", &CouplingConstants::g)
      .def_readonly("zeta", &CouplingConstants::zeta)
      .def("__repr__", [](const CouplingConstants& c) {
        return "CouplingConstants(eta=" + std::to_string(c.eta) + ", g=" + std::to_string(c.g) +
               ")";
      });

  m.def(
      "derive_couplings",
      [](double j0, std::array<double, 3> ell_over_L) {
        PhysicalConfig cfg;
        cfg.j0 = j0;
        cfg.ell_over_L = ell_over_L;
        return derive_couplings(cfg);
      },
      py::arg("j0"), py::arg("ell_over_L"),
      "Coupling constants (eta, g, zeta) from the DDI magnitude and ell/L ratios.");

  m.def(
      "ddi_exact",
      [](double j0, std::array<double, 3> eps) {
        PhysicalConfig cfg;
        cfg.j0 = j0;
        return ddi_exact(cfg, eps);
      },
      py::arg("j0"), py::arg("eps"),
      "Exact dipole-dipole coupling at a classical displacement (eps_x, eps_y, eps_z).");

  m.def(
      "annihilation", [](int dim) { return annihilation(dim).elements; }, py::arg("dim"),
      "Truncated bosonic annihilation operator.");

  m.def("thermal_weights", [](double nbar, int cutoff) {
    std::vector<double> p;
    for (auto& [n, w] : MotionalEnsemble::thermal(nbar, cutoff).weights) p.push_back(w);
    return p;
  });

  m.def(
      "pedersen_fidelity",
      [](const Matrix& m) {
        if (m.rows() != 4 || m.cols() != 4)
          throw std::invalid_argument("overlap matrix must be 4x4");
        return pedersen_fidelity(Eigen::Matrix4cd(m));
      },
      py::arg("overlap_matrix"),
      "Average gate fidelity [Tr(M M+) + |Tr M|^2] / 20 on the 4-state subspace.");

  m.def(
      "aqrm_spectrum_1d",
      [](double g, double eta, double omega_z, int truncation, int levels) {
        AqrmSpec s;
        s.dims = 1;
        s.omega = {0, 0, omega_z};
        s.constants.eta = eta;
        s.constants.g = g;
        s.truncation = {truncation, truncation, truncation};
        Eigen::VectorXd evs = spectrum(build_aqrm_1d(s));
        return Eigen::VectorXd(evs.head(std::min<int>(levels, evs.size())));
      },
      py::arg("g"), py::arg("eta"), py::arg("omega_z") = 1.0, py::arg("truncation") = 61,
      py::arg("levels") = 10, "Numeric eigenvalues of the 1D Rabi model.");

  m.def(
      "aqrm_analytic_1d",
      [](double g, double eta, double omega_z, int levels) {
        AqrmSpec s;
        s.dims = 1;
        s.omega = {0, 0, omega_z};
        s.constants.eta = eta;
        s.constants.g = g;
        std::vector<double> out;
        for (const auto& l : analytic_spectrum_1d(s, levels)) out.push_back(l.energy);
        out.resize(std::min<size_t>(out.size(), levels));
        return out;
      },
      py::arg("g"), py::arg("eta"), py::arg("omega_z") = 1.0, py::arg("levels") = 10,
      "Displaced-oscillator analytic energies, ascending.");

  m.def(
      "blockade_cz",
      [](double j0, double omega_mu) {
        PhysicalConfig cfg = make_config(j0, omega_mu, {0, 0, 0}, {0, 0, 0}, 0);
        ProtocolSpace sp = make_protocol_space(Protocol::blockade_cz);
        return gate_dict(run_gate(sp, cfg, sequence_blockade_cz(cfg),
                                  MotionalEnsemble::pure_fock(0),
                                  target_unitary(Protocol::blockade_cz)));
      },
      py::arg("j0") = 20.0, py::arg("omega_mu") = 1.0,
      "Blockade CZ gate without motional coupling.");

  m.def(
      "iswap_one_pulse",
      [](double omega_mu, double j0) {
        PhysicalConfig cfg = make_config(j0, omega_mu, {0, 0, 0}, {0, 0, 0}, 0);
        ProtocolSpace sp = make_protocol_space(Protocol::iswap);
        return gate_dict(run_gate(sp, cfg, sequence_iswap_one_pulse(cfg),
                                  MotionalEnsemble::pure_fock(0),
                                  target_unitary(Protocol::iswap)));
      },
      py::arg("omega_mu") = 0.641, py::arg("j0") = 0.37,
      "Single-pulse exchange gate (total area 1.732 pi).");

  m.def(
      "quasi_blockade_calibrate",
      [](double j_ratio, double omega) {
        PhysicalConfig cfg = make_config(j_ratio * omega, omega, {0, 0, 0}, {0, 0, 0}, 0);
        auto cal = calibrate_quasi_blockade_theta(cfg);
        return py::make_tuple(cal.theta, cal.echo_population);
      },
      py::arg("j_ratio") = 11.832, py::arg("omega") = 1.0,
      "(theta, pulse-pair echo population) for the eight-pulse gate.");

  m.def(
      "quasi_blockade",
      [](double j_ratio, double phi, double omega) {
        PhysicalConfig cfg = make_config(j_ratio * omega, omega, {0, 0, 0}, {0, 0, 0}, 0);
        auto cal = calibrate_quasi_blockade_theta(cfg);
        ProtocolSpace sp = make_protocol_space(Protocol::quasi_blockade);
        py::dict d = gate_dict(run_gate(sp, cfg, sequence_quasi_blockade(cfg, phi, cal.theta),
                                        MotionalEnsemble::pure_fock(0),
                                        target_unitary(Protocol::quasi_blockade, phi, cal.theta)));
        d["theta"] = cal.theta;
        d["echo_population"] = cal.echo_population;
        return d;
      },
      py::arg("j_ratio") = 11.832, py::arg("phi") = M_PI, py::arg("omega") = 1.0,
      "Eight-pulse controlled-phase gate, calibrated automatically.");

  m.def(
      "motion_fidelity",
      [](const std::string& protocol, double ell, double nbar, int cutoff) {
        MotionSpec spec;
        Protocol p;
        if (protocol == "one-pulse-iswap") {
          spec.cfg = motion_iswap_default_config();
          p = Protocol::iswap;
        } else if (protocol == "quasi-blockade") {
          spec.cfg = motion_qb_default_config();
          p = Protocol::quasi_blockade;
        } else {
          throw std::invalid_argument("protocol must be one-pulse-iswap or quasi-blockade");
        }
        spec.ell_lo = 0;
        spec.ell_hi = ell;
        spec.points = 2;
        spec.nbars = {nbar};
        spec.fock_cutoff = cutoff;
        return motion_infidelity_curve(p, spec).back().fidelity;
      },
      py::arg("protocol"), py::arg("ell"), py::arg("nbar") = 2.0, py::arg("cutoff") = 41,
      "Gate fidelity with a thermal x-mode of the given coupling ratio ell/L.");

  m.attr("__version__") = "0.1.0";
}
