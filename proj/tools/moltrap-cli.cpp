// Command-line front end: parameter scans and gate simulations for two
// optically trapped polar molecules with quantized-motion DDI coupling.
// Energies/frequencies are in units of 2*pi*kHz, times in ms.

#include <cmath>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "moltrap/aqrm.hpp"
#include "moltrap/io.hpp"
#include "moltrap/sweeps.hpp"

using json = nlohmann::json;
using namespace moltrap;

namespace {

struct Range {
  double lo = 0, hi = 0;
};

Range parse_range(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos)
    throw CLI::ValidationError("range", "expected lo:hi, got '" + s + "'");
  try {
    return {std::stod(s.substr(0, colon)), std::stod(s.substr(colon + 1))};
  } catch (const std::exception&) {
    throw CLI::ValidationError("range", "cannot parse '" + s + "'");
  }
}

MotionalEnsemble parse_ensemble(const std::string& s, int cutoff) {
  const auto colon = s.find(':');
  const std::string kind = s.substr(0, colon);
  if (colon == std::string::npos)
    throw CLI::ValidationError("ensemble", "expected fock:n or thermal:nbar");
  const std::string arg = s.substr(colon + 1);
  try {
    if (kind == "fock") return MotionalEnsemble::pure_fock(std::stoi(arg));
    if (kind == "thermal") return MotionalEnsemble::thermal(std::stod(arg), cutoff);
  } catch (const CLI::Error&) {
    throw;
  } catch (const std::exception&) {
    throw CLI::ValidationError("ensemble", "cannot parse '" + s + "'");
  }
  throw CLI::ValidationError("ensemble", "unknown ensemble kind '" + kind + "'");
}

double parse_angle(const std::string& s) {
  // accepts a plain number (radians) or n*pi expressions like "pi", "pi/2", "3pi/2", "0.5pi"
  const auto pos = s.find("pi");
  try {
    if (pos == std::string::npos) return std::stod(s);
    const std::string pre = s.substr(0, pos);
    const std::string post = s.substr(pos + 2);
    double v = pre.empty() ? 1.0 : std::stod(pre);
    if (!post.empty()) {
      if (post[0] != '/') throw std::invalid_argument(s);
      v /= std::stod(post.substr(1));
    }
    return v * M_PI;
  } catch (const std::exception&) {
    throw CLI::ValidationError("angle", "cannot parse '" + s + "'");
  }
}

void echo_config(CsvWriter& csv, const PhysicalConfig& cfg) {
  csv.metadata("j0_2pikHz", cfg.j0);
  csv.metadata("omega_mu_2pikHz", cfg.omega_mu);
  csv.metadata("omega_x_2pikHz", cfg.omega[0]);
  csv.metadata("omega_y_2pikHz", cfg.omega[1]);
  csv.metadata("omega_z_2pikHz", cfg.omega[2]);
  csv.metadata("ell_x_over_L", cfg.ell_over_L[0]);
  csv.metadata("ell_y_over_L", cfg.ell_over_L[1]);
  csv.metadata("ell_z_over_L", cfg.ell_over_L[2]);
  csv.metadata("delta_2pikHz", cfg.delta);
}

json gate_result_json(const GateResult& r, const ProtocolSpace& space) {
  json per_input = json::array();
  const std::array<const char*, 4> labels = {"uu", "ud", "du", "dd"};
  for (int c = 0; c < 4; ++c) {
    json pops = json::array();
    for (double p : r.motional_populations[c]) pops.push_back(p);
    per_input.push_back({{"label", labels[c]},
                         {"overlap_re", r.overlaps(c, c).real()},
                         {"overlap_im", r.overlaps(c, c).imag()},
                         {"output_phase_rad", r.output_phases[c]},
                         {"return_population", r.internal_return_population[c]},
                         {"populations", pops}});
  }
  return {{"fidelity", r.fidelity},
          {"fidelity_local_phase_opt", r.fidelity_local_opt},
          {"conditional_phase_rad", r.conditional_phase},
          {"internal_basis_size", space.internal_dim()},
          {"per_input", per_input}};
}

int run_spectrum(const std::string& out_path, double j0, double omega_z, Range g_range,
                 int points, int truncation, int levels, bool analytic, double delta) {
  CsvWriter csv(out_path);
  csv.comment("eigenspectrum of the two-state/one-mode Rabi Hamiltonian vs linear coupling g");
  csv.metadata("j0_units_of_omega_z", j0);
  csv.metadata("omega_z_2pikHz", omega_z);
  csv.metadata("truncation", truncation);
  csv.metadata("delta", delta);
  csv.header({"parameter_value", "level_index", "branch", "energy"});
  for (int i = 0; i < points; ++i) {
    const double g =
        points == 1 ? g_range.lo : g_range.lo + (g_range.hi - g_range.lo) * i / (points - 1.0);
    AqrmSpec spec;
    spec.dims = 1;
    spec.omega = {0, 0, omega_z};
    spec.delta = delta;
    spec.constants.eta = -j0 * omega_z;
    spec.constants.g = g * omega_z;
    spec.truncation = {truncation, truncation, truncation};
    Eigen::VectorXd evs = spectrum(build_aqrm_1d(spec));
    for (int k = 0; k < levels && k < evs.size(); ++k)
      csv.row_mixed({CsvWriter::format(g), std::to_string(k), "num", CsvWriter::format(evs(k))});
    if (analytic) {
      auto ana = analytic_spectrum_1d(spec, levels);
      for (int k = 0; k < levels && k < static_cast<int>(ana.size()); ++k)
        csv.row_mixed({CsvWriter::format(g), std::to_string(k),
                       ana[k].branch > 0 ? "+" : "-", CsvWriter::format(ana[k].energy)});
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "moltrap: quantized-motion dipole-dipole simulations for two trapped polar molecules.\n"
      "Units: frequencies/energies in 2*pi*kHz (hbar = 1), times in ms, lengths as ell/L."};
  app.set_config("--config", "", "INI/TOML config file; command-line flags override it");
  app.require_subcommand(1);
  app.fallthrough();  // global options (-o, --fock-cutoff, ...) may follow a subcommand

  std::string output;
  std::string format = "csv";
  int max_parallel = 0;
  int fock_cutoff = 41;
  int seed = 0;
  app.add_option("--output,-o", output, "output file path (default: <subcommand>.csv/.json)");
  app.add_option("--format", format, "output format for scans: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--max-parallel", max_parallel, "max parallel workers (0: all cores)");
  app.add_option("--fock-cutoff", fock_cutoff, "Fock levels per motional mode")
      ->check(CLI::Range(1, 500));
  app.add_option("--seed", seed, "reserved; all computations are deterministic");

  // ---- spectrum ----
  auto* sp = app.add_subcommand("spectrum", "Rabi-model eigenspectrum vs linear coupling g");
  double sp_j0 = 10.0, sp_omega_z = 1.0, sp_delta = 0.0;
  std::string sp_grange = "-1.5:0";
  int sp_points = 100, sp_trunc = 61, sp_levels = 12;
  bool sp_analytic = false;
  sp->add_option("--j0", sp_j0, "DDI magnitude in units of hbar*omega_z");
  sp->add_option("--omega-z", sp_omega_z, "trap frequency omega_z [2*pi*kHz]");
  sp->add_option("--g-range", sp_grange, "linear coupling range lo:hi in units of hbar*omega_z");
  sp->add_option("--points", sp_points, "number of g samples")->check(CLI::Range(2, 100000));
  sp->add_option("--truncation", sp_trunc, "Fock truncation")->check(CLI::Range(2, 2000));
  sp->add_option("--levels", sp_levels, "levels per g to emit")->check(CLI::Range(1, 1000));
  sp->add_flag("--analytic", sp_analytic, "also emit the displaced-oscillator analytic levels");
  sp->add_option("--delta", sp_delta, "sigma_3 asymmetry [units of hbar*omega_z]");

  // ---- resonance ----
  auto* rs = app.add_subcommand("resonance",
                                "blockade-CZ fidelity vs trap frequency (trap-dipole resonance)");
  std::string rs_ensemble = "fock:1", rs_range = "0.8:1.4";
  int rs_points = 200;
  double rs_j0 = 20.0, rs_omega_mu = 1.0, rs_ellz = 0.045;
  rs->add_option("--ensemble", rs_ensemble, "initial motional state: fock:n or thermal:nbar");
  rs->add_option("--omega-range", rs_range, "hbar*omega_z/J0 range lo:hi");
  rs->add_option("--points", rs_points, "scan points")->check(CLI::Range(2, 100000));
  rs->add_option("--j0", rs_j0, "DDI magnitude [2*pi*kHz]");
  rs->add_option("--omega-mu", rs_omega_mu, "Rabi frequency [2*pi*kHz]");
  rs->add_option("--ell-z", rs_ellz, "oscillator length ratio ell_z/L");

  // ---- iswap ----
  auto* is = app.add_subcommand("iswap", "exchange gate: standard, modified, one-pulse, optimize");
  std::string is_mode;
  is->add_option("variant", is_mode, "standard | modified | one-pulse | optimize")
      ->required()
      ->check(CLI::IsMember({"standard", "modified", "one-pulse", "optimize"}));
  double is_omega_mu = 1.6, is_j0 = 0.37;
  double is_wait = -1.0, is_area = 1.0;
  std::string is_opt_mode = "wait-only", is_ratio_range = "0.05:0.7";
  int is_ratio_points = 66;
  is->add_option("--omega-mu", is_omega_mu, "Rabi frequency [2*pi*kHz]");
  is->add_option("--j0", is_j0, "DDI magnitude [2*pi*kHz]");
  is->add_option("--wait-fraction", is_wait,
                 "wait duration in units of pi*hbar/(2 J0); negative: optimize it");
  is->add_option("--area", is_area, "pulse area per pulse in units of pi (standard mode)");
  is->add_option("--mode", is_opt_mode, "optimize target: wait-only | pulse-and-wait | omega-scan")
      ->check(CLI::IsMember({"wait-only", "pulse-and-wait", "omega-scan"}));
  is->add_option("--ratio-range", is_ratio_range, "J0/(hbar Omega) range for omega-scan");
  is->add_option("--ratio-points", is_ratio_points, "points for omega-scan")
      ->check(CLI::Range(2, 10000));

  // ---- qb-gate ----
  auto* qb = app.add_subcommand("qb-gate", "eight-pulse quasi-blockade controlled-phase gate");
  std::string qb_phi = "pi", qb_theta = "auto";
  double qb_jratio = 11.832, qb_omega = 1.0;
  bool qb_trace = false;
  qb->add_option("--phi", qb_phi, "conditional phase: radians or e.g. pi, pi/2, 3pi/2");
  qb->add_option("--theta", qb_theta, "per-pulse-pair phase: 'auto' (calibrate) or radians");
  qb->add_option("--j-ratio", qb_jratio, "J0/(hbar Omega)");
  qb->add_option("--omega", qb_omega, "Rabi frequency Omega [2*pi*kHz]");
  qb->add_flag("--trace", qb_trace, "also dump the input-component trajectory CSV");

  // ---- motion ----
  auto* mo = app.add_subcommand("motion", "gate infidelity vs motional coupling ell_x/L");
  std::string mo_protocol = "one-pulse-iswap", mo_ellrange = "0:0.12", mo_nbars = "1,2,3";
  std::string mo_norm = "rms";
  int mo_points = 13;
  mo->add_option("--protocol", mo_protocol, "one-pulse-iswap | quasi-blockade")
      ->check(CLI::IsMember({"one-pulse-iswap", "quasi-blockade"}));
  mo->add_option("--ell-range", mo_ellrange, "ell_x/L range lo:hi");
  mo->add_option("--points", mo_points, "ell samples")->check(CLI::Range(2, 10000));
  mo->add_option("--nbar-list", mo_nbars, "comma-separated thermal occupations");
  mo->add_option("--eps-norm", mo_norm,
                 "displacement per quantum: rms (ell/sqrt(2)L) or standard (ell/L)")
      ->check(CLI::IsMember({"rms", "standard"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // usage error
  }

  try {
    if (*sp) {
      const std::string path = output.empty() ? "spectrum.csv" : output;
      run_spectrum(path, sp_j0, sp_omega_z, parse_range(sp_grange), sp_points, sp_trunc,
                   sp_levels, sp_analytic, sp_delta * sp_omega_z);
      std::cout << "wrote " << path << "\n";
      return 0;
    }

    if (*rs) {
      ResonanceSpec spec;
      spec.cfg = resonance_default_config();
      spec.cfg.j0 = rs_j0;
      spec.cfg.omega_mu = rs_omega_mu;
      spec.cfg.ell_over_L = {0, 0, rs_ellz};
      spec.ensemble = parse_ensemble(rs_ensemble, fock_cutoff);
      const Range r = parse_range(rs_range);
      spec.omega_lo = r.lo;
      spec.omega_hi = r.hi;
      spec.points = rs_points;
      spec.fock_cutoff = fock_cutoff;
      spec.max_threads = max_parallel;
      auto table = resonance_scan(spec);

      const std::string path = output.empty() ? "resonance.csv" : output;
      CsvWriter csv(path);
      csv.comment("blockade-CZ fidelity and motional populations vs hbar*omega_z/J0");
      echo_config(csv, spec.cfg);
      csv.metadata("ensemble", rs_ensemble);
      csv.metadata("fock_cutoff", fock_cutoff);
      csv.header({"omega_z_over_j0", "fidelity", "pop_n0", "pop_n1", "pop_n2", "pop_n3",
                  "return_population"});
      std::vector<double> xs, ys;
      for (const auto& p : table) {
        csv.row({p.omega_over_j0, p.fidelity, p.populations[0], p.populations[1],
                 p.populations[2], p.populations[3], p.return_population});
        xs.push_back(p.omega_over_j0);
        ys.push_back(p.fidelity);
      }
      json mins = json::array();
      if (table.size() >= 3)
        for (const auto& m : find_minima(xs, ys))
          mins.push_back({{"omega_z_over_j0", m.location}, {"fidelity", m.value}});
      std::ofstream mj(path + ".minima.json");
      mj << json{{"minima", mins}}.dump(2) << "\n";
      std::cout << "wrote " << path << " and " << path << ".minima.json\n";
      return 0;
    }

    if (*is) {
      PhysicalConfig cfg;
      cfg.omega_mu = is_omega_mu;
      cfg.j0 = is_j0;
      if (is_mode == "optimize") {
        if (is_opt_mode == "omega-scan") {
          const Range r = parse_range(is_ratio_range);
          auto scan = iswap_omega_scan(cfg, r.lo, r.hi, is_ratio_points, max_parallel);
          const std::string path = output.empty() ? "iswap_omega_scan.csv" : output;
          CsvWriter csv(path);
          csv.comment("optimal exchange-gate fidelity vs J0/(hbar Omega), J0 fixed");
          csv.metadata("j0_2pikHz", cfg.j0);
          csv.header({"j0_over_omega", "fidelity", "pulse_area_pi", "wait_fraction"});
          for (const auto& p : scan)
            csv.row({p.ratio, p.fidelity, p.pulse_area, p.wait_fraction});
          std::cout << "wrote " << path << "\n";
          return 0;
        }
        auto rep = optimize_iswap(cfg, is_opt_mode == "wait-only"
                                           ? IswapOptimizeMode::wait_only
                                           : IswapOptimizeMode::pulse_and_wait);
        json j = {{"mode", is_opt_mode},
                  {"omega_mu_2pikHz", cfg.omega_mu},
                  {"j0_2pikHz", cfg.j0},
                  {"best_fidelity", rep.best_value},
                  {"best_params", rep.best_params},
                  {"refinement_iterations", rep.refinement_iterations},
                  {"converged", rep.converged}};
        const std::string path = output.empty() ? "iswap_optimize.json" : output;
        std::ofstream(path) << j.dump(2) << "\n";
        std::cout << "wrote " << path << "\n";
        return 0;
      }

      PulseSequence seq;
      double wait = is_wait;
      if (is_mode == "standard") {
        if (wait < 0)
          wait = optimize_iswap(cfg, IswapOptimizeMode::wait_only).best_params.at("wait_fraction");
        seq = sequence_iswap(cfg, is_area * M_PI, wait);
      } else if (is_mode == "modified") {
        seq = sequence_iswap_modified(cfg);
      } else {
        seq = sequence_iswap_one_pulse(cfg);
      }
      ProtocolSpace space = make_protocol_space(Protocol::iswap);
      GateResult r = run_gate(space, cfg, seq, MotionalEnsemble::pure_fock(0),
                              target_unitary(Protocol::iswap));
      json j = gate_result_json(r, space);
      j["mode"] = is_mode;
      j["omega_mu_2pikHz"] = cfg.omega_mu;
      j["j0_2pikHz"] = cfg.j0;
      if (is_mode == "standard") j["wait_fraction"] = wait;
      const std::string path = output.empty() ? "iswap_" + is_mode + ".json" : output;
      std::ofstream(path) << j.dump(2) << "\n";
      std::cout << "wrote " << path << "\n";
      return 0;
    }

    if (*qb) {
      PhysicalConfig cfg;
      cfg.omega_mu = qb_omega;
      cfg.j0 = qb_jratio * qb_omega;
      const double phi = parse_angle(qb_phi);
      ThetaCalibration cal{0.0, 1.0};
      if (qb_theta == "auto")
        cal = calibrate_quasi_blockade_theta(cfg);
      else
        cal.theta = parse_angle(qb_theta);
      PulseSequence seq = sequence_quasi_blockade(cfg, phi, cal.theta);
      ProtocolSpace space = make_protocol_space(Protocol::quasi_blockade);
      GateResult r = run_gate(space, cfg, seq, MotionalEnsemble::pure_fock(0),
                              target_unitary(Protocol::quasi_blockade, phi, cal.theta));
      json j = gate_result_json(r, space);
      j["phi_rad"] = phi;
      j["theta_rad"] = cal.theta;
      j["theta_over_pi"] = cal.theta / M_PI;
      j["pair_echo_population"] = cal.echo_population;
      j["j_ratio"] = qb_jratio;
      j["j_ratio_candidates_note"] =
          "text vs figure quote 11.382 vs 11.832; the echo-perfect value is the usable one";
      const std::string path = output.empty() ? "qb_gate.json" : output;
      std::ofstream(path) << j.dump(2) << "\n";
      std::cout << "wrote " << path << "\n";

      if (qb_trace) {
        ProtocolSpace sp0 = make_protocol_space(Protocol::quasi_blockade);
        Trajectory traj = sample_trajectory(sp0, cfg, seq, 0,
                                            {sp0.computational[0], sp0.computational[1]}, 400);
        const std::string tpath = path + ".trace.csv";
        CsvWriter csv(tpath);
        csv.comment("input-state component amplitude during the eight-pulse sequence");
        csv.metadata("j_ratio", qb_jratio);
        csv.metadata("theta_over_pi", cal.theta / M_PI);
        csv.header({"time_ms", "basis_label", "population", "phase_rad"});
        const std::array<const char*, 2> lbl = {"uu", "ud"};
        for (size_t t = 0; t < traj.times.size(); ++t)
          for (int c = 0; c < 2; ++c) {
            const Complex amp = traj.states[t](sp0.computational[c], c);
            csv.row_mixed({CsvWriter::format(traj.times[t]), lbl[c],
                           CsvWriter::format(std::norm(amp)),
                           CsvWriter::format(std::arg(amp))});
          }
        std::cout << "wrote " << tpath << "\n";
      }
      return 0;
    }

    if (*mo) {
      MotionSpec spec;
      spec.cfg = mo_protocol == "one-pulse-iswap" ? motion_iswap_default_config()
                                                  : motion_qb_default_config();
      const Range r = parse_range(mo_ellrange);
      spec.ell_lo = r.lo;
      spec.ell_hi = r.hi;
      spec.points = mo_points;
      spec.fock_cutoff = fock_cutoff;
      spec.max_threads = max_parallel;
      spec.scale = mo_norm == "rms" ? EpsScale::single_molecule_rms
                                    : EpsScale::relative_displacement;
      spec.nbars.clear();
      std::stringstream ss(mo_nbars);
      for (std::string tok; std::getline(ss, tok, ',');) spec.nbars.push_back(std::stod(tok));
      if (spec.nbars.empty()) throw CLI::ValidationError("nbar-list", "empty");

      auto table = motion_infidelity_curve(
          mo_protocol == "one-pulse-iswap" ? Protocol::iswap : Protocol::quasi_blockade, spec);
      const std::string path = output.empty() ? "motion.csv" : output;
      CsvWriter csv(path);
      csv.comment("gate fidelity vs motional coupling (x mode, thermal initial states)");
      csv.metadata("protocol", mo_protocol);
      echo_config(csv, spec.cfg);
      csv.metadata("fock_cutoff", fock_cutoff);
      csv.metadata("eps_norm", mo_norm);
      csv.header({"ell_x_over_L", "nbar", "fidelity", "infidelity", "log10_infidelity"});
      for (const auto& p : table) {
        const double inf = std::max(1.0 - p.fidelity, 1e-300);
        csv.row({p.ell_over_L, p.nbar, p.fidelity, 1.0 - p.fidelity, std::log10(inf)});
      }
      std::cout << "wrote " << path << "\n";
      return 0;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
