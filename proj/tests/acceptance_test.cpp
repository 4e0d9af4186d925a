// Acceptance suite: runs every reference check at its stated tolerance and
// prints one PASS/FAIL line per clause. Exit code = number of failed criteria.
//
// Three groups of reference constants (criteria 3, 5-location, 9, and parts of
// 4 and 11) are not reproduced by the exact model; the simulated values are
// stable, convention-checked, and printed next to the expected ones. See the
// "Reference deviations" section of the README.

#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "moltrap/aqrm.hpp"
#include "moltrap/sweeps.hpp"

using namespace moltrap;

namespace {

int g_criterion_failures = 0;
bool g_current_ok = true;

void clause(bool ok, const char* text, const std::string& detail) {
  std::printf("  [%s] %s (%s)\n", ok ? "PASS" : "FAIL", text, detail.c_str());
  if (!ok) g_current_ok = false;
}

void begin(int index, const char* title) {
  std::printf("criterion %d: %s\n", index, title);
  g_current_ok = true;
}

void end() {
  std::printf("  => %s\n", g_current_ok ? "PASS" : "FAIL");
  if (!g_current_ok) ++g_criterion_failures;
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), f, a, b, c);
  return buf;
}

double qb_motion_fidelity(double ell, double nbar, int cutoff) {
  MotionSpec spec;
  spec.cfg = motion_qb_default_config();
  spec.ell_lo = 0.0;
  spec.ell_hi = ell;
  spec.points = 2;
  spec.nbars = {nbar};
  spec.fock_cutoff = cutoff;
  return motion_infidelity_curve(Protocol::quasi_blockade, spec).back().fidelity;
}

double iswap_motion_fidelity(double ell, double nbar, int cutoff) {
  MotionSpec spec;
  spec.cfg = motion_iswap_default_config();
  spec.ell_lo = 0.0;
  spec.ell_hi = ell;
  spec.points = 2;
  spec.nbars = {nbar};
  spec.fock_cutoff = cutoff;
  return motion_infidelity_curve(Protocol::iswap, spec).back().fidelity;
}

double resonance_point_fidelity(double omega_over_j0, int cutoff) {
  ResonanceSpec spec;
  spec.cfg = resonance_default_config();
  spec.omega_lo = omega_over_j0;
  spec.omega_hi = omega_over_j0 + 1e-9;
  spec.points = 2;
  spec.fock_cutoff = cutoff;
  spec.max_threads = 1;
  return resonance_scan(spec)[0].fidelity;
}

}  // namespace

// --------------------------------------------------------------------------

void criterion_1() {
  begin(1, "1D Rabi-model spectrum, numeric vs analytic (trunc 61, lowest 10)");
  double maxerr = 0;
  for (int i = 0; i <= 30; ++i) {
    const double g = -1.5 + 1.5 * i / 30.0;
    AqrmSpec s;
    s.dims = 1;
    s.omega = {0, 0, 1.0};
    s.constants.eta = -10.0;
    s.constants.g = g;
    s.truncation = {61, 61, 61};
    auto num = spectrum(build_aqrm_1d(s));
    auto ana = analytic_spectrum_1d(s, 40);
    for (int k = 0; k < 10; ++k) maxerr = std::max(maxerr, std::abs(num(k) - ana[k].energy));
  }
  clause(maxerr <= 1e-6, "max |E_num - E_ana| <= 1e-6 over g in [-1.5, 0]",
         fmt("max err = %.3g", maxerr));
  end();
}

void criterion_2() {
  begin(2, "3D Rabi-model spectrum, analytic vs direct diagonalization (trunc 15/mode)");
  PhysicalConfig cfg;
  cfg.j0 = 0.8;
  cfg.omega = {1.2, 1.1, 1.0};
  cfg.ell_over_L = {0.05, 0.04, 0.045};
  AqrmSpec s;
  s.dims = 3;
  s.omega = cfg.omega;
  s.constants = derive_couplings(cfg);
  s.truncation = {15, 15, 15};
  std::printf("  (diagonalizing 2x15^3 = 6750 dims, takes a minute or two)\n");
  auto num = spectrum(build_aqrm_3d(s));
  auto ana = analytic_spectrum_3d(s, 10);
  double maxerr = 0;
  for (int k = 0; k < 5; ++k) maxerr = std::max(maxerr, std::abs(num(k) - ana[k].energy));
  clause(maxerr <= 1e-4, "lowest 5 levels agree to 1e-4",
         fmt("max err = %.3g (J0 = 0.8, ell/L <= 0.05)", maxerr));
  end();
}

void criterion_3() {
  begin(3, "blockade-CZ baseline fidelity at ell_z = 0, J0 = 20 hbar*Omega");
  PhysicalConfig cfg;
  cfg.omega_mu = 1.0;
  cfg.j0 = 20.0;
  ProtocolSpace sp = make_protocol_space(Protocol::blockade_cz);
  auto r = run_gate(sp, cfg, sequence_blockade_cz(cfg), MotionalEnsemble::pure_fock(0),
                    target_unitary(Protocol::blockade_cz));
  // Exact model gives 0.99754; the reference constant matches the scan plateau
  // with motional coupling (ell_z/L = 0.045) instead of the strict ell_z = 0 case.
  clause(std::abs(r.fidelity - 0.9969) <= 5e-4, "F = 0.9969 +- 0.0005",
         fmt("F = %.6f", r.fidelity));
  end();
}

void criterion_4() {
  begin(4, "trap-dipole resonance scan (fock n=1, cutoff 41)");
  ResonanceSpec spec;
  spec.cfg = resonance_default_config();
  spec.points = 200;
  spec.fock_cutoff = 41;
  auto table = resonance_scan(spec);
  std::vector<double> xs, ys;
  for (const auto& p : table) xs.push_back(p.omega_over_j0), ys.push_back(p.fidelity);
  auto mins = find_minima(xs, ys);
  // drop shallow ripples
  std::vector<Minimum> deep;
  for (const auto& m : mins)
    if (m.value < 0.9955) deep.push_back(m);

  const auto c = derive_couplings(spec.cfg);
  const double first = (-c.eta + c.zeta_axis(Axis::z)) / spec.cfg.j0;
  double second = (-c.eta - 5 * c.zeta_axis(Axis::z)) / spec.cfg.j0;
  for (int it = 0; it < 64; ++it)
    second = (-c.eta - 5 * c.zeta_axis(Axis::z) +
              3 * c.g * c.g / (second * spec.cfg.j0 + 2 * c.zeta_axis(Axis::z))) /
             spec.cfg.j0;

  auto near = [&](double target) {
    for (const auto& m : deep)
      if (std::abs(m.location - target) / target <= 0.03) return m.location;
    return -1.0;
  };
  std::string locs;
  for (const auto& m : deep) locs += fmt("%.4f(F=%.4f) ", m.location, m.value);
  const double hit1 = near(first), hit2 = near(second);
  // Exact-model minima sit at 0.942/1.059/1.133; the first reference location
  // contains none of them (static level-crossing analysis puts the resonances
  // at 0.99/1.08, pulled by the square-pulse dressing in the full dynamics).
  clause(hit1 > 0, fmt("a fidelity minimum within 3%% of %.5f", first).c_str(),
         "found: " + (locs.empty() ? "none" : locs));
  clause(hit2 > 0, fmt("a fidelity minimum within 3%% of %.5f (Stark-corrected)", second).c_str(),
         "found: " + (locs.empty() ? "none" : locs));

  // populations at the grid point nearest 1.08
  size_t i108 = 0;
  for (size_t i = 0; i < table.size(); ++i)
    if (std::abs(table[i].omega_over_j0 - 1.08) < std::abs(table[i108].omega_over_j0 - 1.08))
      i108 = i;
  const std::array<double, 4> expected = {0.002, 0.856, 0.134, 0.007};
  bool pops_ok = true;
  for (int n = 0; n < 4; ++n)
    pops_ok = pops_ok && std::abs(table[i108].populations[n] - expected[n]) <= 0.01;
  clause(pops_ok, "populations over quanta 0..3 at omega/J0 ~ 1.08 within +-0.01",
         fmt("got (%.4f, %.4f, ...)", table[i108].populations[0], table[i108].populations[1]) +
             fmt(" (%.4f, %.4f)", table[i108].populations[2], table[i108].populations[3]));

  // diagnostic: the same distribution at the simulated transfer resonance
  size_t ipk = 0;
  for (size_t i = 0; i < table.size(); ++i)
    if (table[i].populations[1] < table[ipk].populations[1]) ipk = i;
  std::printf("  (note: transfer peak at omega/J0 = %.4f with populations %.4f %.4f %.4f %.4f)\n",
              table[ipk].omega_over_j0, table[ipk].populations[0], table[ipk].populations[1],
              table[ipk].populations[2], table[ipk].populations[3]);
  end();
}

void criterion_5() {
  begin(5, "standard pi-wait-pi exchange gate optimum (Omega = 2pi*1.6 kHz, J0 = h*0.37 kHz)");
  PhysicalConfig cfg;
  cfg.omega_mu = 1.6;
  cfg.j0 = 0.37;
  auto rep = optimize_iswap(cfg, IswapOptimizeMode::wait_only);
  const double wf = rep.best_params.at("wait_fraction");
  // Exact-model optimum is 0.5296; the 0.537 reference value is not reached by
  // any tested convention while its fidelity is.
  clause(std::abs(wf - 0.537) <= 0.005, "optimal wait fraction = 0.537 +- 0.005",
         fmt("wait fraction = %.4f", wf));
  clause(std::abs(rep.best_value - 0.9665) <= 5e-4, "F = 0.9665 +- 0.0005",
         fmt("F = %.5f", rep.best_value));
  end();
}

void criterion_6() {
  begin(6, "modified exchange gate at pulse area 0.906 pi, wait fraction 0.581");
  PhysicalConfig cfg;
  cfg.omega_mu = 1.6;
  cfg.j0 = 0.37;
  ProtocolSpace sp = make_protocol_space(Protocol::iswap);
  auto r = run_gate(sp, cfg, sequence_iswap_modified(cfg), MotionalEnsemble::pure_fock(0),
                    target_unitary(Protocol::iswap));
  clause(r.fidelity >= 0.9999, "F >= 0.9999", fmt("F = %.7f", r.fidelity));
  end();
}

void criterion_7() {
  begin(7, "one-pulse exchange gate and the unit-fidelity window of the Omega scan");
  PhysicalConfig cfg;
  cfg.omega_mu = 0.641;
  cfg.j0 = 0.37;
  ProtocolSpace sp = make_protocol_space(Protocol::iswap);
  auto r = run_gate(sp, cfg, sequence_iswap_one_pulse(cfg), MotionalEnsemble::pure_fock(0),
                    target_unitary(Protocol::iswap));
  clause(r.fidelity >= 0.9999, "one-pulse gate (area 1.732 pi, Omega = 2pi*0.641 kHz): F >= 0.9999",
         fmt("F = %.7f", r.fidelity));

  // coarse scan over the reference domain plus a fine scan around the upper edge
  PhysicalConfig base;
  base.j0 = 0.37;
  const double unit_threshold = 1.0 - 1e-5;
  auto coarse = iswap_omega_scan(base, 0.05, 0.70, 66);
  auto fine = iswap_omega_scan(base, 0.555, 0.605, 21);

  bool lower_ok = coarse.front().fidelity >= unit_threshold;  // window reaches the 0.05 edge
  double upper = coarse.front().ratio;
  for (const auto& p : coarse)
    if (p.fidelity >= unit_threshold) upper = p.ratio;
  for (const auto& p : fine)
    if (p.fidelity >= unit_threshold) upper = std::max(upper, p.ratio);
  clause(lower_ok, "unit fidelity at the lower window edge 0.05",
         fmt("F(0.05) = %.7f", coarse.front().fidelity));
  clause(std::abs(upper - 0.58) <= 0.01, "upper window edge = 0.58 +- 0.01",
         fmt("edge = %.4f", upper));

  // wait duration crosses zero
  double cross = -1;
  for (size_t i = 1; i < fine.size(); ++i)
    if (fine[i].wait_fraction < 5e-3 && fine[i - 1].wait_fraction >= 5e-3) {
      const double w0 = fine[i - 1].wait_fraction, w1 = fine[i].wait_fraction;
      cross = fine[i - 1].ratio +
              (fine[i].ratio - fine[i - 1].ratio) * (w0 - 5e-3) / std::max(w0 - w1, 1e-12);
      break;
    }
  clause(std::abs(cross - 0.573) <= 0.005, "wait -> 0 at ratio 0.573 +- 0.005",
         fmt("crossing = %.4f", cross));
  end();
}

void criterion_8() {
  begin(8, "one-pulse exchange gate infidelity vs thermal occupation at ell_x/L = 0.05");
  const std::array<double, 3> expected = {0.9998, 0.9994, 0.9988};
  for (int b = 0; b < 3; ++b) {
    const double f = iswap_motion_fidelity(0.05, b + 1.0, 41);
    clause(std::abs(f - expected[b]) <= 3e-4,
           fmt("F(nbar=%d) = %.4f +- 0.0003", b + 1.0, expected[b]).c_str(),
           fmt("F = %.5f", f));
  }
  end();
}

void criterion_9() {
  begin(9, "pi-pi gate fidelity and spin-echo restoration");
  PhysicalConfig cfg;
  cfg.omega_mu = 1.0;
  ProtocolSpace sp = make_protocol_space(Protocol::pi_pi);
  cfg.j0 = 10.0;
  auto r10 = run_gate(sp, cfg, sequence_pi_pi(cfg), MotionalEnsemble::pure_fock(0),
                      target_unitary(Protocol::pi_pi));
  // Exact model gives 0.98513/0.98502 (uu phase error = the full second-order
  // drive-induced shift); the reference constants 0.9903/0.9900 are not
  // reproduced although the 9.798 echo-restoration magic point is, exactly.
  clause(std::abs(r10.fidelity - 0.9903) <= 5e-4, "F(J0 = 10 hbar*Omega) = 0.9903 +- 0.0005",
         fmt("F = %.5f", r10.fidelity));
  cfg.j0 = 9.798;
  auto r98 = run_gate(sp, cfg, sequence_pi_pi(cfg), MotionalEnsemble::pure_fock(0),
                      target_unitary(Protocol::pi_pi));
  clause(std::abs(r98.fidelity - 0.9900) <= 5e-4, "F(J0 = 9.798 hbar*Omega) = 0.9900 +- 0.0005",
         fmt("F = %.5f", r98.fidelity));
  clause(r98.internal_return_population[0] >= 1.0 - 1e-4,
         "population restoration at 9.798 within 1e-4",
         fmt("return population = %.8f", r98.internal_return_population[0]));
  end();
}

void criterion_10() {
  begin(10, "quasi-blockade gate at the echo-perfect DDI ratio");
  PhysicalConfig cfg;
  cfg.omega_mu = 1.0;
  double adopted = 0;
  ThetaCalibration cal{0, 0};
  for (double ratio : {11.382, 11.832}) {
    cfg.j0 = ratio;
    auto c = calibrate_quasi_blockade_theta(cfg);
    std::printf("  (candidate J0/(hbar*Omega) = %.3f: pair echo population = %.8f)\n", ratio,
                c.echo_population);
    if (c.echo_population > cal.echo_population) cal = c, adopted = ratio;
  }
  cfg.j0 = adopted;
  clause(cal.echo_population >= 1.0 - 1e-6, "perfect pulse-pair spin echo at the adopted ratio",
         fmt("ratio = %.3f, echo = %.8f", adopted, cal.echo_population));
  clause(std::abs(cal.theta / M_PI + 0.04196) <= 5e-4, "theta/pi = -0.04196 +- 0.0005",
         fmt("theta/pi = %.5f", cal.theta / M_PI));

  ProtocolSpace sp = make_protocol_space(Protocol::quasi_blockade);
  auto r = run_gate(sp, cfg, sequence_quasi_blockade(cfg, M_PI, cal.theta),
                    MotionalEnsemble::pure_fock(0),
                    target_unitary(Protocol::quasi_blockade, M_PI, cal.theta));
  clause(std::abs(r.output_phases[0] / M_PI + 0.16785) <= 1e-3,
         "final |uu> phase = -0.16785 pi +- 0.001 pi", fmt("%.5f pi", r.output_phases[0] / M_PI));
  clause(std::abs(r.output_phases[1] / M_PI - 0.41608) <= 1e-3,
         "final |ud> phase = 0.41608 pi +- 0.001 pi", fmt("%.5f pi", r.output_phases[1] / M_PI));
  clause(r.fidelity >= 0.9999, "F >= 0.9999", fmt("F = %.7f", r.fidelity));
  end();
}

void criterion_11() {
  begin(11, "quasi-blockade infidelity vs thermal occupation and its oscillation");
  const std::array<double, 3> expected = {0.9998, 0.9995, 0.9990};
  for (int b = 0; b < 3; ++b) {
    const double f = qb_motion_fidelity(0.05, b + 1.0, 41);
    clause(std::abs(f - expected[b]) <= 3e-4,
           fmt("F(nbar=%d) = %.4f +- 0.0003 at ell_x/L = 0.05", b + 1.0, expected[b]).c_str(),
           fmt("F = %.5f", f));
  }

  MotionSpec spec;
  spec.cfg = motion_qb_default_config();
  spec.points = 25;
  spec.nbars = {2.0};
  spec.fock_cutoff = 41;
  auto curve = motion_infidelity_curve(Protocol::quasi_blockade, spec);
  std::vector<double> inf;
  for (const auto& p : curve) inf.push_back(1.0 - p.fidelity);
  bool seen_max = false, oscillates = false;
  for (size_t i = 2; i + 1 < inf.size(); ++i) {  // skip the ell = 0 endpoint
    if (inf[i] > inf[i - 1] && inf[i] > inf[i + 1]) seen_max = true;
    if (seen_max && inf[i] < inf[i - 1] && inf[i] < inf[i + 1]) oscillates = true;
  }
  clause(oscillates, "infidelity-vs-ell curve shows a local maximum followed by a local minimum",
         oscillates ? "non-monotonic as expected" : "monotonic curve");
  end();
}

void criterion_12() {
  begin(12, "property suite");

  {  // unitarity under random segments
    std::mt19937 rng(17);
    std::normal_distribution<double> nd;
    const int dim = 50;
    Matrix m(dim, dim);
    for (int j = 0; j < dim; ++j)
      for (int i = 0; i < dim; ++i) m(i, j) = Complex(nd(rng), nd(rng));
    OperatorMatrix h{HilbertSpace(dim, {}), ((m + m.adjoint()) / 2).eval(), true};
    SegmentPropagator prop(h);
    Vector psi = Vector::Zero(dim);
    psi(0) = 1;
    std::uniform_real_distribution<double> ud(0, 0.2);
    for (int s = 0; s < 2000; ++s) psi = prop.evolve(psi, ud(rng));
    clause(std::abs(psi.norm() - 1.0) <= 1e-10, "norm preserved over 2000 segments",
           fmt("|norm - 1| = %.2e", std::abs(psi.norm() - 1.0)));
  }

  {  // truncation convergence 40 -> 80 on the motional reference runs
    const double d1 = std::abs(resonance_point_fidelity(1.08, 41) -
                               resonance_point_fidelity(1.08, 81));
    const double d2 =
        std::abs(iswap_motion_fidelity(0.05, 2.0, 41) - iswap_motion_fidelity(0.05, 2.0, 81));
    const double d3 =
        std::abs(qb_motion_fidelity(0.05, 2.0, 41) - qb_motion_fidelity(0.05, 2.0, 81));
    clause(d1 < 1e-6 && d2 < 1e-6 && d3 < 1e-6,
           "doubling the Fock cutoff changes fidelities by < 1e-6",
           fmt("deltas = %.2g / %.2g / %.2g", d1, d2, d3));
  }

  {  // spectral propagator vs 4th-order fixed-step integrator
    std::mt19937 rng(29);
    std::normal_distribution<double> nd;
    double worst = 0;
    for (int dim : {8, 12}) {
      Matrix m(dim, dim);
      for (int j = 0; j < dim; ++j)
        for (int i = 0; i < dim; ++i) m(i, j) = Complex(nd(rng), nd(rng));
      Matrix hm = (m + m.adjoint()) / 2;
      Vector psi = Vector::Zero(dim);
      psi(0) = 1;
      Vector sp = propagate({HilbertSpace(dim, {}), hm, true}, 0.6, psi);
      // RK4 with step 1e-4 / ||H|| (angular norm)
      const double hnorm = hm.cwiseAbs().maxCoeff() * kTwoPi;
      const double step = 1e-4 / hnorm * kTwoPi;
      Vector v = psi;
      const Complex mi(0, -1);
      const int nsteps = static_cast<int>(std::ceil(0.6 / step));
      const double dt = 0.6 / nsteps;
      for (int s = 0; s < nsteps; ++s) {
        Vector k1 = (mi * kTwoPi) * (hm * v);
        Vector k2 = (mi * kTwoPi) * (hm * (v + 0.5 * dt * k1));
        Vector k3 = (mi * kTwoPi) * (hm * (v + 0.5 * dt * k2));
        Vector k4 = (mi * kTwoPi) * (hm * (v + dt * k3));
        v += dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
      }
      worst = std::max(worst, (sp - v).norm());
    }
    clause(worst <= 1e-6, "propagator matches the fixed-step oracle to 1e-6",
           fmt("max deviation = %.2e", worst));
  }

  {  // Pedersen trace invariance
    std::mt19937 rng(31);
    std::normal_distribution<double> nd;
    double worst = 0;
    for (int t = 0; t < 10; ++t) {
      Eigen::Matrix4cd m, u;
      for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 4; ++i) m(i, j) = Complex(nd(rng), nd(rng)), u(i, j) = Complex(nd(rng), nd(rng));
      Eigen::HouseholderQR<Eigen::Matrix4cd> qr(u);
      Eigen::Matrix4cd q = qr.householderQ();
      worst = std::max(worst,
                       std::abs(pedersen_fidelity(q * m * q.adjoint()) - pedersen_fidelity(m)));
    }
    clause(worst <= 1e-12, "Pedersen fidelity invariant under unitary conjugation",
           fmt("max deviation = %.2e", worst));
  }

  {  // conditional-phase linearity
    PhysicalConfig cfg;
    cfg.omega_mu = 1.0;
    cfg.j0 = 11.832;
    auto cal = calibrate_quasi_blockade_theta(cfg);
    ProtocolSpace sp = make_protocol_space(Protocol::quasi_blockade);
    double worst = 0;
    for (double phi : {M_PI / 4, M_PI / 2, M_PI, 3 * M_PI / 2}) {
      auto r = run_gate(sp, cfg, sequence_quasi_blockade(cfg, phi, cal.theta),
                        MotionalEnsemble::pure_fock(0),
                        target_unitary(Protocol::quasi_blockade, phi, cal.theta));
      worst = std::max(worst, std::abs(std::remainder(r.conditional_phase - phi, kTwoPi)));
    }
    clause(worst <= 1e-3, "conditional phase equals phi to 1e-3 rad over {pi/4, pi/2, pi, 3pi/2}",
           fmt("max deviation = %.2e rad", worst));
  }

  end();
}

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  criterion_12();
  std::printf("\n%d of 12 criteria passed.\n", 12 - g_criterion_failures);
  if (g_criterion_failures)
    std::printf("failed criteria reflect documented deviations of the reference constants from "
                "the exact model; see README \"Reference deviations\".\n");
  return g_criterion_failures;
}
