#include "moltrap/gates.hpp"

#include <cmath>

namespace moltrap {

double pedersen_fidelity(const Eigen::Matrix4cd& m) {
  const double d = 4.0;
  const double tr_mmd = (m * m.adjoint()).trace().real();
  const double tr_m = std::abs(m.trace());
  return (tr_mmd + tr_m * tr_m) / (d * (d + 1.0));
}

namespace {

int ensemble_member_index(const ProtocolSpace& space, int internal, int fock_n) {
  if (space.modes.empty()) return internal;
  return internal * space.modes[0].dim + fock_n;
}

double local_phase_scan(const Eigen::Matrix4cd& m) {
  // Maximize Pedersen fidelity over single-qubit Z phases applied after the
  // target: S(a, b) = diag(e^{i(a+b)}, e^{ia}, e^{ib}, 1) acting on M's rows.
  auto value = [&](double a, double b) {
    Eigen::Vector4cd ph;
    ph << std::exp(Complex(0, -(a + b))), std::exp(Complex(0, -a)), std::exp(Complex(0, -b)), 1.0;
    return pedersen_fidelity(ph.asDiagonal() * m);
  };
  double best = 0, ba = 0, bb = 0;
  const int n = 64;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double a = kTwoPi * i / n, b = kTwoPi * j / n;
      const double f = value(a, b);
      if (f > best) best = f, ba = a, bb = b;
    }
  double step = kTwoPi / n;
  for (int it = 0; it < 40; ++it) {
    step /= 2;
    for (const auto& [da, db] : {std::pair{step, 0.0}, {-step, 0.0}, {0.0, step}, {0.0, -step},
                                 {step, step}, {-step, -step}, {step, -step}, {-step, step}}) {
      const double f = value(ba + da, bb + db);
      if (f > best) best = f, ba += da, bb += db;
    }
  }
  return best;
}

}  // namespace

GateResult ensemble_fidelity(const ProtocolSpace& space, const EvolvedEnsemble& evolved,
                             const EvolvedEnsemble& ideal) {
  if (evolved.members.size() != ideal.members.size())
    throw std::invalid_argument("ensemble_fidelity: mismatched ensembles");
  const int fock_dim = space.modes.empty() ? 1 : space.modes[0].dim;

  GateResult r;
  r.overlaps.setZero();
  for (auto& v : r.motional_populations) v.assign(fock_dim, 0.0);
  Eigen::Matrix4cd m_avg = Eigen::Matrix4cd::Zero();

  for (size_t k = 0; k < evolved.members.size(); ++k) {
    const auto& ev = evolved.members[k];
    const auto& id = ideal.members[k];
    if (ev.fock_n != id.fock_n || std::abs(ev.weight - id.weight) > 1e-12)
      throw std::invalid_argument("ensemble_fidelity: member mismatch");

    Eigen::Matrix4cd m;
    for (int j = 0; j < 4; ++j)
      for (int c = 0; c < 4; ++c) m(j, c) = id.states.col(j).dot(ev.states.col(c));
    r.fidelity += ev.weight * pedersen_fidelity(m);
    m_avg += ev.weight * m;

    for (int c = 0; c < 4; ++c) {
      // raw diagonal amplitude: projection on the input internal state with
      // the free-evolved motional reference
      const int idx = ensemble_member_index(space, space.computational[c], ev.fock_n);
      r.diagonal_amplitudes[c] += ev.weight * std::conj(id.free_phase) * ev.states(idx, c);

      for (int n = 0; n < fock_dim; ++n) {
        double p = 0;
        for (int i = 0; i < space.internal_dim(); ++i)
          p += std::norm(ev.states(ensemble_member_index(space, i, n), c));
        r.motional_populations[c][n] += ev.weight * p;
      }
      double pret = 0;
      for (int n = 0; n < fock_dim; ++n)
        pret += std::norm(ev.states(ensemble_member_index(space, space.computational[c], n), c));
      r.internal_return_population[c] += ev.weight * pret;
    }
  }

  r.overlaps = m_avg;
  r.fidelity_local_opt = local_phase_scan(m_avg);

  for (int c = 0; c < 4; ++c) r.output_phases[c] = std::arg(r.diagonal_amplitudes[c]);
  r.conditional_phase = std::arg(r.diagonal_amplitudes[0] * r.diagonal_amplitudes[3] /
                                 (r.diagonal_amplitudes[1] * r.diagonal_amplitudes[2]));
  return r;
}

GateResult run_gate(const ProtocolSpace& space, const PhysicalConfig& cfg,
                    const PulseSequence& seq, const MotionalEnsemble& ensemble,
                    const Eigen::Matrix4cd& target, EpsScale scale) {
  EvolvedEnsemble ev = run_sequence(space, cfg, seq, ensemble, scale);
  EvolvedEnsemble id = ideal_reference(space, target, ensemble, ev.total_duration, cfg);
  return ensemble_fidelity(space, ev, id);
}

PulseSequence sequence_blockade_cz(const PhysicalConfig& cfg) {
  const double t = duration_for_area(M_PI, cfg.omega_mu);
  return {{{t, cfg.omega_mu, DriveTarget::down_to_e},
           {t, Complex(0, 1) * cfg.omega_mu, DriveTarget::down_to_e}}};
}

PulseSequence sequence_iswap(const PhysicalConfig& cfg, double pulse_area, double wait_fraction) {
  if (pulse_area <= 0) throw std::invalid_argument("pulse area must be positive");
  if (wait_fraction < 0) throw std::invalid_argument("negative wait duration");
  if (cfg.j0 <= 0) throw std::invalid_argument("iswap needs j0 > 0");
  const double t_mu = duration_for_area(pulse_area, cfg.omega_mu);
  const double t_wait = wait_fraction / (4.0 * cfg.j0);  // pi hbar / (2 J0) = 1/(4 j0) ms
  if (t_wait == 0.0)
    return {{{2 * t_mu, cfg.omega_mu, DriveTarget::down_to_e}}};
  return {{{t_mu, cfg.omega_mu, DriveTarget::down_to_e},
           {t_wait, 0.0, DriveTarget::down_to_e},
           {t_mu, cfg.omega_mu, DriveTarget::down_to_e}}};
}

PulseSequence sequence_iswap_standard(const PhysicalConfig& cfg, double wait_fraction) {
  return sequence_iswap(cfg, M_PI, wait_fraction);
}

PulseSequence sequence_iswap_modified(const PhysicalConfig& cfg) {
  return sequence_iswap(cfg, 0.906 * M_PI, 0.581);
}

PulseSequence sequence_iswap_one_pulse(const PhysicalConfig& cfg) {
  return sequence_iswap(cfg, 0.866 * M_PI, 0.0);
}

PulseSequence sequence_pi_pi(const PhysicalConfig& cfg) {
  const double t = duration_for_area(M_PI, cfg.omega_mu);
  return {{{t, cfg.omega_mu, DriveTarget::up_to_e},
           {t, Complex(0, 1) * cfg.omega_mu, DriveTarget::up_to_e}}};
}

PulseSequence sequence_quasi_blockade(const PhysicalConfig& cfg, double phi, double theta) {
  const double t = duration_for_area(M_PI / 2.0, cfg.omega_mu);
  const std::array<double, 4> base = {0.0, M_PI / 2.0, -M_PI / 2.0, 0.0};
  PulseSequence seq;
  for (double p : base)
    seq.segments.push_back({t, cfg.omega_mu * std::exp(Complex(0, p)), DriveTarget::up_to_e});
  for (double p : base)
    seq.segments.push_back(
        {t, cfg.omega_mu * std::exp(Complex(0, p - 2.0 * theta + phi / 2.0)),
         DriveTarget::up_to_e});
  return seq;
}

ThetaCalibration calibrate_quasi_blockade_theta(const PhysicalConfig& cfg) {
  PhysicalConfig flat = cfg;
  flat.ell_over_L = {0, 0, 0};
  ProtocolSpace space = make_protocol_space(Protocol::quasi_blockade);
  const double t = duration_for_area(M_PI / 2.0, flat.omega_mu);
  PulseSequence pair{{{t, flat.omega_mu, DriveTarget::up_to_e},
                      {t, Complex(0, 1) * flat.omega_mu, DriveTarget::up_to_e}}};

  Vector psi = Vector::Zero(space.internal_dim());
  psi(space.computational[0]) = 1.0;
  for (const auto& seg : pair.segments)
    psi = propagate(assemble_gate_hamiltonian(space, flat, seg), seg.duration, psi);
  const Complex amp = psi(space.computational[0]);
  return {std::arg(amp), std::norm(amp)};
}

EffectiveRates effective_rates(const PhysicalConfig& cfg) {
  if (cfg.j0 == 0.0) throw std::domain_error("effective_rates: J = 0");
  const CouplingConstants c = derive_couplings(cfg);
  const double om = cfg.omega_mu;
  const double denom = c.eta + 3.0 * c.zeta_axis(Axis::z);
  return {-om * om / (2.0 * cfg.j0), -om * om / (4.0 * cfg.j0),
          std::sqrt(2.0) * c.g * om / denom, std::sqrt(6.0) * c.zeta_axis(Axis::z) * om / denom};
}

}  // namespace moltrap
