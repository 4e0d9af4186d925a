#pragma once

#include <optional>
#include <string>

#include "moltrap/dynamics.hpp"

namespace moltrap {

/// Average gate fidelity over a d=4 computational subspace with leakage,
/// F = [Tr(M M^dag) + |Tr M|^2] / (d(d+1)), M_jk = <ideal_j | actual_k>.
double pedersen_fidelity(const Eigen::Matrix4cd& overlap);

struct GateResult {
  double fidelity = 0.0;            // against the raw target map
  double fidelity_local_opt = 0.0;  // after optimizing single-qubit Z phases
  Eigen::Matrix4cd overlaps;        // ensemble-weighted M
  std::array<Complex, 4> diagonal_amplitudes{};  // raw <k (x) ref | psi_out(k)>
  std::array<double, 4> output_phases{};         // arg of the above
  double conditional_phase = 0.0;   // arg(d_uu d_dd / (d_ud d_du))
  // Per computational input: populations over Fock levels of the active mode
  // (ensemble-weighted, traced over internal states).
  std::array<std::vector<double>, 4> motional_populations;
  // Per input: remaining population in the input internal state (any Fock).
  std::array<double, 4> internal_return_population{};
};

GateResult ensemble_fidelity(const ProtocolSpace& space, const EvolvedEnsemble& evolved,
                             const EvolvedEnsemble& ideal);

/// Convenience: build, run and score a sequence in one call.
GateResult run_gate(const ProtocolSpace& space, const PhysicalConfig& cfg,
                    const PulseSequence& seq, const MotionalEnsemble& ensemble,
                    const Eigen::Matrix4cd& target,
                    EpsScale scale = EpsScale::relative_displacement);

/// Two pi pulses on the down<->e transition, amplitudes Omega then i*Omega.
PulseSequence sequence_blockade_cz(const PhysicalConfig& cfg);

/// pulse(area) - wait - pulse(area), both pulses with amplitude Omega on
/// down<->e. wait_fraction is in units of pi*hbar/(2 J0). A zero wait merges
/// the two pulses into one segment of twice the area (the one-pulse gate).
PulseSequence sequence_iswap(const PhysicalConfig& cfg, double pulse_area, double wait_fraction);

/// Named presets from the reference protocols.
PulseSequence sequence_iswap_standard(const PhysicalConfig& cfg, double wait_fraction);
PulseSequence sequence_iswap_modified(const PhysicalConfig& cfg);   // area 0.906 pi, wait 0.581
PulseSequence sequence_iswap_one_pulse(const PhysicalConfig& cfg);  // single 1.732 pi pulse

/// Two pi pulses on up<->e, amplitudes Omega then i*Omega.
PulseSequence sequence_pi_pi(const PhysicalConfig& cfg);

/// Eight pi/2 pulses on up<->e with drive phases {0, pi/2, -pi/2, 0} and
/// {0, pi/2, -pi/2, 0} - 2*theta + phi/2.
PulseSequence sequence_quasi_blockade(const PhysicalConfig& cfg, double phi, double theta);

/// Phase acquired by |uu> over one pulse pair (pulses 1-2 of the eight),
/// evaluated without motional coupling. echo_population = 1 at the magic
/// DDI-to-Rabi ratio.
struct ThetaCalibration {
  double theta;
  double echo_population;
};
ThetaCalibration calibrate_quasi_blockade_theta(const PhysicalConfig& cfg);

/// Perturbative rates used as diagnostics and test oracles:
/// omega_eff = -Omega^2/(2J), ac_stark = -Omega^2/(4J) (J = j0 here), and the
/// trap-dipole two-photon rates sqrt(2) g Omega / (eta + 3 zeta_z) and
/// sqrt(6) zeta_z Omega / (eta + 3 zeta_z).
struct EffectiveRates {
  double omega_eff;
  double ac_stark;
  double two_photon_g;
  double two_photon_zeta;
};
EffectiveRates effective_rates(const PhysicalConfig& cfg);

}  // namespace moltrap
