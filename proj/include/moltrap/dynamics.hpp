#pragma once

#include <vector>

#include "moltrap/protocol.hpp"

namespace moltrap {

/// One piecewise-constant drive segment. rabi_amplitude carries the drive
/// phase; a wait is a segment with rabi_amplitude = 0. All reference
/// protocols are resonant (detuning 0).
struct PulseSegment {
  double duration = 0.0;        // ms
  Complex rabi_amplitude{0.0};  // [2pi kHz]
  DriveTarget drive_target = DriveTarget::down_to_e;
  double detuning = 0.0;        // [2pi kHz]
};

struct PulseSequence {
  std::vector<PulseSegment> segments;
  double total_duration() const;
};

/// Pulse duration for a given area (in radians) at Rabi frequency omega [2pi kHz].
double duration_for_area(double area, double omega);

/// Initial motional state: a pure Fock level or a truncated Bose-Einstein
/// (geometric) thermal mixture p_n = nbar^n / (1+nbar)^{n+1}, renormalized.
struct MotionalEnsemble {
  std::vector<std::pair<int, double>> weights;  // (fock_n, probability)

  static MotionalEnsemble pure_fock(int n);
  static MotionalEnsemble thermal(double nbar, int cutoff);
};

/// Spectral propagator for one constant Hermitian Hamiltonian:
/// exp(-i 2*pi H t), diagonalized once and reused across states/durations.
class SegmentPropagator {
 public:
  explicit SegmentPropagator(const OperatorMatrix& h);
  /// states: one column per state vector.
  Matrix evolve(const Matrix& states, double duration) const;

 private:
  Eigen::VectorXd eigenvalues_;
  Matrix eigenvectors_;
};

Vector propagate(const OperatorMatrix& h, double duration, const Vector& psi);

/// Full gate Hamiltonian for one segment:
///   H_trap (sum_xi w_xi (n_xi + 1/2))  +  J_op (x) (|ue><eu| + h.c.)
///   +  drive on both molecules with the segment's complex amplitude,
/// in the rotating frame of the driven transition (detuning adds -delta per
/// excited molecule). J_op is the quadratic DDI operator on the active modes.
OperatorMatrix assemble_gate_hamiltonian(const ProtocolSpace& space, const PhysicalConfig& cfg,
                                         const PulseSegment& segment,
                                         EpsScale scale = EpsScale::relative_displacement);

/// Evolution results for the 4 computational inputs across ensemble members.
struct EvolvedEnsemble {
  struct Member {
    int fock_n;
    double weight;
    Matrix states;  // total_dim x 4, columns ordered as {uu, ud, du, dd} inputs
    Complex free_phase = 1.0;  // reference free-evolution phase (ideal members)
  };
  std::vector<Member> members;
  double total_duration = 0.0;
};

/// Trajectory sample: state columns at a sequence of times (for one member).
struct Trajectory {
  std::vector<double> times;
  std::vector<Matrix> states;  // per time: total_dim x n_inputs
};

EvolvedEnsemble run_sequence(const ProtocolSpace& space, const PhysicalConfig& cfg,
                             const PulseSequence& seq, const MotionalEnsemble& ensemble,
                             EpsScale scale = EpsScale::relative_displacement);

/// Ideal output: target unitary on the computational subspace tensored with
/// free trap evolution exp(-i 2*pi H_trap T) of the initial motional state.
EvolvedEnsemble ideal_reference(const ProtocolSpace& space, const Eigen::Matrix4cd& target,
                                const MotionalEnsemble& ensemble, double total_duration,
                                const PhysicalConfig& cfg, bool include_free_phase = true);

/// Time-resolved evolution of selected internal inputs (single ensemble
/// member), sampled on a uniform grid of at least `min_samples` points.
Trajectory sample_trajectory(const ProtocolSpace& space, const PhysicalConfig& cfg,
                             const PulseSequence& seq, int fock_n,
                             const std::vector<int>& input_labels, int min_samples,
                             EpsScale scale = EpsScale::relative_displacement);

}  // namespace moltrap
