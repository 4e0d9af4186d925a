#include "moltrap/dynamics.hpp"

#include <cmath>

namespace moltrap {

double PulseSequence::total_duration() const {
  double t = 0;
  for (const auto& s : segments) t += s.duration;
  return t;
}

double duration_for_area(double area, double omega) {
  if (omega <= 0) throw std::invalid_argument("duration_for_area: omega must be positive");
  if (area < 0) throw std::invalid_argument("duration_for_area: negative area");
  return area / (kTwoPi * omega);
}

MotionalEnsemble MotionalEnsemble::pure_fock(int n) {
  if (n < 0) throw std::invalid_argument("fock level must be non-negative");
  return {{{n, 1.0}}};
}

MotionalEnsemble MotionalEnsemble::thermal(double nbar, int cutoff) {
  if (nbar < 0) throw std::invalid_argument("nbar must be non-negative");
  if (cutoff < 1) throw std::invalid_argument("cutoff must be >= 1");
  MotionalEnsemble e;
  double norm = 0;
  for (int n = 0; n < cutoff; ++n) {
    const double p = std::pow(nbar, n) / std::pow(1.0 + nbar, n + 1);
    e.weights.emplace_back(n, p);
    norm += p;
  }
  for (auto& [n, p] : e.weights) p /= norm;
  return e;
}

SegmentPropagator::SegmentPropagator(const OperatorMatrix& h) {
  if (!h.hermitian || hermiticity_defect(h.elements) > 1e-10)
    throw std::invalid_argument("propagator needs a Hermitian Hamiltonian");
  Eigen::SelfAdjointEigenSolver<Matrix> es(h.elements);
  eigenvalues_ = es.eigenvalues();
  eigenvectors_ = es.eigenvectors();
}

Matrix SegmentPropagator::evolve(const Matrix& states, double duration) const {
  Vector phases(eigenvalues_.size());
  for (Eigen::Index i = 0; i < eigenvalues_.size(); ++i)
    phases(i) = std::exp(Complex(0, -kTwoPi * eigenvalues_(i) * duration));
  return eigenvectors_ * (phases.asDiagonal() * (eigenvectors_.adjoint() * states));
}

Vector propagate(const OperatorMatrix& h, double duration, const Vector& psi) {
  return SegmentPropagator(h).evolve(psi, duration);
}

OperatorMatrix assemble_gate_hamiltonian(const ProtocolSpace& space, const PhysicalConfig& cfg,
                                         const PulseSegment& segment, EpsScale scale) {
  cfg.validate();
  const HilbertSpace hs = space.space();
  const int ni = space.internal_dim();
  const int nmot = hs.total_dim / ni;

  // Trap: sum over active modes of w (n + 1/2), identity on the internal factor.
  HilbertSpace motional(1, [&] {
    std::vector<int> d;
    for (const Mode& m : space.modes) d.push_back(m.dim);
    return d;
  }());
  Matrix trap = Matrix::Zero(nmot, nmot);
  for (size_t m = 0; m < space.modes.size(); ++m) {
    const double w = cfg.omega_axis(space.modes[m].axis);
    const int d = space.modes[m].dim;
    Matrix n = d >= 2 ? number_operator(d).elements : Matrix::Zero(1, 1);
    n += 0.5 * Matrix::Identity(n.rows(), n.cols());
    trap += w * embed({HilbertSpace(1, {d}), n, true}, 1 + static_cast<int>(m), motional)
                    .elements;
  }

  Matrix h = kron(Matrix::Identity(ni, ni), trap);

  // DDI: J_op on the motional factor, spin-exchange |ue><eu| + h.c. internally.
  if (cfg.j0 != 0.0) {
    Matrix jop = space.modes.empty()
                     ? Matrix::Constant(1, 1, -cfg.j0)
                     : ddi_operator(cfg, space.modes, DdiOrder::quadratic(), scale).elements;
    Matrix exch = Matrix::Zero(ni, ni);
    exch(space.ddi_upper, space.ddi_lower) = 1.0;
    exch(space.ddi_lower, space.ddi_upper) = 1.0;
    h += kron(exch, jop);
  }

  // Microwave drive on both molecules, resonant rotating frame.
  if (segment.rabi_amplitude != Complex(0.0)) {
    const auto edges = space.drive_edges(segment.drive_target);
    if (edges.empty())
      throw std::invalid_argument("segment drives a transition absent from the internal basis");
    Matrix drive = Matrix::Zero(ni, ni);
    for (const auto& [up, lo] : edges) {
      drive(up, lo) += segment.rabi_amplitude / 2.0;
      drive(lo, up) += std::conj(segment.rabi_amplitude) / 2.0;
    }
    h += kron(drive, Matrix::Identity(nmot, nmot));
  }

  if (segment.detuning != 0.0) {
    Matrix det = Matrix::Zero(ni, ni);
    for (int i = 0; i < ni; ++i) {
      const auto& lbl = space.internal_labels[i];
      const double ne = (lbl[0] == 'e') + (lbl[1] == 'e');
      det(i, i) = -segment.detuning * ne;
    }
    h += kron(det, Matrix::Identity(nmot, nmot));
  }

  return {hs, std::move(h), true};
}

namespace {

int fock_stride(const ProtocolSpace& space) {
  int s = 1;
  for (const Mode& m : space.modes) s *= m.dim;
  return s;
}

int member_index(const ProtocolSpace& space, int internal, int fock_n) {
  // Single-mode convention: the ensemble populates the first (or only) mode.
  if (space.modes.empty()) {
    if (fock_n != 0) throw std::invalid_argument("no motional mode to populate");
    return internal;
  }
  if (space.modes.size() != 1)
    throw std::invalid_argument("ensemble runs support at most one active mode");
  if (fock_n >= space.modes[0].dim) throw std::out_of_range("fock level above truncation");
  return internal * space.modes[0].dim + fock_n;
}

double trap_frequency_sum(const ProtocolSpace& space, const PhysicalConfig& cfg, int fock_n) {
  // Free-evolution phase exponent: sum_xi w_xi (n_xi + 1/2) for the member.
  double e = 0;
  for (size_t m = 0; m < space.modes.size(); ++m) {
    const int n = m == 0 ? fock_n : 0;
    e += cfg.omega_axis(space.modes[m].axis) * (n + 0.5);
  }
  return e;
}

}  // namespace

EvolvedEnsemble run_sequence(const ProtocolSpace& space, const PhysicalConfig& cfg,
                             const PulseSequence& seq, const MotionalEnsemble& ensemble,
                             EpsScale scale) {
  if (seq.segments.empty()) throw std::invalid_argument("empty pulse sequence");
  const HilbertSpace hs = space.space();

  EvolvedEnsemble out;
  out.total_duration = seq.total_duration();
  Matrix states(hs.total_dim, 4 * ensemble.weights.size());
  states.setZero();
  for (size_t k = 0; k < ensemble.weights.size(); ++k)
    for (int j = 0; j < 4; ++j)
      states(member_index(space, space.computational[j], ensemble.weights[k].first),
             static_cast<Eigen::Index>(4 * k + j)) = 1.0;

  for (const PulseSegment& seg : seq.segments) {
    SegmentPropagator prop(assemble_gate_hamiltonian(space, cfg, seg, scale));
    states = prop.evolve(states, seg.duration);
  }

  for (size_t k = 0; k < ensemble.weights.size(); ++k)
    out.members.push_back({ensemble.weights[k].first, ensemble.weights[k].second,
                           states.middleCols(static_cast<Eigen::Index>(4 * k), 4)});
  return out;
}

EvolvedEnsemble ideal_reference(const ProtocolSpace& space, const Eigen::Matrix4cd& target,
                                const MotionalEnsemble& ensemble, double total_duration,
                                const PhysicalConfig& cfg, bool include_free_phase) {
  const HilbertSpace hs = space.space();
  EvolvedEnsemble out;
  out.total_duration = total_duration;
  for (const auto& [n, p] : ensemble.weights) {
    Matrix states = Matrix::Zero(hs.total_dim, 4);
    const Complex phase =
        include_free_phase
            ? std::exp(Complex(0, -kTwoPi * trap_frequency_sum(space, cfg, n) * total_duration))
            : Complex(1.0);
    for (int j = 0; j < 4; ++j)
      for (int i = 0; i < 4; ++i)
        states(member_index(space, space.computational[i], n), j) += phase * target(i, j);
    out.members.push_back({n, p, std::move(states), phase});
  }
  return out;
}

Trajectory sample_trajectory(const ProtocolSpace& space, const PhysicalConfig& cfg,
                             const PulseSequence& seq, int fock_n,
                             const std::vector<int>& input_labels, int min_samples,
                             EpsScale scale) {
  if (min_samples < 2) throw std::invalid_argument("need at least 2 samples");
  const HilbertSpace hs = space.space();
  const double total = seq.total_duration();
  const double dt = total / (min_samples - 1);

  Matrix states = Matrix::Zero(hs.total_dim, input_labels.size());
  for (size_t j = 0; j < input_labels.size(); ++j)
    states(member_index(space, input_labels[j], fock_n), static_cast<Eigen::Index>(j)) = 1.0;

  Trajectory traj;
  traj.times.push_back(0.0);
  traj.states.push_back(states);
  double t = 0;
  for (const PulseSegment& seg : seq.segments) {
    SegmentPropagator prop(assemble_gate_hamiltonian(space, cfg, seg, scale));
    const int steps = std::max(1, static_cast<int>(std::ceil(seg.duration / dt)));
    const double step = seg.duration / steps;
    for (int s = 0; s < steps; ++s) {
      states = prop.evolve(states, step);
      t += step;
      traj.times.push_back(t);
      traj.states.push_back(states);
    }
  }
  return traj;
}

}  // namespace moltrap
