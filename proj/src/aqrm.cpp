#include "moltrap/aqrm.hpp"

#include <algorithm>
#include <cmath>

namespace moltrap {

namespace {

Matrix sigma1() {
  Matrix s(2, 2);
  s << 0, 1, 1, 0;
  return s;
}

Matrix sigma3() {
  Matrix s(2, 2);
  s << 1, 0, 0, -1;
  return s;
}

void check_analytic_allowed(const AqrmSpec& spec) {
  if (spec.delta != 0.0)
    throw std::invalid_argument("analytic spectrum exists only for delta = 0");
}

}  // namespace

OperatorMatrix build_aqrm_1d(const AqrmSpec& spec) {
  const int nz = spec.trunc_axis(Axis::z);
  HilbertSpace space(2, {nz});
  const double wz = spec.omega_axis(Axis::z);

  Matrix h = kron(Matrix::Identity(2, 2), wz * number_operator(nz).elements);
  h += kron(sigma1(), spec.constants.g * position_quadrature(nz).elements +
                          spec.constants.eta * Matrix::Identity(nz, nz));
  h += kron(spec.delta / 2.0 * sigma3(), Matrix::Identity(nz, nz));
  return {space, std::move(h), true};
}

OperatorMatrix build_aqrm_3d(const AqrmSpec& spec) {
  const std::array<Axis, 3> axes = {Axis::x, Axis::y, Axis::z};
  std::vector<int> dims;
  for (Axis a : axes) dims.push_back(spec.trunc_axis(a));
  HilbertSpace space(2, dims);

  Matrix trap = Matrix::Zero(space.total_dim / 2, space.total_dim / 2);
  Matrix hcoup = trap;
  HilbertSpace motional(1, dims);
  for (int m = 0; m < 3; ++m) {
    const Axis a = axes[m];
    const int d = dims[m];
    Matrix num = d >= 2 ? number_operator(d).elements : Matrix::Zero(1, 1);
    Matrix x = d >= 2 ? position_quadrature(d).elements : Matrix::Zero(1, 1);
    trap += spec.omega_axis(a) * embed({HilbertSpace(1, {d}), num, true}, 1 + m, motional).elements;
    OperatorMatrix xsq{HilbertSpace(1, {d}), (x * x).eval(), true};
    hcoup += spec.constants.zeta_axis(a) * embed(xsq, 1 + m, motional).elements;
    if (a == Axis::z)
      hcoup += spec.constants.g * embed({HilbertSpace(1, {d}), x, true}, 1 + m, motional).elements;
  }
  hcoup += spec.constants.eta * Matrix::Identity(hcoup.rows(), hcoup.cols());

  Matrix h = kron(Matrix::Identity(2, 2), trap) + kron(sigma1(), hcoup);
  h += kron(spec.delta / 2.0 * sigma3(), Matrix::Identity(trap.rows(), trap.cols()));
  return {space, std::move(h), true};
}

std::vector<AnalyticLevel> analytic_spectrum_1d(const AqrmSpec& spec, int max_quanta) {
  check_analytic_allowed(spec);
  const double wz = spec.omega_axis(Axis::z);
  const double g = spec.constants.g, eta = spec.constants.eta;
  std::vector<AnalyticLevel> out;
  for (int b : {+1, -1})
    for (int n = 0; n <= max_quanta; ++n)
      out.push_back({b, {0, 0, n}, wz * n - g * g / wz + b * eta});
  return sorted_levels(std::move(out));
}

std::vector<AnalyticLevel> analytic_spectrum_3d(const AqrmSpec& spec, int max_quanta) {
  check_analytic_allowed(spec);
  const double g = spec.constants.g, eta = spec.constants.eta;
  std::array<std::array<double, 3>, 2> squeezed{};  // [branch][axis]: w * e^{4 varpi}
  for (int bi : {0, 1}) {
    const int b = bi == 0 ? +1 : -1;
    for (int a = 0; a < 3; ++a) {
      const double w = spec.omega[a];
      const double arg = 1.0 + 4.0 * b * spec.constants.zeta[a] / w;
      if (arg <= 0.0)
        throw std::domain_error("analytic_spectrum_3d: outside the squeezing regime");
      squeezed[bi][a] = w * std::sqrt(arg);
    }
  }
  std::vector<AnalyticLevel> out;
  for (int bi : {0, 1}) {
    const int b = bi == 0 ? +1 : -1;
    const double wz = spec.omega_axis(Axis::z);
    const double zshift = -g * g / (wz + 4.0 * b * spec.constants.zeta_axis(Axis::z));
    for (int nx = 0; nx <= max_quanta; ++nx)
      for (int ny = 0; ny <= max_quanta; ++ny)
        for (int nz = 0; nz <= max_quanta; ++nz) {
          double e = b * eta + zshift;
          const std::array<int, 3> quanta = {nx, ny, nz};
          for (int a = 0; a < 3; ++a)
            e += (quanta[a] + 0.5) * squeezed[bi][a] - 0.5 * spec.omega[a];
          out.push_back({b, quanta, e});
        }
  }
  return sorted_levels(std::move(out));
}

Vector analytic_state_1d(const AqrmSpec& spec, int branch, int n) {
  check_analytic_allowed(spec);
  const int nz = spec.trunc_axis(Axis::z);
  if (n < 0 || n >= nz) throw std::out_of_range("analytic_state_1d: quantum out of range");

  // Displaced Fock state D(alpha)|n>, alpha = -b*g/w_z, via the exponential of
  // the anti-Hermitian generator alpha a^dag - alpha* a.
  const double alpha = -branch * spec.constants.g / spec.omega_axis(Axis::z);
  Matrix a = annihilation(nz).elements;
  Matrix gen = alpha * a.adjoint() - alpha * a;  // alpha real here
  Eigen::SelfAdjointEigenSolver<Matrix> es((Complex(0, 1) * gen).eval());
  Vector fock = Vector::Zero(nz);
  fock(n) = 1.0;
  Vector phases(nz);
  for (int i = 0; i < nz; ++i)
    phases(i) = std::exp(Complex(0, -es.eigenvalues()(i)));
  Vector displaced = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint() * fock;

  Vector internal(2);
  internal << 1.0 / std::sqrt(2.0), branch / std::sqrt(2.0);  // (|ue> + b|eu>)/sqrt(2)
  Vector out = Vector::Zero(2 * nz);
  for (int i = 0; i < 2; ++i) out.segment(i * nz, nz) = internal(i) * displaced;
  return out;
}

Eigen::VectorXd spectrum(const OperatorMatrix& op) {
  if (!op.hermitian || hermiticity_defect(op.elements) > 1e-10)
    throw std::invalid_argument("spectrum: operator is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> es(op.elements, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

std::vector<AnalyticLevel> sorted_levels(std::vector<AnalyticLevel> levels) {
  std::stable_sort(levels.begin(), levels.end(),
                   [](const AnalyticLevel& a, const AnalyticLevel& b) { return a.energy < b.energy; });
  return levels;
}

}  // namespace moltrap
