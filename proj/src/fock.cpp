#include "moltrap/fock.hpp"

#include <cmath>

namespace moltrap {

int HilbertSpace::flatten(int internal_index, std::span<const int> quanta) const {
  if (internal_index < 0 || internal_index >= internal_dim)
    throw std::out_of_range("internal index out of range");
  if (static_cast<int>(quanta.size()) != num_modes())
    throw std::invalid_argument("quanta list does not match number of modes");
  int flat = internal_index;
  for (int k = 0; k < num_modes(); ++k) {
    if (quanta[k] < 0 || quanta[k] >= mode_dims[k])
      throw std::out_of_range("mode quantum out of range");
    flat = flat * mode_dims[k] + quanta[k];
  }
  return flat;
}

void HilbertSpace::unflatten(int flat, int& internal_index, std::vector<int>& quanta) const {
  if (flat < 0 || flat >= total_dim) throw std::out_of_range("flat index out of range");
  quanta.assign(num_modes(), 0);
  for (int k = num_modes() - 1; k >= 0; --k) {
    quanta[k] = flat % mode_dims[k];
    flat /= mode_dims[k];
  }
  internal_index = flat;
}

double hermiticity_defect(const Matrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

namespace {
void require_mode_dim(int dim) {
  if (dim < 2) throw std::invalid_argument("bosonic operator needs dim >= 2");
}
HilbertSpace single_mode(int dim) { return HilbertSpace(1, {dim}); }
}  // namespace

OperatorMatrix annihilation(int dim) {
  require_mode_dim(dim);
  Matrix a = Matrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(double(n));
  return {single_mode(dim), std::move(a), false};
}

OperatorMatrix creation(int dim) {
  OperatorMatrix a = annihilation(dim);
  a.elements = a.elements.adjoint().eval();
  return a;
}

OperatorMatrix number_operator(int dim) {
  require_mode_dim(dim);
  Matrix n = Matrix::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) n(k, k) = double(k);
  return {single_mode(dim), std::move(n), true};
}

OperatorMatrix position_quadrature(int dim) {
  OperatorMatrix a = annihilation(dim);
  a.elements = (a.elements + a.elements.adjoint()).eval();
  a.hermitian = true;
  return a;
}

OperatorMatrix embed(const OperatorMatrix& op, int target_slot, const HilbertSpace& space) {
  const int num_slots = 1 + space.num_modes();
  if (target_slot < 0 || target_slot >= num_slots)
    throw std::out_of_range("embed: no such slot");
  const int slot_dim =
      target_slot == kInternalSlot ? space.internal_dim : space.mode_dims[target_slot - 1];
  if (op.elements.rows() != slot_dim || op.elements.cols() != slot_dim)
    throw std::invalid_argument("embed: operator dimension does not match slot dimension");

  Matrix out = Matrix::Identity(1, 1);
  for (int slot = 0; slot < num_slots; ++slot) {
    const int d = slot == kInternalSlot ? space.internal_dim : space.mode_dims[slot - 1];
    out = slot == target_slot ? kron(out, op.elements) : kron(out, Matrix::Identity(d, d)).eval();
  }
  return {space, std::move(out), op.hermitian};
}

}  // namespace moltrap
