#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace moltrap {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Tensor-product space: an internal level space times an ordered list of
/// truncated bosonic modes. Flat index convention (fixed, tested):
///   flat = internal_index * prod(mode_dims) + row-major over modes,
/// i.e. the internal slot is slowest, mode 0 next, the last mode fastest.
struct HilbertSpace {
  int internal_dim = 1;
  std::vector<int> mode_dims;
  int total_dim = 1;

  HilbertSpace() = default;
  HilbertSpace(int internal, std::vector<int> modes)
      : internal_dim(internal), mode_dims(std::move(modes)) {
    if (internal_dim < 1) throw std::invalid_argument("internal_dim must be >= 1");
    total_dim = internal_dim;
    for (int d : mode_dims) {
      if (d < 1) throw std::invalid_argument("mode dimension must be >= 1");
      total_dim *= d;
    }
  }

  int num_modes() const { return static_cast<int>(mode_dims.size()); }

  int flatten(int internal_index, std::span<const int> quanta) const;
  void unflatten(int flat, int& internal_index, std::vector<int>& quanta) const;
};

/// Slot identifiers for embed(): slot 0 is the internal space, slot 1+k is mode k.
inline constexpr int kInternalSlot = 0;

struct OperatorMatrix {
  HilbertSpace space;
  Matrix elements;
  bool hermitian = false;
};

/// max |M - M^dagger| element; the hermitian flag promises this <= 1e-12.
double hermiticity_defect(const Matrix& m);

Matrix kron(const Matrix& a, const Matrix& b);

/// Truncated annihilation operator, A[n-1, n] = sqrt(n). dim >= 2.
OperatorMatrix annihilation(int dim);
OperatorMatrix creation(int dim);
/// diag(0, 1, ..., dim-1)
OperatorMatrix number_operator(int dim);
/// X = a^dagger + a
OperatorMatrix position_quadrature(int dim);

/// Identity on the slot dimensions other than target_slot, op on target_slot.
OperatorMatrix embed(const OperatorMatrix& op, int target_slot, const HilbertSpace& space);

}  // namespace moltrap
