#pragma once

#include <array>
#include <vector>

#include "moltrap/model.hpp"

namespace moltrap {

/// Asymmetric quantum Rabi model built from the two DDI-coupled internal
/// states {|ue>, |eu>} and the relative motional modes.
struct AqrmSpec {
  int dims = 1;                      // 1 or 3
  CouplingConstants constants;
  std::array<double, 3> omega{};    // trap frequencies [2pi kHz]
  double delta = 0.0;               // sigma_3 coefficient (0: no analytic obstruction)
  std::array<int, 3> truncation{61, 61, 61};  // Fock levels per mode (x, y, z)

  int trunc_axis(Axis a) const { return truncation[static_cast<int>(a)]; }
  double omega_axis(Axis a) const { return omega[static_cast<int>(a)]; }
};

struct AnalyticLevel {
  int branch;                     // +1 / -1 for the |+> / |-> sigma_1 sector
  std::array<int, 3> quanta{};    // (Nx, Ny, Nz); 1D model uses Nz only
  double energy;
};

/// H = w_z a^dag a + g sigma_1 (a^dag + a) + eta sigma_1 + delta sigma_3 / 2
/// on {|ue>,|eu>} x Fock(trunc_z); the constant w_z/2 is dropped.
OperatorMatrix build_aqrm_1d(const AqrmSpec& spec);

/// H = sum_xi [w_xi a^dag a + h_xi sigma_1] + eta sigma_1,
/// h_x = zeta_x X_x^2, h_y = zeta_y X_y^2, h_z = g X_z + zeta_z X_z^2.
/// Mode order: x, y, z.
OperatorMatrix build_aqrm_3d(const AqrmSpec& spec);

/// E(N, b) = w_z N - g^2/w_z + b*eta for branch b = +-1. Requires delta == 0.
std::vector<AnalyticLevel> analytic_spectrum_1d(const AqrmSpec& spec, int max_quanta);

/// Bogoliubov + displacement result:
/// E(N, b) = sum_xi [(N_xi + 1/2) w_xi sqrt(1 + 4 b zeta_xi / w_xi) - w_xi/2]
///           + b*eta - g^2 / (w_z + 4 b zeta_z).
/// Requires delta == 0 and 1 + 4 b zeta_xi / w_xi > 0 for both branches.
std::vector<AnalyticLevel> analytic_spectrum_3d(const AqrmSpec& spec, int max_quanta);

/// Analytic 1D eigenvector: |b> (x) displaced Fock state with displacement
/// -b*g/w_z, as a flat vector on the build_aqrm_1d space.
Vector analytic_state_1d(const AqrmSpec& spec, int branch, int n);

/// Ascending eigenvalues of a Hermitian operator.
Eigen::VectorXd spectrum(const OperatorMatrix& op);

/// Levels sorted by energy.
std::vector<AnalyticLevel> sorted_levels(std::vector<AnalyticLevel> levels);

}  // namespace moltrap
