#pragma once

#include <functional>
#include <map>

#include "moltrap/gates.hpp"

namespace moltrap {

/// Deterministic parallel map: f(i) for i in [0, n), results gathered by index.
void parallel_for(int n, int max_threads, const std::function<void(int)>& f);

struct Minimum {
  double location;
  double value;
};

/// Strict local minima of a sampled trace with 3-point parabolic refinement.
/// Needs at least 3 points on a monotone grid.
std::vector<Minimum> find_minima(const std::vector<double>& xs, const std::vector<double>& ys);

// ---------------------------------------------------------------------------
// Trap-dipole resonance scan (blockade CZ vs trap frequency)

struct ResonanceSpec {
  PhysicalConfig cfg;          // omega[z] is overwritten per scan point
  MotionalEnsemble ensemble = MotionalEnsemble::pure_fock(1);
  double omega_lo = 0.8;       // in units of J0/hbar
  double omega_hi = 1.4;
  int points = 200;
  int fock_cutoff = 41;
  int max_threads = 0;         // 0: hardware concurrency
  EpsScale scale = EpsScale::relative_displacement;
};

struct ResonancePoint {
  double omega_over_j0;
  double fidelity;
  std::array<double, 4> populations{};  // Fock 0..3, input |ud>
  double return_population;             // |ud> internal population, input |ud>
};

/// Default Fig-3 style configuration: Omega_mu = 1, J0 = 20, ell_z/L = 0.045.
PhysicalConfig resonance_default_config();

std::vector<ResonancePoint> resonance_scan(const ResonanceSpec& spec);

// ---------------------------------------------------------------------------
// iSWAP optimization (motion-free model)

enum class IswapOptimizeMode { wait_only, pulse_and_wait };

struct OptimumReport {
  std::map<std::string, double> best_params;
  double best_value = 0.0;
  int refinement_iterations = 0;
  bool converged = true;
  std::vector<std::pair<double, double>> scan_trace;  // 1D coarse scan (x, F)
};

OptimumReport optimize_iswap(const PhysicalConfig& cfg, IswapOptimizeMode mode,
                             int coarse_points = 201);

struct OmegaScanPoint {
  double ratio;        // J0 / (hbar Omega_mu)
  double fidelity;     // optimized over (area, wait)
  double pulse_area;   // optimum, in units of pi
  double wait_fraction;
};

/// Optimal (area, wait) iSWAP fidelity as a function of J0/(hbar Omega_mu)
/// at fixed J0.
std::vector<OmegaScanPoint> iswap_omega_scan(const PhysicalConfig& cfg, double ratio_lo,
                                             double ratio_hi, int points, int max_threads = 0);

// ---------------------------------------------------------------------------
// Gate infidelity vs motional coupling strength (x mode, thermal states)

struct MotionSpec {
  PhysicalConfig cfg;
  double ell_lo = 0.0;
  double ell_hi = 0.12;
  int points = 13;
  std::vector<double> nbars = {1.0, 2.0, 3.0};
  int fock_cutoff = 41;
  int max_threads = 0;
  // Figure-faithful displacement normalization for these curves.
  EpsScale scale = EpsScale::single_molecule_rms;
  double phi = 3.14159265358979323846;  // quasi-blockade conditional phase
};

struct MotionPoint {
  double ell_over_L;
  double nbar;
  double fidelity;
};

/// protocol: Protocol::iswap (one-pulse preset) or Protocol::quasi_blockade.
std::vector<MotionPoint> motion_infidelity_curve(Protocol protocol, const MotionSpec& spec);

/// One-pulse iSWAP default: Omega = 0.641, J0 = 0.37, omega_x = 2 Omega.
PhysicalConfig motion_iswap_default_config();
/// Quasi-blockade default: Omega = 1, J0 = 11.832, omega_x = 0.3 Omega.
PhysicalConfig motion_qb_default_config();

// ---------------------------------------------------------------------------
// Scalar optimizers (used by the sweeps; exposed for tests)

double golden_section_min(const std::function<double(double)>& f, double a, double b, double tol,
                          int max_iter, int* iterations = nullptr);

/// Nelder-Mead on 2 parameters; returns best point found.
std::pair<std::array<double, 2>, double> nelder_mead_min(
    const std::function<double(const std::array<double, 2>&)>& f, std::array<double, 2> x0,
    std::array<double, 2> step, double tol, int max_iter, int* iterations = nullptr);

}  // namespace moltrap
