#include "moltrap/sweeps.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace moltrap {

void parallel_for(int n, int max_threads, const std::function<void(int)>& f) {
  int workers = max_threads > 0 ? max_threads : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::max(1, std::min(workers, n));
  if (workers == 1) {
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) f(i);
    });
  for (auto& t : pool) t.join();
}

std::vector<Minimum> find_minima(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("find_minima: size mismatch");
  if (xs.size() < 3) throw std::invalid_argument("find_minima: need at least 3 points");
  std::vector<Minimum> out;
  for (size_t i = 1; i + 1 < ys.size(); ++i) {
    if (!(ys[i] < ys[i - 1] && ys[i] < ys[i + 1])) continue;
    // parabola through the three samples
    const double x0 = xs[i - 1], x1 = xs[i], x2 = xs[i + 1];
    const double y0 = ys[i - 1], y1 = ys[i], y2 = ys[i + 1];
    const double denom = (x1 - x0) * (y1 - y2) - (x1 - x2) * (y1 - y0);
    double xmin = x1, ymin = y1;
    if (denom != 0.0) {
      xmin = x1 - 0.5 *
                      ((x1 - x0) * (x1 - x0) * (y1 - y2) - (x1 - x2) * (x1 - x2) * (y1 - y0)) /
                      denom;
      // evaluate the fit at its vertex
      const double l0 = (xmin - x1) * (xmin - x2) / ((x0 - x1) * (x0 - x2));
      const double l1 = (xmin - x0) * (xmin - x2) / ((x1 - x0) * (x1 - x2));
      const double l2 = (xmin - x0) * (xmin - x1) / ((x2 - x0) * (x2 - x1));
      ymin = l0 * y0 + l1 * y1 + l2 * y2;
    }
    out.push_back({xmin, ymin});
  }
  return out;
}

// ---------------------------------------------------------------------------

PhysicalConfig resonance_default_config() {
  PhysicalConfig cfg;
  cfg.omega_mu = 1.0;
  cfg.j0 = 20.0;
  cfg.ell_over_L = {0.0, 0.0, 0.045};
  return cfg;
}

std::vector<ResonancePoint> resonance_scan(const ResonanceSpec& spec) {
  if (spec.points < 2) throw std::invalid_argument("resonance_scan: need at least 2 points");
  std::vector<ResonancePoint> out(spec.points);
  const Eigen::Matrix4cd target = target_unitary(Protocol::blockade_cz);
  parallel_for(spec.points, spec.max_threads, [&](int i) {
    PhysicalConfig cfg = spec.cfg;
    const double x = spec.omega_lo + (spec.omega_hi - spec.omega_lo) * i / (spec.points - 1.0);
    cfg.omega[static_cast<int>(Axis::z)] = x * cfg.j0;
    ProtocolSpace space =
        make_protocol_space(Protocol::blockade_cz, {{Axis::z, spec.fock_cutoff}});
    GateResult r = run_gate(space, cfg, sequence_blockade_cz(cfg), spec.ensemble, target,
                            spec.scale);
    ResonancePoint p;
    p.omega_over_j0 = x;
    p.fidelity = r.fidelity;
    for (int n = 0; n < 4 && n < static_cast<int>(r.motional_populations[1].size()); ++n)
      p.populations[n] = r.motional_populations[1][n];
    p.return_population = r.internal_return_population[1];
    out[i] = p;
  });
  return out;
}

// ---------------------------------------------------------------------------

namespace {

double iswap_fidelity(const PhysicalConfig& cfg, double area, double wait_fraction) {
  PhysicalConfig flat = cfg;
  flat.ell_over_L = {0, 0, 0};  // optimization runs on the motion-free model
  ProtocolSpace space = make_protocol_space(Protocol::iswap);
  return run_gate(space, flat, sequence_iswap(flat, area, wait_fraction),
                  MotionalEnsemble::pure_fock(0), target_unitary(Protocol::iswap))
      .fidelity;
}

}  // namespace

double golden_section_min(const std::function<double(double)>& f, double a, double b, double tol,
                          int max_iter, int* iterations) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - phi * (b - a), d = a + phi * (b - a);
  double fc = f(c), fd = f(d);
  int it = 0;
  while (std::abs(b - a) > tol * std::max(1.0, std::abs(a) + std::abs(b)) && it < max_iter) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + phi * (b - a);
      fd = f(d);
    }
    ++it;
  }
  if (iterations) *iterations = it;
  return fc < fd ? c : d;
}

std::pair<std::array<double, 2>, double> nelder_mead_min(
    const std::function<double(const std::array<double, 2>&)>& f, std::array<double, 2> x0,
    std::array<double, 2> step, double tol, int max_iter, int* iterations) {
  using P = std::array<double, 2>;
  std::array<std::pair<P, double>, 3> simplex;
  simplex[0] = {x0, f(x0)};
  simplex[1] = {{x0[0] + step[0], x0[1]}, 0};
  simplex[2] = {{x0[0], x0[1] + step[1]}, 0};
  simplex[1].second = f(simplex[1].first);
  simplex[2].second = f(simplex[2].first);

  auto order = [&] {
    std::sort(simplex.begin(), simplex.end(),
              [](const auto& a, const auto& b) { return a.second < b.second; });
  };
  int it = 0;
  for (; it < max_iter; ++it) {
    order();
    const double spread = std::max(std::abs(simplex[2].first[0] - simplex[0].first[0]),
                                   std::abs(simplex[2].first[1] - simplex[0].first[1]));
    if (spread < tol) break;
    const P& best = simplex[0].first;
    const P& worst = simplex[2].first;
    P centroid = {(simplex[0].first[0] + simplex[1].first[0]) / 2,
                  (simplex[0].first[1] + simplex[1].first[1]) / 2};
    P refl = {2 * centroid[0] - worst[0], 2 * centroid[1] - worst[1]};
    double frefl = f(refl);
    if (frefl < simplex[0].second) {
      P expand = {3 * centroid[0] - 2 * worst[0], 3 * centroid[1] - 2 * worst[1]};
      double fexp = f(expand);
      simplex[2] = fexp < frefl ? std::pair{expand, fexp} : std::pair{refl, frefl};
    } else if (frefl < simplex[1].second) {
      simplex[2] = {refl, frefl};
    } else {
      P contr = {(centroid[0] + worst[0]) / 2, (centroid[1] + worst[1]) / 2};
      double fcon = f(contr);
      if (fcon < simplex[2].second) {
        simplex[2] = {contr, fcon};
      } else {
        for (int k = 1; k < 3; ++k) {
          simplex[k].first = {(simplex[k].first[0] + best[0]) / 2,
                              (simplex[k].first[1] + best[1]) / 2};
          simplex[k].second = f(simplex[k].first);
        }
      }
    }
  }
  order();
  if (iterations) *iterations = it;
  return {simplex[0].first, simplex[0].second};
}

OptimumReport optimize_iswap(const PhysicalConfig& cfg, IswapOptimizeMode mode,
                             int coarse_points) {
  if (coarse_points < 3) throw std::invalid_argument("optimize_iswap: too few coarse points");
  OptimumReport rep;
  const int max_refine = 500;

  if (mode == IswapOptimizeMode::wait_only) {
    double best_x = 0, best_f = -1;
    for (int i = 0; i < coarse_points; ++i) {
      const double x = 1.5 * i / (coarse_points - 1.0);
      const double f = iswap_fidelity(cfg, M_PI, x);
      rep.scan_trace.emplace_back(x, f);
      if (f > best_f) best_f = f, best_x = x;
    }
    const double h = 1.5 / (coarse_points - 1.0);
    int iters = 0;
    const double x = golden_section_min([&](double w) { return -iswap_fidelity(cfg, M_PI, w); },
                                        std::max(0.0, best_x - h), best_x + h, 1e-6, max_refine,
                                        &iters);
    const double f = iswap_fidelity(cfg, M_PI, x);
    rep.refinement_iterations = iters;
    rep.converged = iters < max_refine;
    rep.best_value = std::max(f, best_f);
    rep.best_params["wait_fraction"] = f >= best_f ? x : best_x;
    rep.best_params["pulse_area_pi"] = 1.0;
    return rep;
  }

  // pulse-and-wait: coarse grid then simplex refinement
  double best_f = -1;
  std::array<double, 2> best_x{1.0, 0.5};
  const int na = std::max(36, coarse_points / 4), nw = coarse_points;
  for (int i = 0; i < na; ++i) {
    const double area = (0.70 + 0.35 * i / (na - 1.0)) * M_PI;
    for (int j = 0; j < nw; ++j) {
      const double w = 1.2 * j / (nw - 1.0);
      const double f = iswap_fidelity(cfg, area, w);
      if (f > best_f) best_f = f, best_x = {area, w};
    }
  }
  int iters = 0;
  auto [xmin, fmin] = nelder_mead_min(
      [&](const std::array<double, 2>& x) {
        if (x[0] <= 0 || x[1] < 0) return 1.0;
        return -iswap_fidelity(cfg, x[0], x[1]);
      },
      best_x, {0.02 * M_PI, 0.02}, 1e-9, max_refine, &iters);
  rep.refinement_iterations = iters;
  rep.converged = iters < max_refine;
  if (-fmin >= best_f) {
    rep.best_value = -fmin;
    rep.best_params["pulse_area_pi"] = xmin[0] / M_PI;
    rep.best_params["wait_fraction"] = xmin[1];
  } else {
    rep.best_value = best_f;
    rep.best_params["pulse_area_pi"] = best_x[0] / M_PI;
    rep.best_params["wait_fraction"] = best_x[1];
  }
  return rep;
}

std::vector<OmegaScanPoint> iswap_omega_scan(const PhysicalConfig& cfg, double ratio_lo,
                                             double ratio_hi, int points, int max_threads) {
  if (points < 2) throw std::invalid_argument("iswap_omega_scan: need at least 2 points");
  std::vector<OmegaScanPoint> out(points);
  parallel_for(points, max_threads, [&](int i) {
    const double ratio = ratio_lo + (ratio_hi - ratio_lo) * i / (points - 1.0);
    PhysicalConfig c = cfg;
    c.omega_mu = c.j0 / ratio;
    OptimumReport rep = optimize_iswap(c, IswapOptimizeMode::pulse_and_wait, 121);
    out[i] = {ratio, rep.best_value, rep.best_params.at("pulse_area_pi"),
              rep.best_params.at("wait_fraction")};
  });
  return out;
}

// ---------------------------------------------------------------------------

PhysicalConfig motion_iswap_default_config() {
  PhysicalConfig cfg;
  cfg.omega_mu = 0.641;
  cfg.j0 = 0.37;
  cfg.omega[static_cast<int>(Axis::x)] = 2.0 * cfg.omega_mu;
  return cfg;
}

PhysicalConfig motion_qb_default_config() {
  PhysicalConfig cfg;
  cfg.omega_mu = 1.0;
  cfg.j0 = 11.832;
  cfg.omega[static_cast<int>(Axis::x)] = 0.3 * cfg.omega_mu;
  return cfg;
}

std::vector<MotionPoint> motion_infidelity_curve(Protocol protocol, const MotionSpec& spec) {
  if (protocol != Protocol::iswap && protocol != Protocol::quasi_blockade)
    throw std::invalid_argument("motion_infidelity_curve: unsupported protocol");
  if (spec.points < 2) throw std::invalid_argument("motion curve: need at least 2 points");

  // Sequence and target are fixed by the motion-free calibration.
  PulseSequence seq;
  Eigen::Matrix4cd target;
  if (protocol == Protocol::iswap) {
    seq = sequence_iswap_one_pulse(spec.cfg);
    target = target_unitary(Protocol::iswap);
  } else {
    const ThetaCalibration cal = calibrate_quasi_blockade_theta(spec.cfg);
    seq = sequence_quasi_blockade(spec.cfg, spec.phi, cal.theta);
    target = target_unitary(Protocol::quasi_blockade, spec.phi, cal.theta);
  }

  std::vector<MotionPoint> out(spec.points * spec.nbars.size());
  parallel_for(spec.points, spec.max_threads, [&](int i) {
    const double ell = spec.ell_lo + (spec.ell_hi - spec.ell_lo) * i / (spec.points - 1.0);
    PhysicalConfig cfg = spec.cfg;
    cfg.ell_over_L = {ell, 0.0, 0.0};
    ProtocolSpace space = make_protocol_space(protocol, {{Axis::x, spec.fock_cutoff}});
    // run all Fock members once, reweight per nbar (no re-propagation)
    MotionalEnsemble members;
    for (int n = 0; n < spec.fock_cutoff; ++n) members.weights.emplace_back(n, 1.0);
    EvolvedEnsemble ev = run_sequence(space, cfg, seq, members, spec.scale);
    for (size_t b = 0; b < spec.nbars.size(); ++b) {
      MotionalEnsemble th = MotionalEnsemble::thermal(spec.nbars[b], spec.fock_cutoff);
      EvolvedEnsemble evw = ev, idw = ideal_reference(space, target, th, ev.total_duration, cfg);
      for (size_t k = 0; k < evw.members.size(); ++k) evw.members[k].weight = th.weights[k].second;
      GateResult r = ensemble_fidelity(space, evw, idw);
      out[i * spec.nbars.size() + b] = {ell, spec.nbars[b], r.fidelity};
    }
  });
  return out;
}

}  // namespace moltrap
