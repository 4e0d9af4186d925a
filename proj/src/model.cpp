#include "moltrap/model.hpp"

#include <cmath>
#include <map>
#include <tuple>

namespace moltrap {

double eps_scale_factor(EpsScale scale) {
  return scale == EpsScale::relative_displacement ? 1.0 : 1.0 / std::sqrt(2.0);
}

void PhysicalConfig::validate() const {
  if (separation <= 0) throw std::invalid_argument("trap separation must be positive");
  for (double w : omega)
    if (w < 0) throw std::invalid_argument("trap frequencies must be non-negative");
  for (double r : ell_over_L)
    if (r < 0 || r > ell_guard)
      throw std::invalid_argument("ell/L outside [0, guard] range");
  if (omega_mu < 0) throw std::invalid_argument("Rabi frequency must be non-negative");
}

CouplingConstants derive_couplings(const PhysicalConfig& cfg) {
  cfg.validate();
  const double lx = cfg.ell_axis(Axis::x), ly = cfg.ell_axis(Axis::y), lz = cfg.ell_axis(Axis::z);
  CouplingConstants c;
  c.eta = -cfg.j0;
  c.g = -3.0 * cfg.j0 * lz;
  c.zeta = {3.0 * cfg.j0 * lx * lx, 3.0 * cfg.j0 * ly * ly, -6.0 * cfg.j0 * lz * lz};
  return c;
}

double ddi_exact(const PhysicalConfig& cfg, const std::array<double, 3>& eps) {
  const double ex = eps[0], ey = eps[1], ez = eps[2];
  const double rho2 = ex * ex + ey * ey;
  const double sz = 1.0 - ez;
  const double d = rho2 + sz * sz;
  if (d <= 1e-300) throw std::domain_error("ddi_exact: molecules coincident");
  return -(cfg.j0 / 2.0) * (2.0 * sz * sz - rho2) / std::pow(d, 2.5);
}

DdiOrder DdiOrder::exact_taylor(int k) {
  if (k < 0) throw std::invalid_argument("taylor order must be non-negative");
  return {k};
}

namespace {

// Sparse trivariate polynomial in (eps_x, eps_y, eps_z), truncated at a fixed
// total degree. Only what the Taylor expansion of the exact coupling needs.
struct Poly3 {
  int max_order;
  std::map<std::tuple<int, int, int>, double> terms;

  explicit Poly3(int k) : max_order(k) {}

  void add(int ax, int ay, int az, double c) {
    if (ax + ay + az > max_order || c == 0.0) return;
    auto key = std::make_tuple(ax, ay, az);
    terms[key] += c;
    if (terms[key] == 0.0) terms.erase(key);
  }

  Poly3 operator*(const Poly3& o) const {
    Poly3 out(max_order);
    for (const auto& [ka, ca] : terms)
      for (const auto& [kb, cb] : o.terms)
        out.add(std::get<0>(ka) + std::get<0>(kb), std::get<1>(ka) + std::get<1>(kb),
                std::get<2>(ka) + std::get<2>(kb), ca * cb);
    return out;
  }

  Poly3& operator+=(const Poly3& o) {
    for (const auto& [k, c] : o.terms) add(std::get<0>(k), std::get<1>(k), std::get<2>(k), c);
    return *this;
  }

  Poly3 scaled(double s) const {
    Poly3 out(max_order);
    for (const auto& [k, c] : terms) out.terms[k] = c * s;
    return out;
  }
};

// Taylor coefficients of J(eps)/(-J0) up to total order k:
// J = -(J0/2) * N * D^{-5/2},  N = 2 - 4 ez + 2 ez^2 - u,  D = 1 + delta,
// delta = u + ez^2 - 2 ez,  u = ex^2 + ey^2.
Poly3 exact_coupling_series(int k) {
  Poly3 delta(k);
  delta.add(2, 0, 0, 1.0);
  delta.add(0, 2, 0, 1.0);
  delta.add(0, 0, 2, 1.0);
  delta.add(0, 0, 1, -2.0);

  // D^{-5/2} = sum_m binom(-5/2, m) delta^m; delta has minimum order 1.
  Poly3 dinv(k);
  dinv.add(0, 0, 0, 1.0);
  Poly3 delta_pow(k);
  delta_pow.add(0, 0, 0, 1.0);
  double binom = 1.0;
  for (int m = 1; m <= k; ++m) {
    binom *= (-2.5 - (m - 1)) / m;
    delta_pow = delta_pow * delta;
    dinv += delta_pow.scaled(binom);
  }

  Poly3 numer(k);
  numer.add(0, 0, 0, 2.0);
  numer.add(0, 0, 1, -4.0);
  numer.add(0, 0, 2, 2.0);
  numer.add(2, 0, 0, -1.0);
  numer.add(0, 2, 0, -1.0);

  return (numer * dinv).scaled(-0.5);  // in units of J0
}

}  // namespace

OperatorMatrix ddi_operator(const PhysicalConfig& cfg, const std::vector<Mode>& modes,
                            const DdiOrder& order, EpsScale scale) {
  cfg.validate();
  std::vector<int> dims;
  dims.reserve(modes.size());
  std::array<int, 3> mode_of_axis = {-1, -1, -1};
  for (size_t m = 0; m < modes.size(); ++m) {
    if (modes[m].dim < 1) throw std::invalid_argument("ddi_operator: mode dim must be >= 1");
    if (mode_of_axis[static_cast<int>(modes[m].axis)] != -1)
      throw std::invalid_argument("ddi_operator: duplicate axis");
    mode_of_axis[static_cast<int>(modes[m].axis)] = static_cast<int>(m);
    dims.push_back(modes[m].dim);
  }
  HilbertSpace space(1, dims);

  // Displacement amplitude per quantum on each active axis.
  const double s = eps_scale_factor(scale);
  std::array<double, 3> amp{};
  for (int a = 0; a < 3; ++a) amp[a] = s * cfg.ell_over_L[a];

  // Per-mode powers of X = a^dagger + a up to the expansion order.
  const int k = order.taylor_order;
  std::vector<std::vector<Matrix>> xpow(modes.size());
  for (size_t m = 0; m < modes.size(); ++m) {
    // X on a 1-level truncation is the zero matrix
    Matrix x = modes[m].dim >= 2 ? position_quadrature(modes[m].dim).elements
                                 : Matrix::Zero(1, 1);
    xpow[m].push_back(Matrix::Identity(modes[m].dim, modes[m].dim));
    for (int p = 1; p <= k; ++p) xpow[m].push_back(xpow[m].back() * x);
  }

  Poly3 series = exact_coupling_series(k);
  Matrix total = Matrix::Zero(space.total_dim, space.total_dim);
  for (const auto& [key, coef] : series.terms) {
    const std::array<int, 3> pw = {std::get<0>(key), std::get<1>(key), std::get<2>(key)};
    double c = coef * cfg.j0;
    bool active = true;
    for (int a = 0; a < 3 && active; ++a) {
      if (pw[a] == 0) continue;
      if (mode_of_axis[a] < 0 || amp[a] == 0.0) {
        active = false;  // point-like axis: eps = 0 kills the monomial
        break;
      }
      c *= std::pow(amp[a], pw[a]);
    }
    if (!active || c == 0.0) continue;
    Matrix term = Matrix::Identity(1, 1);
    for (size_t m = 0; m < modes.size(); ++m) {
      const int p = pw[static_cast<int>(modes[m].axis)];
      term = kron(term, xpow[m][p]);
    }
    total += c * term;
  }

  // X powers are Hermitian and coefficients real, but truncation can leave
  // rounding asymmetry; symmetrize to keep the promise exact.
  total = ((total + total.adjoint()) / 2.0).eval();
  return {space, std::move(total), true};
}

}  // namespace moltrap
