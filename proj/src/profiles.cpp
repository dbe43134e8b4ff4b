#include "jetflow/profiles.hpp"

#include <cmath>
#include <stdexcept>

#include "jetflow/grid.hpp"
#include "jetflow/parallel.hpp"

namespace jetflow {

namespace {

// E(r) = exp(1/(r^2-1)) on r < 1 and its log-derivative chain
// g = 1/(r^2-1), g' = -2r/(r^2-1)^2, g'' = (6r^2+2)/(r^2-1)^3,
// g''' = -24 r (r^2+1)/(r^2-1)^4, g'''' = (120 r^4 + 240 r^2 + 24)/(r^2-1)^5
struct Bump {
  double e, g1, g2, g3, g4;
  explicit Bump(double r) {
    const double d = r * r - 1.0;
    e = std::exp(1.0 / d);
    const double d2 = d * d;
    g1 = -2.0 * r / d2;
    g2 = (6.0 * r * r + 2.0) / (d2 * d);
    g3 = -24.0 * r * (r * r + 1.0) / (d2 * d2);
    g4 = (120.0 * r * r * r * r + 240.0 * r * r + 24.0) / (d2 * d2 * d);
  }
  double f0() const { return e; }
  double f1() const { return e * g1; }
  double f2() const { return e * (g1 * g1 + g2); }
  double f3() const { return e * (g1 * g1 * g1 + 3.0 * g1 * g2 + g3); }
  double f4() const {
    return e * (g1 * g1 * g1 * g1 + 6.0 * g1 * g1 * g2 + 3.0 * g2 * g2 + 4.0 * g1 * g3 + g4);
  }
};

bool inside(double r) { return std::abs(r) < 1.0 - 1e-14; }

} // namespace

ProfileSet::ProfileSet(int quadrature_n) : quad_n_(quadrature_n) {
  if (quad_n_ < 256) throw std::invalid_argument("ProfileSet: quadrature_n >= 256 required");
  // normalize psi: (1/2pi) int c^2 psi_raw^2 = 1
  const double ipsi2 = integrate_1d([this](double z) {
    const double v = inside(z) ? Bump(z).f1() : 0.0;
    return v * v;
  });
  if (ipsi2 <= 0.0) throw std::runtime_error("ProfileSet: psi normalization integral vanished");
  c_psi_ = std::sqrt(kTwoPi / ipsi2);
  // normalize phi: (1/4pi^2) int_{B_1} c^2 phi_raw^2 = 1
  const double iphi2 = integrate_disk([](double y1, double y2) {
    const double r = std::hypot(y1, y2);
    if (!inside(r)) return 0.0;
    const Bump b(r);
    const double over_r = r > 1e-9 ? b.f1() / r : b.f2();
    const double v = -(b.f2() + over_r);
    return v * v;
  });
  if (iphi2 <= 0.0) throw std::runtime_error("ProfileSet: phi normalization integral vanished");
  c_phi_ = kTwoPi / std::sqrt(iphi2);
}

double ProfileSet::psi(double z) const { return inside(z) ? c_psi_ * Bump(z).f1() : 0.0; }
double ProfileSet::dpsi(double z) const { return inside(z) ? c_psi_ * Bump(z).f2() : 0.0; }
double ProfileSet::d2psi(double z) const { return inside(z) ? c_psi_ * Bump(z).f3() : 0.0; }
double ProfileSet::d3psi(double z) const { return inside(z) ? c_psi_ * Bump(z).f4() : 0.0; }

double ProfileSet::Phi_radial(double r) const { return inside(r) ? c_phi_ * Bump(r).f0() : 0.0; }
double ProfileSet::dPhi_radial(double r) const { return inside(r) ? c_phi_ * Bump(r).f1() : 0.0; }
double ProfileSet::d2Phi_radial(double r) const { return inside(r) ? c_phi_ * Bump(r).f2() : 0.0; }

double ProfileSet::phi_radial(double r) const {
  if (!inside(r)) return 0.0;
  const Bump b(r);
  // -Lap Phi = -(Phi'' + Phi'/r); at r=0, Phi'/r -> Phi''(0)
  const double over_r = r > 1e-9 ? b.f1() / r : b.f2();
  return -c_phi_ * (b.f2() + over_r);
}

double ProfileSet::dphi_radial(double r) const {
  if (!inside(r)) return 0.0;
  const Bump b(r);
  if (r <= 1e-9) return 0.0; // radial derivative vanishes at the origin
  // d/dr [-(f2 + f1/r)] = -(f3 + (f2 r - f1)/r^2)
  return -c_phi_ * (b.f3() + (b.f2() * r - b.f1()) / (r * r));
}

void ProfileSet::grad_Phi(double y1, double y2, double& g1, double& g2) const {
  const double r = std::hypot(y1, y2);
  if (!inside(r) || r <= 1e-12) {
    g1 = g2 = 0.0;
    return;
  }
  const double d = dPhi_radial(r);
  g1 = d * y1 / r;
  g2 = d * y2 / r;
}

void ProfileSet::hess_Phi(double y1, double y2, double& h11, double& h12, double& h22) const {
  const double r = std::hypot(y1, y2);
  if (!inside(r)) {
    h11 = h12 = h22 = 0.0;
    return;
  }
  const double f2 = d2Phi_radial(r);
  if (r <= 1e-9) {
    h11 = h22 = f2;
    h12 = 0.0;
    return;
  }
  const double f1r = dPhi_radial(r) / r;
  const double c1 = y1 / r, c2 = y2 / r;
  h11 = f2 * c1 * c1 + f1r * c2 * c2;
  h22 = f2 * c2 * c2 + f1r * c1 * c1;
  h12 = (f2 - f1r) * c1 * c2;
}

void ProfileSet::grad_phi(double y1, double y2, double& g1, double& g2) const {
  const double r = std::hypot(y1, y2);
  if (!inside(r) || r <= 1e-12) {
    g1 = g2 = 0.0;
    return;
  }
  const double d = dphi_radial(r);
  g1 = d * y1 / r;
  g2 = d * y2 / r;
}

double ProfileSet::psi_norm_residual() const {
  const double v = integrate_1d([this](double z) { return psi(z) * psi(z); }) / kTwoPi;
  return std::abs(v - 1.0);
}

double ProfileSet::phi_norm_residual() const {
  const double v = integrate_disk([this](double a, double b) { return phi(a, b) * phi(a, b); }) /
                   (kTwoPi * kTwoPi);
  return std::abs(v - 1.0);
}

double ProfileSet::psi_mean() const {
  return integrate_1d([this](double z) { return psi(z); });
}

double ProfileSet::phi_mean() const {
  return integrate_disk([this](double a, double b) { return phi(a, b); });
}

double ProfileSet::integrate_1d(const std::function<double(double)>& f) const {
  const int n = quad_n_;
  const double h = 2.0 / n;
  return h * det_sum(static_cast<std::size_t>(n), [&](std::size_t i) {
    return f(-1.0 + (static_cast<double>(i) + 0.5) * h); // midpoint, endpoints avoided
  });
}

double ProfileSet::integrate_disk(const std::function<double(double, double)>& f) const {
  const int n = quad_n_;
  const double h = 2.0 / n;
  return h * h * det_sum(static_cast<std::size_t>(n) * n, [&](std::size_t idx) {
    const int i = static_cast<int>(idx / n);
    const int j = static_cast<int>(idx % n);
    const double a = -1.0 + (i + 0.5) * h;
    const double b = -1.0 + (j + 0.5) * h;
    return a * a + b * b < 1.0 ? f(a, b) : 0.0;
  });
}

} // namespace jetflow
