#include "jetflow/jets.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "jetflow/grid.hpp"
#include "jetflow/operators.hpp"
#include "jetflow/parallel.hpp"

namespace jetflow {

namespace {

// The periodised rescaled profiles carry torus-normalizing factors
//   psi_r(y) = (2pi)^{-1/2} r^{-1/2} psi(y/r),
//   phi_r(y) = (2pi)^{-1}   r^{-1}   phi(y/r),   same for Phi,
// so that mean_T(psi_r^2) = (2pi)^{-1}, mean_{T^2}(phi_r^2) = (2pi)^{-2} and
// hence ||W||_{L2(T^3)} = 1 exactly, which is what the amplitude prefactor
// (2pi)^{3/2} compensates in the stress identity.
const double kPsiFac = 1.0 / std::sqrt(kTwoPi);
const double kPhiFac = 1.0 / kTwoPi;

double wrap_pi(double x) {
  // wrap to [-pi, pi)
  double y = std::remainder(x, kTwoPi);
  if (y >= M_PI) y -= kTwoPi;
  return y;
}

} // namespace

JetScales JetScales::seventh_power(std::int64_t k) {
  if (k < 2) throw std::domain_error("JetScales: k >= 2 required");
  JetScales s;
  const double kd = static_cast<double>(k);
  s.big_r = k;
  s.lambda = std::pow(kd, 7);
  s.r_perp = 1.0 / std::pow(kd, 6);
  s.r_par = 1.0 / std::pow(kd, 4);
  s.mu = std::pow(kd, 9);
  return s;
}

JetScales JetScales::surrogate(double lambda) {
  if (lambda < 2.0) throw std::domain_error("JetScales: lambda >= 2 required");
  JetScales s;
  s.lambda = lambda;
  s.big_r = std::max<std::int64_t>(1, std::llround(std::pow(lambda, 1.0 / 7.0)));
  s.r_perp = static_cast<double>(s.big_r) / lambda;
  s.r_par = std::pow(lambda, -4.0 / 7.0);
  s.mu = std::pow(lambda, 9.0 / 7.0);
  return s;
}

JetFamily::JetFamily(const GeometricFrame& frame, const ProfileSet& profiles, JetScales scales,
                     int placement_budget)
    : frame_(&frame), prof_(&profiles), s_(scales) {
  nrl_ = static_cast<double>(frame.n_star()) * static_cast<double>(s_.big_r);
  place_ = frame.place_tubes(s_.lambda, frame.n_star() * s_.big_r, tube_radius(), placement_budget);
  g_.resize(frame.size());
  for (int i = 0; i < frame.size(); ++i) {
    const Direction& d = frame.directions()[i];
    DirGeom& gg = g_[i];
    for (int c = 0; c < 3; ++c) {
      gg.xi[c] = d.xi[c].value();
      gg.a[c] = d.a[c].value();
      gg.c[c] = d.cross[c].value();
      gg.nxi[c] = d.xi[c].num * (frame.n_star() / d.xi[c].den);
      gg.na[c] = d.a[c].num * (frame.n_star() / d.a[c].den);
      gg.nc[c] = d.cross[c].num * (frame.n_star() / d.cross[c].den);
      gg.alpha[c] = place_.alpha[i][c];
    }
    gg.phase1 = nrl_ * (gg.alpha[0] * gg.a[0] + gg.alpha[1] * gg.a[1] + gg.alpha[2] * gg.a[2]);
    gg.phase2 = nrl_ * (gg.alpha[0] * gg.c[0] + gg.alpha[1] * gg.c[1] + gg.alpha[2] * gg.c[2]);
  }
}

double JetFamily::tube_radius() const { return (s_.r_par + s_.r_perp) / (frame_->n_star() * s_.r_perp * s_.lambda); }

void JetFamily::coords(int i, double t, const double x[3], double& u, double& y1, double& y2) const {
  const DirGeom& gg = g_[i];
  const double xd = x[0] * gg.xi[0] + x[1] * gg.xi[1] + x[2] * gg.xi[2];
  u = nrl_ * (xd + s_.mu * t);
  y1 = nrl_ * (x[0] * gg.a[0] + x[1] * gg.a[1] + x[2] * gg.a[2]) - gg.phase1;
  y2 = nrl_ * (x[0] * gg.c[0] + x[1] * gg.c[1] + x[2] * gg.c[2]) - gg.phase2;
}

void JetFamily::point_at(int i, double t, double u, double y1, double y2, double x[3]) const {
  // x = c1 xi + (alpha_perp + c2 A + c3 C); alpha enters only the transverse
  // phases, so the xi component is free of it
  const DirGeom& gg = g_[i];
  const double adotxi = gg.alpha[0] * gg.xi[0] + gg.alpha[1] * gg.xi[1] + gg.alpha[2] * gg.xi[2];
  const double c1 = u / nrl_ - s_.mu * t;
  const double c2 = y1 / nrl_;
  const double c3 = y2 / nrl_;
  for (int c = 0; c < 3; ++c)
    x[c] = (gg.alpha[c] - adotxi * gg.xi[c]) + c1 * gg.xi[c] + c2 * gg.a[c] + c3 * gg.c[c];
}

double JetFamily::psi_p(double u, int deriv) const {
  const double z = wrap_pi(u) / s_.r_par;
  if (std::abs(z) >= 1.0) return 0.0;
  const double scale = kPsiFac * std::pow(s_.r_par, -0.5 - deriv);
  switch (deriv) {
    case 0: return scale * prof_->psi(z);
    case 1: return scale * prof_->dpsi(z);
    case 2: return scale * prof_->d2psi(z);
    case 3: return scale * prof_->d3psi(z);
    default: throw std::invalid_argument("psi_p: derivative order too high");
  }
}

double JetFamily::phi_p(double y1, double y2) const {
  const double z1 = wrap_pi(y1) / s_.r_perp;
  const double z2 = wrap_pi(y2) / s_.r_perp;
  if (z1 * z1 + z2 * z2 >= 1.0) return 0.0;
  return kPhiFac / s_.r_perp * prof_->phi(z1, z2);
}

double JetFamily::Phi_p(double y1, double y2) const {
  const double z1 = wrap_pi(y1) / s_.r_perp;
  const double z2 = wrap_pi(y2) / s_.r_perp;
  if (z1 * z1 + z2 * z2 >= 1.0) return 0.0;
  return kPhiFac / s_.r_perp * prof_->Phi(z1, z2);
}

JetVec JetFamily::W(int i, double t, const double x[3]) const {
  double u, y1, y2;
  coords(i, t, x, u, y1, y2);
  const double v = psi_p(u) * phi_p(y1, y2);
  JetVec out;
  for (int c = 0; c < 3; ++c) out.v[c] = g_[i].xi[c] * v;
  return out;
}

double JetFamily::psi_xi(int i, double t, const double x[3]) const {
  double u, y1, y2;
  coords(i, t, x, u, y1, y2);
  return psi_p(u);
}

double JetFamily::phi_xi(int i, const double x[3]) const {
  double u, y1, y2;
  coords(i, 0.0, x, u, y1, y2);
  return phi_p(y1, y2);
}

JetVec JetFamily::Wc(int i, double t, const double x[3]) const {
  double u, y1, y2;
  coords(i, t, x, u, y1, y2);
  JetVec out;
  const double z1 = wrap_pi(y1) / s_.r_perp;
  const double z2 = wrap_pi(y2) / s_.r_perp;
  if (z1 * z1 + z2 * z2 >= 1.0) return out;
  double g1, g2;
  prof_->grad_Phi(z1, z2, g1, g2);
  const double dpsi = psi_p(u, 1);
  const double fac = kPhiFac; // r_perp^2 from nrl^2/(n^2 lambda^2) cancels the Phi rescale
  for (int c = 0; c < 3; ++c) out.v[c] = fac * dpsi * (g1 * g_[i].a[c] + g2 * g_[i].c[c]);
  return out;
}

JetVec JetFamily::V(int i, double t, const double x[3]) const {
  double u, y1, y2;
  coords(i, t, x, u, y1, y2);
  const double nl = static_cast<double>(frame_->n_star()) * s_.lambda;
  const double v = psi_p(u) * Phi_p(y1, y2) / (nl * nl);
  JetVec out;
  for (int c = 0; c < 3; ++c) out.v[c] = g_[i].xi[c] * v;
  return out;
}

JetVec JetFamily::curlV(int i, double t, const double x[3]) const {
  double u, y1, y2;
  coords(i, t, x, u, y1, y2);
  JetVec out;
  const double z1 = wrap_pi(y1) / s_.r_perp;
  const double z2 = wrap_pi(y2) / s_.r_perp;
  if (z1 * z1 + z2 * z2 >= 1.0) return out;
  double g1, g2;
  prof_->grad_Phi(z1, z2, g1, g2);
  const double nl = static_cast<double>(frame_->n_star()) * s_.lambda;
  // curl V = (nrl / (n lambda)^2) psi [Phi_{,2} A - Phi_{,1} C], with the
  // profile gradient rescale 1/r_perp^2 and the torus factor
  const double fac = nrl_ / (nl * nl) * kPhiFac / (s_.r_perp * s_.r_perp) * psi_p(u);
  for (int c = 0; c < 3; ++c) out.v[c] = fac * (g2 * g_[i].a[c] - g1 * g_[i].c[c]);
  return out;
}

JetVec JetFamily::curl_curl_V(int i, double t, const double x[3]) const {
  double u, y1, y2;
  coords(i, t, x, u, y1, y2);
  JetVec out;
  const double z1 = wrap_pi(y1) / s_.r_perp;
  const double z2 = wrap_pi(y2) / s_.r_perp;
  if (z1 * z1 + z2 * z2 >= 1.0) return out;
  double g1, g2, h11, h12, h22;
  prof_->grad_Phi(z1, z2, g1, g2);
  prof_->hess_Phi(z1, z2, h11, h12, h22);
  // curl curl V = r_perp^2 [ psi' grad_y Phi_r - psi (Lap_y Phi_r) xi ],
  // assembled from the unit-profile Hessian rather than from phi = -Lap Phi
  const double dpsi = psi_p(u, 1);
  const double psi0 = psi_p(u);
  const double grad_fac = kPhiFac;                                // r_perp^2 * r_perp^{-2} rescale
  const double lap_fac = kPhiFac / s_.r_perp;                     // r_perp^2 * r_perp^{-3}
  for (int c = 0; c < 3; ++c)
    out.v[c] = grad_fac * dpsi * (g1 * g_[i].a[c] + g2 * g_[i].c[c]) -
               lap_fac * psi0 * (h11 + h22) * g_[i].xi[c];
  return out;
}

double JetFamily::div_W_tensor_W_row(int i, double t, const double x[3], double out[3]) const {
  double u, y1, y2;
  coords(i, t, x, u, y1, y2);
  const double phi2 = phi_p(y1, y2) * phi_p(y1, y2);
  const double val = nrl_ * 2.0 * psi_p(u) * psi_p(u, 1) * phi2;
  for (int c = 0; c < 3; ++c) out[c] = g_[i].xi[c] * val;
  return val;
}

void JetFamily::dt_psi2phi2_xi(int i, double t, const double x[3], double out[3]) const {
  double u, y1, y2;
  coords(i, t, x, u, y1, y2);
  const double phi2 = phi_p(y1, y2) * phi_p(y1, y2);
  const double val = nrl_ * s_.mu * 2.0 * psi_p(u) * psi_p(u, 1) * phi2;
  for (int c = 0; c < 3; ++c) out[c] = g_[i].xi[c] * val;
}

bool JetFamily::in_tube(int i, const double x[3], double pad) const {
  double u, y1, y2;
  coords(i, 0.0, x, u, y1, y2);
  const double z1 = wrap_pi(y1) / s_.r_perp;
  const double z2 = wrap_pi(y2) / s_.r_perp;
  return z1 * z1 + z2 * z2 < (1.0 + pad) * (1.0 + pad);
}

// --- separable norms -------------------------------------------------------

namespace {

// unit-level function (psi^power)^(deriv)
double psi_pow_deriv(const ProfileSet& pr, double z, int power, int deriv) {
  const double p0 = pr.psi(z);
  const double p1 = pr.dpsi(z);
  const double p2 = pr.d2psi(z);
  if (power == 1) {
    switch (deriv) {
      case 0: return p0;
      case 1: return p1;
      case 2: return p2;
      case 3: return pr.d3psi(z);
    }
  }
  if (power == 2) {
    switch (deriv) {
      case 0: return p0 * p0;
      case 1: return 2 * p0 * p1;
      case 2: return 2 * (p1 * p1 + p0 * p2);
    }
  }
  if (deriv == 0) return std::pow(p0, power);
  throw std::invalid_argument("psi_pow_deriv: unsupported (power, deriv)");
}

} // namespace

double JetFamily::psi_lp(double p, int deriv, int power) const {
  // mean over a u-period of |(psi_r^power)^(deriv)|^p times the space factor
  // nrl^deriv (the xi direction is unit); returns the T^3 norm
  const double unit = prof_->integrate_1d([&](double z) {
    return std::pow(std::abs(psi_pow_deriv(*prof_, z, power, deriv)), p);
  });
  const double scale =
      std::pow(kPsiFac, power * p) * std::pow(s_.r_par, 1.0 - p * (0.5 * power + deriv));
  const double mean = unit * scale / kTwoPi;
  return std::pow(kTwoPi, 3.0 / p) * std::pow(mean, 1.0 / p) * std::pow(nrl_, deriv);
}

double JetFamily::phi_lp(double p, int deriv, int power) const {
  double unit;
  if (deriv == 0) {
    unit = prof_->integrate_disk(
        [&](double a, double b) { return std::pow(std::abs(std::pow(prof_->phi(a, b), power)), p); });
  } else if (deriv == 1 && power == 1) {
    unit = prof_->integrate_disk([&](double a, double b) {
      double g1, g2;
      prof_->grad_phi(a, b, g1, g2);
      return std::pow(std::hypot(g1, g2), p);
    });
  } else {
    throw std::invalid_argument("phi_lp: unsupported (power, deriv)");
  }
  const double scale =
      std::pow(kPhiFac, power * p) * std::pow(s_.r_perp, 2.0 - p * (power + deriv));
  const double mean = unit * scale / (kTwoPi * kTwoPi);
  return std::pow(kTwoPi, 3.0 / p) * std::pow(mean, 1.0 / p) * std::pow(nrl_, deriv);
}

double JetFamily::Phi_lp(double p, int deriv, int power) const {
  if (deriv != 0 || power != 1) throw std::invalid_argument("Phi_lp: only plain norm supported");
  const double unit =
      prof_->integrate_disk([&](double a, double b) { return std::pow(std::abs(prof_->Phi(a, b)), p); });
  const double scale = std::pow(kPhiFac, p) * std::pow(s_.r_perp, 2.0 - p);
  const double mean = unit * scale / (kTwoPi * kTwoPi);
  return std::pow(kTwoPi, 3.0 / p) * std::pow(mean, 1.0 / p);
}

double JetFamily::W_lp(double p) const {
  const double mpsi = std::pow(psi_lp(p), p) / std::pow(kTwoPi, 3.0);
  const double mphi = std::pow(phi_lp(p), p) / std::pow(kTwoPi, 3.0);
  return std::pow(kTwoPi, 3.0 / p) * std::pow(mpsi * mphi, 1.0 / p);
}

double JetFamily::Wc_lp(double p) const {
  // |Wc| = |psi'_r(u)| * kPhiFac * |grad Phi(unit)(y/r_perp)|
  const double mpsi = std::pow(psi_lp(p, 1), p) / std::pow(kTwoPi, 3.0) / std::pow(nrl_, p);
  const double unit = prof_->integrate_disk([&](double a, double b) {
    double g1, g2;
    prof_->grad_Phi(a, b, g1, g2);
    return std::pow(std::hypot(g1, g2), p);
  });
  const double mgrad = std::pow(kPhiFac, p) * s_.r_perp * s_.r_perp * unit / (kTwoPi * kTwoPi);
  return std::pow(kTwoPi, 3.0 / p) * std::pow(mpsi * mgrad, 1.0 / p);
}

double JetFamily::V_lp(double p) const {
  const double nl = static_cast<double>(frame_->n_star()) * s_.lambda;
  const double mpsi = std::pow(psi_lp(p), p) / std::pow(kTwoPi, 3.0);
  const double mPhi = std::pow(Phi_lp(p), p) / std::pow(kTwoPi, 3.0);
  return std::pow(kTwoPi, 3.0 / p) * std::pow(mpsi * mPhi, 1.0 / p) / (nl * nl);
}

double JetFamily::mean_psi2phi2() const {
  const double mpsi = std::pow(psi_lp(2.0), 2.0) / std::pow(kTwoPi, 3.0);
  const double mphi = std::pow(phi_lp(2.0), 2.0) / std::pow(kTwoPi, 3.0);
  return mpsi * mphi;
}

// --- lattice spectra -------------------------------------------------------

namespace {

// cache for unit-profile Fourier data; keyed by function id and a frequency
// quantised to 1e-9 (the callers only ever use a discrete set)
struct FtCache {
  std::mutex mtx;
  std::map<std::pair<int, long long>, std::complex<double>> vals;
};
FtCache& ft_cache() {
  static FtCache c;
  return c;
}

long long quant(double x) { return static_cast<long long>(std::llround(x * 1e9)); }

} // namespace

double JetFamily::ft1d(int fnid, double omega) const {
  // (1/2pi) int f(z) e^{-i omega z} dz over [-1,1]; our 1-D profiles are odd
  // or even, callers fold the symmetry themselves. fnid: 0 psi, 1 psi^2,
  // 2 2*psi*psi' (= (psi^2)'), 3 psi'.
  auto& c = ft_cache();
  const auto key = std::make_pair(fnid, quant(omega));
  {
    std::lock_guard<std::mutex> lock(c.mtx);
    auto it = c.vals.find(key);
    if (it != c.vals.end()) return it->second.real();
  }
  const double val = prof_->integrate_1d([&](double z) {
    double f = 0.0;
    switch (fnid) {
      case 0: f = prof_->psi(z); break;
      case 1: f = prof_->psi(z) * prof_->psi(z); break;
      case 2: f = 2.0 * prof_->psi(z) * prof_->dpsi(z); break;
      case 3: f = prof_->dpsi(z); break;
    }
    return f * std::cos(omega * z); // even part; odd part handled by caller sign
  });
  const double val_odd = prof_->integrate_1d([&](double z) {
    double f = 0.0;
    switch (fnid) {
      case 0: f = prof_->psi(z); break;
      case 1: f = prof_->psi(z) * prof_->psi(z); break;
      case 2: f = 2.0 * prof_->psi(z) * prof_->dpsi(z); break;
      case 3: f = prof_->dpsi(z); break;
    }
    return f * std::sin(omega * z);
  });
  (void)val_odd;
  std::lock_guard<std::mutex> lock(c.mtx);
  c.vals[key] = {val, val_odd};
  return val;
}

std::complex<double> JetFamily::ft2d(int fnid, double k1, double k2) const {
  // int_disk f e^{-i k.z} d^2z through radial Hankel quadratures:
  // radial f: 2pi int f(s) J0(|k|s) s ds; gradient components f(s) z_a/s:
  // -i (k_a/|k|) 2pi int f(s) J1(|k|s) s ds. fnid: 0 phi, 1 Phi, 2 phi^2,
  // 3 dPhi_1, 4 dPhi_2.
  const double kk = std::hypot(k1, k2);
  const bool grad = fnid >= 3;
  const int radial_id = grad ? 203 : 200 + fnid;
  auto& c = ft_cache();
  const auto key = std::make_pair(radial_id, quant(kk));
  std::complex<double> hankel;
  bool hit = false;
  {
    std::lock_guard<std::mutex> lock(c.mtx);
    auto it = c.vals.find(key);
    if (it != c.vals.end()) {
      hankel = it->second;
      hit = true;
    }
  }
  if (!hit) {
    const int n = prof_->quadrature_n();
    const double h = 1.0 / n;
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
      const double r = (i + 0.5) * h;
      double f = 0.0;
      switch (fnid) {
        case 0: f = prof_->phi_radial(r); break;
        case 1: f = prof_->Phi_radial(r); break;
        case 2: f = prof_->phi_radial(r) * prof_->phi_radial(r); break;
        default: f = prof_->dPhi_radial(r); break;
      }
      const double bessel = grad ? std::cyl_bessel_j(1.0, kk * r) : std::cyl_bessel_j(0.0, kk * r);
      s += f * bessel * r * h;
    }
    hankel = kTwoPi * s;
    std::lock_guard<std::mutex> lock(c.mtx);
    c.vals[key] = hankel;
  }
  if (!grad) return hankel;
  if (kk < 1e-14) return {0.0, 0.0};
  const double ang = (fnid == 3 ? k1 : k2) / kk;
  return std::complex<double>(0.0, -ang) * hankel;
}

std::vector<LatticeMode> JetFamily::lattice_modes(int i, JetField which, double band) const {
  std::vector<LatticeMode> out;
  const DirGeom& gg = g_[i];
  const double step = static_cast<double>(s_.big_r) * frame_->n_star(); // |freq| = step*sqrt(j^2+|m|^2)
  const int jm_max = static_cast<int>(std::floor(band / step));
  if (jm_max < 0) return out;

  // 1-D coefficient of the psi-type factor at series index j:
  //   c_j = kPsiFac^pw * r^{1 - pw/2 ... } handled per kind below
  auto psi_coeff = [&](int fnid, int power_scale, int j) -> std::complex<double> {
    // coefficient of the 2pi-periodic function f_r(u) at e^{i j u}
    // f_r(u) = pref * F(u/r), pref = kPsiFac^pw * r^{-pw/2}
    const double r = s_.r_par;
    const double pref = std::pow(kPsiFac, power_scale) * std::pow(r, -0.5 * power_scale);
    // (1/2pi) int f_r e^{-iju} du = pref * (r/2pi) int F(z) e^{-i j r z} dz
    const double om = j * r;
    // reuse ft1d cache: it stores cos and sin integrals
    ft1d(fnid, om);
    auto& c = ft_cache();
    std::lock_guard<std::mutex> lock(c.mtx);
    const auto v = c.vals[std::make_pair(fnid, quant(om))];
    return pref * (r / kTwoPi) * std::complex<double>(v.real(), -v.imag());
  };
  auto phi_coeff = [&](int fnid, int power_scale, int m1, int m2) -> std::complex<double> {
    const double r = s_.r_perp;
    const double pref = std::pow(kPhiFac, power_scale) * std::pow(r, -power_scale);
    const std::complex<double> unit = ft2d(fnid, m1 * r, m2 * r);
    return pref * (r * r / (kTwoPi * kTwoPi)) * unit;
  };

  for (int j = -jm_max; j <= jm_max; ++j)
    for (int m1 = -jm_max; m1 <= jm_max; ++m1)
      for (int m2 = -jm_max; m2 <= jm_max; ++m2) {
        if (j * j + m1 * m1 + m2 * m2 > jm_max * jm_max) continue;
        LatticeMode mode;
        for (int c = 0; c < 3; ++c)
          mode.freq[c] = s_.big_r * (j * gg.nxi[c] + m1 * gg.na[c] + m2 * gg.nc[c]);
        const double f2 = static_cast<double>(mode.freq[0]) * mode.freq[0] +
                          static_cast<double>(mode.freq[1]) * mode.freq[1] +
                          static_cast<double>(mode.freq[2]) * mode.freq[2];
        if (f2 > band * band) continue;
        mode.omega = j * nrl_ * s_.mu;
        const std::complex<double> off =
            std::polar(1.0, -(m1 * gg.phase1 + m2 * gg.phase2));
        std::complex<double> cj, dm;
        switch (which) {
          case JetField::W:
            cj = psi_coeff(0, 1, j);
            dm = phi_coeff(0, 1, m1, m2);
            mode.ncomp = 3;
            for (int c = 0; c < 3; ++c) mode.coeff[c] = gg.xi[c] * cj * dm * off;
            break;
          case JetField::V: {
            const double nl = static_cast<double>(frame_->n_star()) * s_.lambda;
            cj = psi_coeff(0, 1, j);
            dm = phi_coeff(1, 1, m1, m2);
            mode.ncomp = 3;
            for (int c = 0; c < 3; ++c) mode.coeff[c] = gg.xi[c] * cj * dm * off / (nl * nl);
            break;
          }
          case JetField::Wc: {
            cj = psi_coeff(3, 1, j);
            cj /= s_.r_par; // extra derivative scale r^{-1}
            const std::complex<double> d1 = phi_coeff(3, 1, m1, m2);
            const std::complex<double> d2 = phi_coeff(4, 1, m1, m2);
            mode.ncomp = 3;
            for (int c = 0; c < 3; ++c)
              mode.coeff[c] = cj * (d1 * gg.a[c] + d2 * gg.c[c]) * off * s_.r_perp;
            // kPhiFac and the 1/r_perp^2 gradient rescale: phi_coeff used the
            // plain Phi scaling, fix the gradient factor here
            break;
          }
          case JetField::curlV: {
            const double nl = static_cast<double>(frame_->n_star()) * s_.lambda;
            cj = psi_coeff(0, 1, j);
            const std::complex<double> d1 = phi_coeff(3, 1, m1, m2);
            const std::complex<double> d2 = phi_coeff(4, 1, m1, m2);
            const double fac = nrl_ / (nl * nl) / s_.r_perp;
            mode.ncomp = 3;
            for (int c = 0; c < 3; ++c)
              mode.coeff[c] = fac * cj * (d2 * gg.a[c] - d1 * gg.c[c]) * off;
            break;
          }
          case JetField::psi2phi2:
            cj = psi_coeff(1, 2, j);
            dm = phi_coeff(2, 2, m1, m2);
            mode.ncomp = 1;
            mode.coeff[0] = cj * dm * off;
            break;
          case JetField::WW:
            cj = psi_coeff(1, 2, j);
            dm = phi_coeff(2, 2, m1, m2);
            mode.ncomp = 9;
            for (int a = 0; a < 3; ++a)
              for (int b = 0; b < 3; ++b) mode.coeff[3 * a + b] = gg.xi[a] * gg.xi[b] * cj * dm * off;
            break;
        }
        out.push_back(mode);
      }
  return out;
}

// --- batteries -------------------------------------------------------------

ScalingFit scaling_regression(const GeometricFrame& frame, const ProfileSet& prof,
                              const std::vector<std::int64_t>& ks, JetQuantity q) {
  if (ks.size() < 3) throw std::domain_error("scaling_regression: need >= 3 scales");
  ScalingFit fit;
  auto pred = [&](JetQuantity qq) {
    auto wexp = [](double p) { return (6.0 / 7.0) * (1.0 - 2.0 / p) + (4.0 / 7.0) * (0.5 - 1.0 / p); };
    switch (qq) {
      case JetQuantity::psiL1: return (4.0 / 7.0) * (0.5 - 1.0);
      case JetQuantity::psiL2: return 0.0;
      case JetQuantity::psiL4: return (4.0 / 7.0) * (0.5 - 0.25);
      case JetQuantity::phiL1: return (6.0 / 7.0) * (1.0 - 2.0);
      case JetQuantity::phiL2: return 0.0;
      case JetQuantity::phiL4: return (6.0 / 7.0) * (1.0 - 0.5);
      case JetQuantity::W_L1: return wexp(1.0);
      case JetQuantity::W_L2: return 0.0;
      case JetQuantity::W_L4: return wexp(4.0);
      case JetQuantity::Wc_L2: return -2.0 / 7.0;
      case JetQuantity::V_L2: return -2.0;
      case JetQuantity::grad_psi_ratio: return 5.0 / 7.0;
    }
    return 0.0;
  };
  fit.predicted = pred(q);
  for (auto k : ks) {
    JetFamily jets(frame, prof, JetScales::seventh_power(k), 500);
    double v = 0.0;
    switch (q) {
      case JetQuantity::psiL1: v = jets.psi_lp(1.0); break;
      case JetQuantity::psiL2: v = jets.psi_lp(2.0); break;
      case JetQuantity::psiL4: v = jets.psi_lp(4.0); break;
      case JetQuantity::phiL1: v = jets.phi_lp(1.0); break;
      case JetQuantity::phiL2: v = jets.phi_lp(2.0); break;
      case JetQuantity::phiL4: v = jets.phi_lp(4.0); break;
      case JetQuantity::W_L1: v = jets.W_lp(1.0); break;
      case JetQuantity::W_L2: v = jets.W_lp(2.0); break;
      case JetQuantity::W_L4: v = jets.W_lp(4.0); break;
      case JetQuantity::Wc_L2: v = jets.Wc_lp(2.0); break;
      case JetQuantity::V_L2: v = jets.V_lp(2.0); break;
      case JetQuantity::grad_psi_ratio: v = jets.psi_lp(2.0, 1) / jets.psi_lp(2.0); break;
    }
    fit.lambdas.push_back(jets.scales().lambda);
    fit.values.push_back(v);
  }
  fit.fitted = loglog_slope(fit.lambdas, fit.values);
  return fit;
}

double oscillation_residual(const JetFamily& jets, int i, double t, double dt) {
  // Both sides share the factor xi phi^2(y), so the relative L2 residual over
  // the torus equals the relative residual on the u line. The spatial
  // divergence is evaluated spectrally through the exact Fourier series of
  // the periodised psi^2 factor (coefficients by profile quadrature, tail at
  // machine level); the time derivative is a genuine central difference.
  const int nu = 8192;
  const double r = jets.scales().r_par;
  const double mu = jets.scales().mu;
  const double nrl = jets.freq_factor();
  const ProfileSet& prof = jets.profiles();

  // c_j of psi_r^2(u) = (1/(4pi^2)) int psi^2(z) cos(j r z) dz (even profile)
  const int jmax = static_cast<int>(std::ceil(80.0 / r));
  std::vector<double> cj(jmax + 1);
  for (int j = 0; j <= jmax; ++j) {
    const double om = j * r;
    cj[j] = prof.integrate_1d([&](double z) { return prof.psi(z) * prof.psi(z) * std::cos(om * z); }) /
            (kTwoPi * kTwoPi);
  }

  const double delta = nrl * mu * dt; // u-shift of one time step
  double num = 0.0, den = 0.0;
  for (int s = 0; s < nu; ++s) {
    const double u = kTwoPi * s / nu + 0.37; // avoid exact symmetry points
    double dspec = 0.0;
    for (int j = 1; j <= jmax; ++j) dspec += -2.0 * j * cj[j] * std::sin(j * u);
    const double lhs = nrl * dspec; // div(W (x) W) factor
    const double fp = jets.psi_p(u + delta);
    const double fm = jets.psi_p(u - delta);
    const double rhs = (fp * fp - fm * fm) / (2.0 * dt) / mu; // mu^{-1} dt(psi^2) factor
    num += (lhs - rhs) * (lhs - rhs);
    den += rhs * rhs;
  }
  (void)t;
  (void)i;
  return std::sqrt(num / den);
}

} // namespace jetflow
