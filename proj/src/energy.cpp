#include "jetflow/energy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace jetflow {

EnergyProfile EnergyProfile::constant(double value, double e_bar, double e_tilde, double e_under) {
  EnergyProfile p;
  p.f_ = [value](double) { return value; };
  p.df_ = [](double) { return 0.0; };
  p.e_bar_ = e_bar;
  p.e_tilde_ = e_tilde;
  p.e_under_ = e_under;
  return p;
}

EnergyProfile EnergyProfile::affine(double value0, double slope, double L, double e_bar,
                                    double e_tilde, double e_under) {
  EnergyProfile p;
  p.f_ = [=](double t) { return value0 + slope * std::clamp(t, 0.0, L); };
  p.df_ = [=](double t) { return (t <= 0.0 || t >= L) ? 0.0 : slope; };
  p.e_bar_ = e_bar;
  p.e_tilde_ = e_tilde;
  p.e_under_ = e_under;
  return p;
}

EnergyProfile EnergyProfile::tabulated(const std::vector<double>& t, const std::vector<double>& e,
                                       double e_bar, double e_tilde, double e_under) {
  if (t.size() != e.size() || t.size() < 2) throw std::invalid_argument("EnergyProfile: bad table");
  // Fritsch-Carlson style slopes keep the interpolant C^1 without overshoot
  const std::size_t n = t.size();
  std::vector<double> m(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i)
    m[i] = 0.5 * ((e[i + 1] - e[i]) / (t[i + 1] - t[i]) + (e[i] - e[i - 1]) / (t[i] - t[i - 1]));
  m[0] = (e[1] - e[0]) / (t[1] - t[0]);
  m[n - 1] = (e[n - 1] - e[n - 2]) / (t[n - 1] - t[n - 2]);
  auto eval = [t, e, m, n](double x, bool deriv) {
    if (x <= t.front()) return deriv ? 0.0 : e.front();
    if (x >= t.back()) return deriv ? 0.0 : e.back();
    std::size_t i = std::upper_bound(t.begin(), t.end(), x) - t.begin() - 1;
    const double h = t[i + 1] - t[i];
    const double s = (x - t[i]) / h;
    const double h00 = 2 * s * s * s - 3 * s * s + 1, h10 = s * s * s - 2 * s * s + s;
    const double h01 = -2 * s * s * s + 3 * s * s, h11 = s * s * s - s * s;
    if (!deriv) return h00 * e[i] + h10 * h * m[i] + h01 * e[i + 1] + h11 * h * m[i + 1];
    const double d00 = 6 * s * s - 6 * s, d10 = 3 * s * s - 4 * s + 1;
    const double d01 = -6 * s * s + 6 * s, d11 = 3 * s * s - 2 * s;
    return (d00 * e[i] + d01 * e[i + 1]) / h + d10 * m[i] + d11 * m[i + 1];
  };
  EnergyProfile p;
  p.f_ = [eval](double x) { return eval(x, false); };
  p.df_ = [eval](double x) { return eval(x, true); };
  p.e_bar_ = e_bar;
  p.e_tilde_ = e_tilde;
  p.e_under_ = e_under;
  return p;
}

double EnergyProfile::operator()(double t) const { return f_(t); }
double EnergyProfile::derivative(double t) const { return df_(t); }

void EnergyProfile::validate(double L, int samples) const {
  if (!(e_under_ > 4.0)) throw std::domain_error("EnergyProfile: e_under must exceed 4");
  for (int i = 0; i <= samples; ++i) {
    const double t = L * i / samples;
    const double v = f_(t);
    if (v < e_under_ - 1e-12 || v > e_bar_ + 1e-12)
      throw std::domain_error("EnergyProfile: profile leaves [e_under, e_bar] at t=" + std::to_string(t));
    if (std::abs(df_(t)) > e_tilde_ * (1.0 + 1e-6))
      throw std::domain_error("EnergyProfile: |e'| exceeds e_tilde at t=" + std::to_string(t));
  }
}

bool EnergyProfile::same_values(const EnergyProfile& other, double t_lo, double t_hi, int samples,
                                double tol) const {
  for (int i = 0; i <= samples; ++i) {
    const double t = t_lo + (t_hi - t_lo) * i / samples;
    if (std::abs(f_(t) - other.f_(t)) > tol) return false;
  }
  return true;
}

} // namespace jetflow
