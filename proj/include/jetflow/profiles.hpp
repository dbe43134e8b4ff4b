#pragma once

#include <cmath>
#include <functional>

namespace jetflow {

// Building-block profiles for the jets:
//   Phi : R^2 -> R, radial bump c_phi * exp(1/(r^2-1)) on r < 1,
//   phi = -Lap Phi (closed form, not finite differences),
//   psi : R -> R, c_psi * d/dz exp(1/(z^2-1)), odd, zero mean.
// Scales are fixed so that (1/4pi^2) \int_{B_1} phi^2 = 1 and
// (1/2pi) \int psi^2 = 1 after construction.
class ProfileSet {
public:
  explicit ProfileSet(int quadrature_n = 4096);

  int quadrature_n() const { return quad_n_; }
  double c_phi() const { return c_phi_; }
  double c_psi() const { return c_psi_; }

  double psi(double z) const;
  double dpsi(double z) const;
  double d2psi(double z) const;
  double d3psi(double z) const;

  double Phi_radial(double r) const;   // the potential
  double dPhi_radial(double r) const;
  double d2Phi_radial(double r) const;
  double phi_radial(double r) const;   // -Lap Phi
  double dphi_radial(double r) const;

  double Phi(double y1, double y2) const { return Phi_radial(std::hypot(y1, y2)); }
  double phi(double y1, double y2) const { return phi_radial(std::hypot(y1, y2)); }
  // first and second partials of Phi as a function on R^2
  void grad_Phi(double y1, double y2, double& g1, double& g2) const;
  void hess_Phi(double y1, double y2, double& h11, double& h12, double& h22) const;
  void grad_phi(double y1, double y2, double& g1, double& g2) const;

  // residuals of the normalizations, for reporting
  double psi_norm_residual() const;   // |(1/2pi) int psi^2 - 1|
  double phi_norm_residual() const;   // |(1/4pi^2) int phi^2 - 1|
  double psi_mean() const;            // int psi dz
  double phi_mean() const;            // int_{T^2} phi

  // quadratures of unit-profile expressions over the support
  double integrate_1d(const std::function<double(double)>& f) const;         // over [-1,1]
  double integrate_disk(const std::function<double(double, double)>& f) const; // over the unit disk

private:
  int quad_n_;
  double c_phi_ = 1.0;
  double c_psi_ = 1.0;
};

} // namespace jetflow
