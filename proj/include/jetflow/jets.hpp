#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include "jetflow/frame.hpp"
#include "jetflow/profiles.hpp"

namespace jetflow {

// Frequency scales of one jet generation. For lambda = k^7 the relations
// r_perp = lambda^{-6/7}, r_par = lambda^{-4/7}, mu = lambda^{9/7} are exact
// powers of k and big_r = r_perp * lambda = k is an integer, which keeps the
// periodised profiles honest trigonometric objects on the torus.
struct JetScales {
  double lambda = 0.0;
  std::int64_t big_r = 1; // r_perp * lambda, integer
  double r_perp = 0.0;
  double r_par = 0.0;
  double mu = 0.0;

  static JetScales seventh_power(std::int64_t k);
  // nearest admissible scales for a lambda that is not a 7th power: big_r is
  // rounded so r_perp * lambda stays an integer; r_par and mu keep the exact
  // exponents. Used only by desk-scale iterate ladders.
  static JetScales surrogate(double lambda);
};

struct JetVec {
  double v[3] = {0, 0, 0};
};

// one Fourier mode of a jet-borne factor field
struct LatticeMode {
  std::array<std::int64_t, 3> freq;
  // coefficient per component at t = 0 (scalar uses [0], vector [0..2], tensor [0..8])
  std::array<std::complex<double>, 9> coeff;
  int ncomp = 1;
  double omega = 0.0; // time phase rate: coeff(t) = coeff * exp(i omega t)
};

enum class JetField {
  W,          // vector: xi psi phi
  Wc,         // vector: incompressibility corrector
  V,          // vector potential
  curlV,      // vector
  psi2phi2,   // scalar: psi^2 phi^2
  WW,         // tensor: W (x) W = xi xi^T psi^2 phi^2
};

class JetFamily {
public:
  JetFamily(const GeometricFrame& frame, const ProfileSet& profiles, JetScales scales,
            int placement_budget = 4000);

  const GeometricFrame& frame() const { return *frame_; }
  const ProfileSet& profiles() const { return *prof_; }
  const JetScales& scales() const { return s_; }
  const TubePlacement& placement() const { return place_; }
  int n_dirs() const { return frame_->size(); }
  double freq_factor() const { return nrl_; } // n_star * r_perp * lambda
  double tube_radius() const;                 // (r_par + r_perp) / (n_star r_perp lambda)

  // frame coordinates: u = nrl (x.xi + mu t), y = nrl (x - alpha).(A, C)
  void coords(int i, double t, const double x[3], double& u, double& y1, double& y2) const;
  // a point with prescribed frame coordinates (inverse of coords at t)
  void point_at(int i, double t, double u, double y1, double y2, double x[3]) const;

  // periodized profile factors (2pi-periodic arguments)
  double psi_p(double u, int deriv = 0) const;
  double phi_p(double y1, double y2) const;
  double Phi_p(double y1, double y2) const;

  // exact field evaluations
  JetVec W(int i, double t, const double x[3]) const;
  JetVec Wc(int i, double t, const double x[3]) const;
  JetVec V(int i, double t, const double x[3]) const;
  JetVec curlV(int i, double t, const double x[3]) const;
  // via second derivatives of Phi (independent of the W/Wc formulas)
  JetVec curl_curl_V(int i, double t, const double x[3]) const;
  double psi_xi(int i, double t, const double x[3]) const;
  double phi_xi(int i, const double x[3]) const;
  double div_W_tensor_W_row(int i, double t, const double x[3], double out[3]) const; // div(W (x) W)
  void dt_psi2phi2_xi(int i, double t, const double x[3], double out[3]) const;       // exact time derivative

  bool in_tube(int i, const double x[3], double pad = 0.0) const;

  // --- separable norms over T^3 (paper convention) ---
  // || d^deriv psi_(xi)^power ||_{L^p}, time-uniform (shift invariant)
  double psi_lp(double p, int deriv = 0, int power = 1) const;
  double phi_lp(double p, int deriv = 0, int power = 1) const;  // deriv = |grad| magnitude order (0/1)
  double Phi_lp(double p, int deriv = 0, int power = 1) const;
  double W_lp(double p) const;
  double Wc_lp(double p) const;
  double V_lp(double p) const;
  double mean_psi2phi2() const; // mean over T^3 of psi^2 phi^2 (should be (2pi)^{-3} * ||W||^2 = (2pi)^{-3})

  // --- exact lattice spectra ---
  // all modes of the given factor field with |freq| <= band (plus the j,m
  // truncation implied by it); phases include the tube offsets
  std::vector<LatticeMode> lattice_modes(int i, JetField which, double band) const;

private:
  const GeometricFrame* frame_;
  const ProfileSet* prof_;
  JetScales s_;
  TubePlacement place_;
  double nrl_ = 0.0; // n_star * r_perp * lambda = n_star * big_r
  struct DirGeom {
    double xi[3], a[3], c[3];
    std::int64_t nxi[3], na[3], nc[3]; // n_star-scaled integer frame
    double alpha[3];
    double phase1 = 0.0, phase2 = 0.0; // nrl * alpha.(A, C)
  };
  std::vector<DirGeom> g_;

  double ft1d(int fnid, double omega) const;             // unit 1-D profile FT (cached)
  std::complex<double> ft2d(int fnid, double k1, double k2) const; // unit 2-D profile FT (cached)
};

// log-log fitted exponent of a jet quantity against lambda over several k,
// with the predicted exponent; used for the scaling battery
struct ScalingFit {
  double fitted = 0.0;
  double predicted = 0.0;
  std::vector<double> lambdas;
  std::vector<double> values;
};

enum class JetQuantity { psiL1, psiL2, psiL4, phiL1, phiL2, phiL4, W_L1, W_L2, W_L4, Wc_L2, V_L2, grad_psi_ratio };

ScalingFit scaling_regression(const GeometricFrame& frame, const ProfileSet& prof,
                              const std::vector<std::int64_t>& ks, JetQuantity q);

// relative L2 residual of div(W (x) W) = mu^{-1} dt(psi^2 phi^2 xi) with the
// time derivative by central differences at step dt (spatial side exact)
double oscillation_residual(const JetFamily& jets, int i, double t, double dt);

} // namespace jetflow
