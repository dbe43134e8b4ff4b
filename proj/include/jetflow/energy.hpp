#pragma once

#include <functional>
#include <string>
#include <vector>

namespace jetflow {

// Prescribed kinetic energy profile e in C^1_b([0,L]; [e_under, e_bar]),
// extended constant for t < 0 and frozen at e(L) beyond the horizon.
class EnergyProfile {
public:
  static EnergyProfile constant(double value, double e_bar, double e_tilde, double e_under);
  static EnergyProfile affine(double value0, double slope, double L, double e_bar, double e_tilde,
                              double e_under);
  // C^1 monotone-safe cubic Hermite through the samples (t_i, e_i)
  static EnergyProfile tabulated(const std::vector<double>& t, const std::vector<double>& e,
                                 double e_bar, double e_tilde, double e_under);

  double operator()(double t) const;
  double derivative(double t) const;

  double e_bar() const { return e_bar_; }
  double e_tilde() const { return e_tilde_; }
  double e_under() const { return e_under_; }

  // sampled validation of the declared bounds; throws on violation
  void validate(double L, int samples = 2048) const;

  bool same_values(const EnergyProfile& other, double t_lo, double t_hi, int samples = 512,
                   double tol = 1e-14) const;

private:
  std::function<double(double)> f_, df_;
  double e_bar_ = 0.0, e_tilde_ = 0.0, e_under_ = 0.0;
};

} // namespace jetflow
