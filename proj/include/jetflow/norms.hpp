#pragma once

#include <optional>
#include <vector>

#include "jetflow/field.hpp"

namespace jetflow {

struct NormReport {
  double l2 = 0.0;
  double lp = 0.0;
  double p = 2.0;
  double c0 = 0.0;
  double c1_tx = 0.0; // only when time samples are supplied
  double w1p = 0.0;
  double h_gamma = 0.0;
  double gamma = 0.0;
};

// L^p norm by equal-weight quadrature on the collocation grid (pointwise
// Euclidean magnitude across components).
double lp_norm(const SpectralField& f, double p);
double l2_norm(const SpectralField& f);   // Parseval, (2pi)^{3/2} convention
double l1_norm(const SpectralField& f);
// grid max of the pointwise magnitude, evaluated on a 2x oversampled grid
double c0_norm(const SpectralField& f);
// c0 of the field plus all first spatial derivatives
double c1_space_norm(const SpectralField& f);
double w1p_norm(const SpectralField& f, double p);
double h_gamma_norm(const SpectralField& f, double gamma);

NormReport norms(const SpectralField& f, double p = 2.0, double gamma = 0.0);

// space-time C^1 over a uniformly spaced series: grid max of value and first
// space derivatives, plus a central-difference time derivative
double c1_spacetime_norm(const std::vector<SpectralField>& series, double dt);

NormReport norms(const std::vector<SpectralField>& series, double dt, double p = 2.0, double gamma = 0.0);

} // namespace jetflow
