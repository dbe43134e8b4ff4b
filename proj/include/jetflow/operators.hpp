#pragma once

#include <array>

#include "jetflow/field.hpp"

namespace jetflow {

// Smooth radial cutoff used by the frequency projections: identically 1 for
// |x| <= 1/2, identically 0 for |x| >= 1, and
// 1 / (exp(1/(1/2-|x|) + 1/(1-|x|)) + 1) in between.
double chi_cutoff(double abs_x);

// coefficient-wise multiplication by (i n)^alpha
SpectralField derivative(const SpectralField& f, const std::array<int, 3>& multi_index);

SpectralField partial(const SpectralField& f, int axis);    // first derivative
SpectralField laplacian(const SpectralField& f);
SpectralField divergence(const SpectralField& f);           // vector -> scalar, tensor -> vector (row-wise)
SpectralField gradient(const SpectralField& f);             // scalar -> vector
SpectralField curl(const SpectralField& f);                 // vector -> vector

// P_{!=0}: drop the mean mode
SpectralField project_nonzero(const SpectralField& f);
std::array<double, 9> mean_mode(const SpectralField& f);

// P_{<=kappa} / P_{>=kappa} with the explicit chi; they sum to the identity
SpectralField project_le(const SpectralField& f, double kappa);
SpectralField project_ge(const SpectralField& f, double kappa);

// Leray projection Id - grad inv_lap div; the mean mode passes through
// unchanged (the projection is only defined on zero-mean fields, constants
// are divergence free anyway).
SpectralField leray(const SpectralField& f);

// Right inverse of the divergence: zero-mean vector field -> symmetric
// traceless tensor with div(R f) = f. Throws if |mean f| > tol.
SpectralField inv_divergence(const SpectralField& f, double mean_tol = 1e-12);

SpectralField inv_div_curl(const SpectralField& f);                  // R curl
SpectralField inv_div_laplacian(const SpectralField& f);             // R Delta
SpectralField inv_div_project_ge(const SpectralField& f, double k);  // R P_{>=k}
SpectralField half_inv_lap_project_ge(const SpectralField& f, double k); // (-Delta)^{-1/2} P_{>=k}

// log-log slope of y against x by least squares
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

} // namespace jetflow
