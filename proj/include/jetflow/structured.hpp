#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "jetflow/field.hpp"
#include "jetflow/jets.hpp"

namespace jetflow {

// Sparse Fourier sum keyed by integer frequency; used to carry the exact
// low-band content of jet-borne fields and their images under multipliers.
class ModeSum {
public:
  using Key = std::array<std::int64_t, 3>;

  int ncomp = 1;

  void add(const Key& k, int comp, std::complex<double> v);
  std::complex<double> get(const Key& k, int comp) const;
  std::size_t size() const { return m_.size(); }

  // accumulate into a grid field (frequencies beyond the cutoff are dropped
  // and their l2 mass is returned)
  double deposit(SpectralField& f, double scale = 1.0) const;

  double l2_norm() const; // (2pi)^{3/2} l2 of coefficients
  void scaled_add(const ModeSum& other, std::complex<double> scale);

  const std::map<Key, std::vector<std::complex<double>>>& raw() const { return m_; }

private:
  std::map<Key, std::vector<std::complex<double>>> m_;
};

// exact Fourier coefficients of (grid field) x (lattice factor): the product
// of a band-limited amplitude with one jet factor field, truncated to |freq|
// <= out_band
ModeSum convolve_lowband(const SpectralField& amp, const std::vector<LatticeMode>& factor,
                         double t, double out_band);

// integral over T^3 of amp(x) * factor_component(x) at time t: the exact
// Fourier pairing sum_l amp_hat(-l) f_hat(l)
std::complex<double> pair_integral(const SpectralField& amp, const std::vector<LatticeMode>& factor,
                                   int comp, double t);

} // namespace jetflow
