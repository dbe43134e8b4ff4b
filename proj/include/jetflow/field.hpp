#pragma once

#include <array>
#include <complex>
#include <vector>

#include "jetflow/grid.hpp"

namespace jetflow {

using cplx = std::complex<double>;

enum class Rank { scalar = 1, vector3 = 3, tensor3x3 = 9 };

inline int ncomp(Rank r) { return static_cast<int>(r); }

// Truncated-Fourier field on the 3-torus. Coefficients are stored in FFTW
// order, component-major; modes on the Nyquist planes are identically zero.
// The transform convention follows u_hat(n) = (2pi)^-3 int u e^{-in.y} dy,
// u(x) = sum u_hat(n) e^{in.x}, so the L2 norm is (2pi)^{3/2} times the l2
// norm of the coefficients.
class SpectralField {
public:
  SpectralField() = default;
  SpectralField(Grid3 g, Rank r, bool real_valued = true);

  const Grid3& grid() const { return grid_; }
  Rank rank() const { return rank_; }
  int components() const { return ncomp(rank_); }
  bool is_real() const { return real_; }
  std::size_t modes_per_comp() const { return grid_.points(); }

  cplx& coef(int comp, std::size_t flat) { return c_[comp * grid_.points() + flat]; }
  const cplx& coef(int comp, std::size_t flat) const { return c_[comp * grid_.points() + flat]; }
  cplx& coef(int comp, int i1, int i2, int i3) { return coef(comp, grid_.flat(i1, i2, i3)); }
  const cplx& coef(int comp, int i1, int i2, int i3) const { return coef(comp, grid_.flat(i1, i2, i3)); }

  // coefficient at integer frequency (k1,k2,k3); zero outside the cutoff box
  cplx at_freq(int comp, int k1, int k2, int k3) const;
  void set_freq(int comp, int k1, int k2, int k3, cplx v);

  std::vector<cplx>& data() { return c_; }
  const std::vector<cplx>& data() const { return c_; }

  SpectralField& operator+=(const SpectralField& o);
  SpectralField& operator-=(const SpectralField& o);
  SpectralField& operator*=(double s);
  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(double s, SpectralField a) { return a *= s; }

  void zero_nyquist();
  // max |u_hat(-n) - conj(u_hat(n))| over all modes and components
  double hermitian_defect() const;
  void enforce_hermitian();

  // value of the (band-limited) field at an arbitrary point, by direct
  // Fourier summation. O(modes) per call; intended for probes, not grids.
  double eval(int comp, double x1, double x2, double x3) const;

private:
  Grid3 grid_;
  Rank rank_ = Rank::scalar;
  bool real_ = true;
  std::vector<cplx> c_;
};

// physical samples, row-major over (i1,i2,i3,component)
struct PhysicalField {
  Grid3 grid;
  Rank rank = Rank::scalar;
  std::vector<double> v;

  PhysicalField() = default;
  PhysicalField(Grid3 g, Rank r) : grid(g), rank(r), v(g.points() * ncomp(r), 0.0) {}
  double& at(int comp, std::size_t flat) { return v[flat * ncomp(rank) + comp]; }
  double at(int comp, std::size_t flat) const { return v[flat * ncomp(rank) + comp]; }
};

// forward: physical samples -> truncated spectrum (Nyquist zeroed)
SpectralField transform(const PhysicalField& p);
// inverse: spectrum -> physical samples on its own grid
PhysicalField inverse_transform(const SpectralField& f);

// Dealiased pointwise product: both factors are resampled on a 2x grid,
// multiplied there, transformed back and truncated to the original band.
// comp_map(a_comp, b_comp) pairs are accumulated into the given output
// component; the common cases below wrap it.
SpectralField multiply_dealias(const SpectralField& a, const SpectralField& b, Rank out_rank,
                               const std::vector<std::array<int, 3>>& terms);

SpectralField multiply_scalar_fields(const SpectralField& a, const SpectralField& b);
SpectralField outer_product(const SpectralField& a, const SpectralField& b); // vector x vector -> tensor
SpectralField dot_product(const SpectralField& a, const SpectralField& b);   // vector . vector -> scalar

// deterministic band-limited random field with coefficients ~ seeded normals,
// frequencies |k|_inf <= kmax, Hermitian-symmetrized when real_valued
SpectralField random_field(Grid3 g, Rank r, int kmax, std::uint64_t seed, bool real_valued = true);

} // namespace jetflow
