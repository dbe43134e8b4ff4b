#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace jetflow {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// Collocation grid for the periodic box [0,2pi)^3. Frequencies per axis run
// over [-n/2+1, n/2-1]; the Nyquist mode -n/2 is dropped so that real fields
// have exact Hermitian symmetry and spectral derivatives stay real.
struct Grid3 {
  int n = 0;

  Grid3() = default;
  explicit Grid3(int n_per_axis) : n(n_per_axis) {
    if (n < 4 || n % 2 != 0) throw std::invalid_argument("Grid3: n_per_axis must be even and >= 4");
  }

  int cutoff() const { return n / 2 - 1; }
  double spacing() const { return kTwoPi / n; }
  std::size_t points() const { return static_cast<std::size_t>(n) * n * n; }

  // frequency of storage index i in [0,n): 0,1,...,n/2-1, -n/2, ..., -1
  int freq(int i) const { return i <= n / 2 ? (i < n / 2 ? i : -n / 2) : i - n; }
  // storage index of frequency k in [-n/2+1, n/2-1]
  int index_of(int k) const { return k >= 0 ? k : k + n; }

  std::size_t flat(int i1, int i2, int i3) const {
    return (static_cast<std::size_t>(i1) * n + i2) * n + i3;
  }

  bool operator==(const Grid3& o) const { return n == o.n; }
};

} // namespace jetflow
