#include "doctest.h"

#include <cmath>
#include <random>

#include "jetflow/norms.hpp"
#include "jetflow/operators.hpp"
#include "jetflow/structured.hpp"

using namespace jetflow;

namespace {
const GeometricFrame& frame() {
  static GeometricFrame fr;
  return fr;
}
const ProfileSet& profiles() {
  static ProfileSet p(1024);
  return p;
}
} // namespace

TEST_CASE("pair integral: Fourier pairing equals x-space quadrature at a toy scale") {
  JetFamily toy(frame(), profiles(), JetScales::surrogate(2.0), 300);
  const int i = 3;
  const double t = 0.4;
  Grid3 g(24);
  SpectralField amp = random_field(g, Rank::scalar, 3, 31);
  auto modes = toy.lattice_modes(i, JetField::psi2phi2, 200.0);

  const std::complex<double> paired = pair_integral(amp, modes, 0, t);

  // direct quadrature over a fine x lattice
  const int n = 128;
  double acc = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        double x[3] = {kTwoPi * (a + 0.5) / n, kTwoPi * (b + 0.5) / n, kTwoPi * (c + 0.5) / n};
        const double ps = toy.psi_xi(i, t, x);
        const double ph = toy.phi_xi(i, x);
        acc += amp.eval(0, x[0], x[1], x[2]) * ps * ps * ph * ph;
      }
  acc *= std::pow(kTwoPi, 3.0) / (static_cast<double>(n) * n * n);
  CHECK(paired.real() == doctest::Approx(acc).epsilon(2e-2));
  CHECK(std::abs(paired.imag()) < 1e-10 * (1.0 + std::abs(acc)));
}

TEST_CASE("convolve_lowband reproduces the product amp * factor in Fourier") {
  JetFamily toy(frame(), profiles(), JetScales::surrogate(2.0), 300);
  const int i = 0;
  const double t = 0.0;
  Grid3 g(16);
  SpectralField amp = random_field(g, Rank::scalar, 2, 7);
  auto modes = toy.lattice_modes(i, JetField::W, 120.0);
  ModeSum prod = convolve_lowband(amp, modes, t, 60.0);
  CHECK(prod.ncomp == 3);
  CHECK(prod.size() > 0);

  // check a handful of output coefficients against direct transforms of the
  // pointwise product sampled on a fine grid
  const int n = 96;
  Grid3 fine(n);
  PhysicalField p(fine, Rank::vector3);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        double x[3] = {kTwoPi * a / n, kTwoPi * b / n, kTwoPi * c / n};
        JetVec w = toy.W(i, t, x);
        const double av = amp.eval(0, x[0], x[1], x[2]);
        for (int comp = 0; comp < 3; ++comp) p.at(comp, fine.flat(a, b, c)) = av * w.v[comp];
      }
  SpectralField f = transform(p);
  int checked = 0;
  for (const auto& [k, v] : prod.raw()) {
    if (std::abs(k[0]) > 20 || std::abs(k[1]) > 20 || std::abs(k[2]) > 20) continue;
    for (int comp = 0; comp < 3; ++comp) {
      const cplx direct =
          f.at_freq(comp, static_cast<int>(k[0]), static_cast<int>(k[1]), static_cast<int>(k[2]));
      CHECK(std::abs(direct - v[comp]) < 2e-3 * (1e-3 + std::abs(v[comp])));
    }
    if (++checked > 40) break;
  }
  CHECK(checked > 5);
}

TEST_CASE("mode sum deposit and norms") {
  ModeSum s;
  s.ncomp = 1;
  s.add({1, 0, 0}, 0, {0.5, 0.0});
  s.add({-1, 0, 0}, 0, {0.5, 0.0});
  Grid3 g(8);
  SpectralField f(g, Rank::scalar);
  const double dropped = s.deposit(f);
  CHECK(dropped == 0.0);
  CHECK(f.at_freq(0, 1, 0, 0).real() == doctest::Approx(0.5));
  CHECK(s.l2_norm() == doctest::Approx(l2_norm(f)).epsilon(1e-12));
  ModeSum far;
  far.ncomp = 1;
  far.add({100, 0, 0}, 0, {1.0, 0.0});
  SpectralField f2(g, Rank::scalar);
  CHECK(far.deposit(f2) > 0.0);
}
