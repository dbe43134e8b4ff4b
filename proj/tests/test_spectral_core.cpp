#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <functional>

#include "jetflow/container.hpp"
#include "jetflow/field.hpp"
#include "jetflow/norms.hpp"
#include "jetflow/operators.hpp"

using namespace jetflow;

namespace {

PhysicalField sample(Grid3 g, Rank r, const std::function<double(int, double, double, double)>& f) {
  PhysicalField p(g, r);
  const double h = g.spacing();
  for (int i1 = 0; i1 < g.n; ++i1)
    for (int i2 = 0; i2 < g.n; ++i2)
      for (int i3 = 0; i3 < g.n; ++i3)
        for (int comp = 0; comp < ncomp(r); ++comp)
          p.at(comp, g.flat(i1, i2, i3)) = f(comp, i1 * h, i2 * h, i3 * h);
  return p;
}

} // namespace

TEST_CASE("constant field transforms to the zero mode only") {
  Grid3 g(8);
  auto p = sample(g, Rank::scalar, [](int, double, double, double) { return 3.25; });
  SpectralField f = transform(p);
  CHECK(f.at_freq(0, 0, 0, 0).real() == doctest::Approx(3.25).epsilon(1e-14));
  double off = 0.0;
  for (int k = 1; k <= g.cutoff(); ++k) off += std::abs(f.at_freq(0, k, 0, 0));
  CHECK(off < 1e-13);
}

TEST_CASE("sin(x1) lands on the two expected modes with coefficients -i/2, i/2") {
  Grid3 g(16);
  auto p = sample(g, Rank::scalar, [](int, double x, double, double) { return std::sin(x); });
  SpectralField f = transform(p);
  CHECK(f.at_freq(0, 1, 0, 0).imag() == doctest::Approx(-0.5).epsilon(1e-13));
  CHECK(f.at_freq(0, -1, 0, 0).imag() == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(std::abs(f.at_freq(0, 1, 0, 0).real()) < 1e-14);
}

TEST_CASE("round trip physical -> spectral -> physical reproduces a random field") {
  Grid3 g(24);
  SpectralField f = random_field(g, Rank::scalar, 7, 7);
  PhysicalField p = inverse_transform(f);
  SpectralField f2 = transform(p);
  double worst = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < f.data().size(); ++i) {
    worst = std::max(worst, std::abs(f.data()[i] - f2.data()[i]));
    scale = std::max(scale, std::abs(f.data()[i]));
  }
  CHECK(worst / scale < 1e-12);
}

TEST_CASE("Parseval: grid quadrature L2 equals coefficient l2 with the (2pi)^{3/2} factor") {
  Grid3 g(32);
  SpectralField f = random_field(g, Rank::vector3, 9, 3);
  const double spectral = l2_norm(f);
  PhysicalField p = inverse_transform(f);
  double q = 0.0;
  for (std::size_t i = 0; i < g.points(); ++i)
    for (int c = 0; c < 3; ++c) q += p.at(c, i) * p.at(c, i);
  q = std::sqrt(q * std::pow(g.spacing(), 3));
  CHECK(spectral == doctest::Approx(q).epsilon(1e-10));
}

TEST_CASE("Hermitian symmetry holds for transforms of real data") {
  Grid3 g(12);
  SpectralField f = random_field(g, Rank::scalar, 4, 11);
  CHECK(f.hermitian_defect() < 1e-12);
  PhysicalField p = inverse_transform(f);
  CHECK(transform(p).hermitian_defect() < 1e-12);
}

TEST_CASE("analytic L2 norm of sin(x1) on the torus") {
  Grid3 g(16);
  auto p = sample(g, Rank::scalar, [](int, double x, double, double) { return std::sin(x); });
  SpectralField f = transform(p);
  CHECK(l2_norm(f) == doctest::Approx(std::pow(kTwoPi, 1.5) / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("H^0 equals L2 and the interpolation inequality holds on random fields") {
  Grid3 g(24);
  for (int trial = 0; trial < 20; ++trial) {
    SpectralField f = random_field(g, Rank::scalar, 8, 100 + trial);
    CHECK(h_gamma_norm(f, 0.0) == doctest::Approx(l2_norm(f)).epsilon(1e-12));
    const double gamma = 0.3;
    const double lhs = h_gamma_norm(f, gamma);
    const double rhs = std::pow(h_gamma_norm(f, 1.0), gamma) * std::pow(l2_norm(f), 1.0 - gamma);
    CHECK(lhs <= rhs * (1.0 + 1e-9));
  }
}

TEST_CASE("dealiased product of two single modes is exact") {
  Grid3 g(16);
  SpectralField a(g, Rank::scalar), b(g, Rank::scalar);
  a.set_freq(0, 1, 0, 0, {0.5, 0.0});
  a.set_freq(0, -1, 0, 0, {0.5, 0.0}); // cos x1
  b.set_freq(0, 0, 2, 0, {0.5, 0.0});
  b.set_freq(0, 0, -2, 0, {0.5, 0.0}); // cos 2x2
  SpectralField prod = multiply_scalar_fields(a, b);
  // cos x1 cos 2x2 = 1/4 sum of four modes
  CHECK(prod.at_freq(0, 1, 2, 0).real() == doctest::Approx(0.25).epsilon(1e-13));
  CHECK(prod.at_freq(0, -1, 2, 0).real() == doctest::Approx(0.25).epsilon(1e-13));
  CHECK(std::abs(prod.at_freq(0, 0, 0, 0))  < 1e-14);
}

TEST_CASE("snapshot container round trips byte-exactly") {
  Grid3 g(8);
  SpectralField f = random_field(g, Rank::tensor3x3, 3, 5);
  PhysicalField p = inverse_transform(f);
  const std::string path = "/tmp/jf_container_test.bin";
  write_snapshot(path, p);
  PhysicalField q = read_snapshot(path);
  REQUIRE(q.v.size() == p.v.size());
  for (std::size_t i = 0; i < p.v.size(); ++i) CHECK(q.v[i] == p.v[i]);
  std::remove(path.c_str());
}
