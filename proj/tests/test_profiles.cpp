#include "doctest.h"

#include <stdexcept>

#include <cmath>

#include "jetflow/profiles.hpp"

using namespace jetflow;

TEST_CASE("profile normalizations hit the target to 1e-8") {
  ProfileSet prof(2048);
  CHECK(prof.psi_norm_residual() < 1e-8);
  CHECK(prof.phi_norm_residual() < 1e-8);
}

TEST_CASE("psi has zero mean (odd derivative of a bump)") {
  ProfileSet prof(2048);
  CHECK(std::abs(prof.psi_mean()) < 1e-12);
}

TEST_CASE("phi has zero mean over the plane (Green identity for -Lap Phi)") {
  ProfileSet prof(2048);
  CHECK(std::abs(prof.phi_mean()) < 1e-10);
}

TEST_CASE("phi equals -Lap Phi by 2-D central differences, O(h^2)") {
  ProfileSet prof(1024);
  auto check_at = [&](double y1, double y2, double h) {
    const double lap = (prof.Phi(y1 + h, y2) + prof.Phi(y1 - h, y2) + prof.Phi(y1, y2 + h) +
                        prof.Phi(y1, y2 - h) - 4.0 * prof.Phi(y1, y2)) /
                       (h * h);
    return std::abs(-lap - prof.phi(y1, y2));
  };
  double e1 = 0.0, e2 = 0.0;
  for (double y1 = -0.7; y1 <= 0.7; y1 += 0.1)
    for (double y2 = -0.65; y2 <= 0.65; y2 += 0.1) {
      e1 = std::max(e1, check_at(y1, y2, 1e-3));
      e2 = std::max(e2, check_at(y1, y2, 5e-4));
    }
  CHECK(e1 < 1e-2);
  CHECK(e2 / e1 > 0.15); // roughly quarters when h halves
  CHECK(e2 / e1 < 0.4);
}

TEST_CASE("psi derivatives agree with finite differences") {
  ProfileSet prof(512);
  const double h = 1e-5;
  for (double z = -0.8; z <= 0.8; z += 0.13) {
    const double fd1 = (prof.psi(z + h) - prof.psi(z - h)) / (2 * h);
    CHECK(prof.dpsi(z) == doctest::Approx(fd1).epsilon(1e-6));
    const double fd2 = (prof.dpsi(z + h) - prof.dpsi(z - h)) / (2 * h);
    CHECK(prof.d2psi(z) == doctest::Approx(fd2).epsilon(1e-5));
    const double fd3 = (prof.d2psi(z + h) - prof.d2psi(z - h)) / (2 * h);
    CHECK(prof.d3psi(z) == doctest::Approx(fd3).epsilon(1e-4));
  }
}

TEST_CASE("profiles vanish smoothly at the support boundary") {
  ProfileSet prof(512);
  CHECK(prof.psi(0.999999) == doctest::Approx(0.0).epsilon(1e-30));
  CHECK(prof.psi(1.5) == 0.0);
  CHECK(prof.phi_radial(0.9999) < 1e-200);
  CHECK(prof.Phi_radial(1.1) == 0.0);
}

TEST_CASE("normalization is stable under quadrature refinement") {
  ProfileSet coarse(512), fine(4096);
  CHECK(coarse.c_psi() == doctest::Approx(fine.c_psi()).epsilon(1e-9));
  CHECK(coarse.c_phi() == doctest::Approx(fine.c_phi()).epsilon(1e-9));
}

TEST_CASE("quadrature_n below 256 is rejected") {
  CHECK_THROWS_AS(ProfileSet(128), std::invalid_argument);
}
