#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace jetflow {

// exact rational with small denominator; frame arithmetic never leaves Q
struct Frac {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Frac() = default;
  Frac(std::int64_t n, std::int64_t d);
  static Frac of(std::int64_t n) { return Frac(n, 1); }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  Frac operator+(const Frac& o) const;
  Frac operator-(const Frac& o) const;
  Frac operator*(const Frac& o) const;
  bool operator==(const Frac& o) const { return num == o.num && den == o.den; }
};

using RatVec = std::array<Frac, 3>;

Frac rat_dot(const RatVec& a, const RatVec& b);
RatVec rat_cross(const RatVec& a, const RatVec& b);

struct Direction {
  RatVec xi;      // unit direction in S^2 cap Q^3
  RatVec a;       // unit companion orthogonal to xi
  RatVec cross;   // xi x a, computed exactly
};

struct TubePlacement {
  std::vector<std::array<double, 3>> alpha; // per-direction offsets
  double margin = 0.0;                      // min pairwise axis distance minus diameter
  double paper_margin = 0.0;                // margin in the displayed separation inequality
  bool unbounded = false;                   // single-direction sentinel
};

// First-geometric-lemma machinery over a fixed rational direction set. The
// six directions and companions are hardcoded (checked exactly at
// construction); gamma^2 solves a fixed 6x6 linear system.
class GeometricFrame {
public:
  GeometricFrame(); // the standard six-direction Pythagorean set

  const std::vector<Direction>& directions() const { return dirs_; }
  int size() const { return static_cast<int>(dirs_.size()); }
  int n_star() const { return n_star_; }
  double r_cert() const { return r_cert_; }
  double dyad_condition() const { return cond_; }

  // gamma_xi(R) >= 0 with sum gamma^2 (xi xi^T) = R; R symmetric, row-major
  // 3x3. Throws std::domain_error when ||R - Id||_F > r_cert.
  std::vector<double> gamma(const std::array<double, 9>& R) const;
  std::vector<double> gamma_squared(const std::array<double, 9>& R) const; // no positivity sqrt

  // exact certified radius of the affine solve (min_xi gamma^2_xi(Id) over
  // the dual norm of its gradient), capped at 1/2
  double certified_radius_exact() const;
  // bisection on the radius with sampled spheres, as an independent route
  double certified_radius_sampled(int samples_per_sphere, double tol = 1e-4) const;

  // sup-based constant M(N) = 8 |Lambda| (1+8pi^3)^{1/2} sup_xi ( ||gamma|| +
  // sum_{|alpha|<=N} ||D^alpha gamma|| ), estimated by sampling the certified
  // ball; derivatives by nested central differences
  double constant_M(int N, std::size_t samples = 100000) const;

  // Offsets for disjoint periodic tubes at frequency lambda with transverse
  // bump radius tube_radius (torus units). lattice_div = n_star * (r_perp *
  // lambda) is the integer spacing divisor of the periodised transverse
  // lattice, so tube axes repeat every 2pi/lattice_div.
  TubePlacement place_tubes(double lambda, std::int64_t lattice_div, double tube_radius,
                            int budget = 4000) const;

  // exact minimal periodic distance between the axis families of directions
  // i and j given their offsets (accounts for the fine transverse lattice at
  // spacing 2pi/lattice_div and all torus translates)
  double pair_axis_distance(int i, int j, const std::array<double, 3>& ai,
                            const std::array<double, 3>& aj, std::int64_t lattice_div) const;

  std::string to_json() const;

private:
  std::vector<Direction> dirs_;
  int n_star_ = 1;
  double r_cert_ = 0.0;
  double cond_ = 0.0;
  std::array<std::array<double, 6>, 6> dyad_inv_{}; // gamma^2 = inv * vec(R)
  std::array<std::array<double, 9>, 6> grad_{};     // gradient of gamma^2_k as sym matrix
  std::vector<double> gamma2_id_;
};

} // namespace jetflow
