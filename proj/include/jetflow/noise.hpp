#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace jetflow {

// Shifted time mollifier, supported in (0,1):
//   phi(t) = C_time * exp(1 / (|t-1/2|^2 - 1/4)),  t in (0,1)
// C_time is computed once so that the integral is 1 to 1e-10. Mollification
// at scale ell uses only values from [t-ell, t] (causal).
double time_mollifier(double t);        // normalized phi
double time_mollifier_deriv(double t);  // phi'

// (f *_t phi_ell)(t) with composite Simpson on >= 64 subintervals of [0,ell]
double mollify_time(const std::function<double(double)>& f, double t, double ell, int subintervals = 128);
// d/dt (f *_t phi_ell)(t); the derivative falls on the mollifier
double mollify_time_deriv(const std::function<double(double)>& f, double t, double ell, int subintervals = 128);

enum class StopTrigger { amplitude, hoelder, horizon };

struct StoppingTime {
  double tau = 0.0;
  StopTrigger triggered_by = StopTrigger::horizon;
};

// Sampled Brownian driving path on a uniform grid over [0, horizon], extended
// by B(t) = B(0) = 0 for t <= 0 and frozen at B(horizon) beyond it. Values
// between samples are linear interpolants of the samples.
class NoisePath {
public:
  NoisePath() = default;
  // increments are i.i.d. N(0, dt) from a seeded Box-Muller stream
  static NoisePath sample(std::uint64_t seed, double dt, double horizon);

  double dt() const { return dt_; }
  double horizon() const { return horizon_; }
  std::uint64_t seed() const { return seed_; }
  const std::vector<double>& samples() const { return b_; }

  double b(double t) const;
  double theta(double t) const { return std::exp(b(t)); }
  double theta_mollified(double t, double ell) const;
  double theta_mollified_deriv(double t, double ell) const;

  // Hoelder seminorm of B over sample pairs in [0, t]; exact over the grid,
  // with the coarse-gap pruning described in the implementation
  double hoelder_seminorm(double t, double iota) const;

  StoppingTime stopping_time(double level, double iota) const;

  // copy with increments replaced by those of `other` strictly after t0;
  // used by the causality checks
  NoisePath spliced_after(double t0, const NoisePath& other) const;

  void write_csv(const std::string& path) const;
  static NoisePath read_csv(const std::string& path);

private:
  std::uint64_t seed_ = 0;
  double dt_ = 0.0;
  double horizon_ = 0.0;
  std::vector<double> b_; // B(k*dt), k = 0..K
};

} // namespace jetflow
