#include "jetflow/norms.hpp"

#include <cmath>
#include <stdexcept>

#include "jetflow/operators.hpp"
#include "jetflow/parallel.hpp"

namespace jetflow {

namespace {

// pointwise |u| on the collocation grid of an oversampled copy
std::vector<double> magnitude_samples(const SpectralField& f, int oversample) {
  Grid3 fine(f.grid().n * oversample);
  SpectralField lifted(fine, f.rank(), f.is_real());
  const int c = f.grid().cutoff();
  for (int comp = 0; comp < f.components(); ++comp)
    for (int k1 = -c; k1 <= c; ++k1)
      for (int k2 = -c; k2 <= c; ++k2)
        for (int k3 = -c; k3 <= c; ++k3) {
          const cplx v = f.at_freq(comp, k1, k2, k3);
          if (v != cplx(0.0, 0.0)) lifted.set_freq(comp, k1, k2, k3, v);
        }
  PhysicalField p = inverse_transform(lifted);
  const std::size_t m = fine.points();
  std::vector<double> mag(m);
  parallel_for(m, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      double s = 0.0;
      for (int comp = 0; comp < ncomp(f.rank()); ++comp) s += p.at(comp, i) * p.at(comp, i);
      mag[i] = std::sqrt(s);
    }
  });
  return mag;
}

} // namespace

double lp_norm(const SpectralField& f, double p) {
  if (p == 2.0) return l2_norm(f);
  PhysicalField ph = inverse_transform(f);
  const std::size_t m = f.grid().points();
  const double w = std::pow(f.grid().spacing(), 3);
  const int nc = f.components();
  const double s = det_sum(m, [&](std::size_t i) {
    double a = 0.0;
    for (int comp = 0; comp < nc; ++comp) a += ph.at(comp, i) * ph.at(comp, i);
    return std::pow(std::sqrt(a), p);
  });
  return std::pow(w * s, 1.0 / p);
}

double l2_norm(const SpectralField& f) {
  const std::size_t m = f.grid().points() * f.components();
  const auto& d = f.data();
  const double s = det_sum(m, [&](std::size_t i) { return std::norm(d[i]); });
  return std::pow(kTwoPi, 1.5) * std::sqrt(s);
}

double l1_norm(const SpectralField& f) { return lp_norm(f, 1.0); }

double c0_norm(const SpectralField& f) {
  auto mag = magnitude_samples(f, 2);
  return det_max(mag.size(), [&](std::size_t i) { return mag[i]; });
}

double c1_space_norm(const SpectralField& f) {
  double total = c0_norm(f);
  for (int axis = 0; axis < 3; ++axis) total += c0_norm(partial(f, axis));
  return total;
}

double w1p_norm(const SpectralField& f, double p) {
  double total = lp_norm(f, p);
  for (int axis = 0; axis < 3; ++axis) total += lp_norm(partial(f, axis), p);
  return total;
}

double h_gamma_norm(const SpectralField& f, double gamma) {
  const Grid3& g = f.grid();
  const int n = g.n;
  const std::size_t m = g.points();
  double acc = 0.0;
  for (int comp = 0; comp < f.components(); ++comp) {
    acc += det_sum(m, [&](std::size_t idx) {
      const int i1 = static_cast<int>(idx / (static_cast<std::size_t>(n) * n));
      const int i2 = static_cast<int>((idx / n) % n);
      const int i3 = static_cast<int>(idx % n);
      const double k1 = g.freq(i1), k2 = g.freq(i2), k3 = g.freq(i3);
      const double w = std::pow(1.0 + k1 * k1 + k2 * k2 + k3 * k3, gamma);
      return w * std::norm(f.coef(comp, idx));
    });
  }
  return std::pow(kTwoPi, 1.5) * std::sqrt(acc);
}

NormReport norms(const SpectralField& f, double p, double gamma) {
  NormReport r;
  r.l2 = l2_norm(f);
  r.p = p;
  r.lp = lp_norm(f, p);
  r.c0 = c0_norm(f);
  r.w1p = w1p_norm(f, p);
  r.gamma = gamma;
  r.h_gamma = h_gamma_norm(f, gamma);
  return r;
}

double c1_spacetime_norm(const std::vector<SpectralField>& series, double dt) {
  if (series.empty()) throw std::domain_error("c1_spacetime_norm: empty time series");
  double best = 0.0;
  for (std::size_t t = 0; t < series.size(); ++t) {
    double v = c1_space_norm(series[t]);
    if (series.size() >= 2) {
      // one-sided at the ends, central inside
      SpectralField dudt = series[t];
      if (t == 0)
        dudt = (1.0 / dt) * (series[1] - series[0]);
      else if (t + 1 == series.size())
        dudt = (1.0 / dt) * (series[t] - series[t - 1]);
      else
        dudt = (0.5 / dt) * (series[t + 1] - series[t - 1]);
      v += c0_norm(dudt);
    }
    best = std::max(best, v);
  }
  return best;
}

NormReport norms(const std::vector<SpectralField>& series, double dt, double p, double gamma) {
  if (series.empty()) throw std::domain_error("norms: empty time series");
  NormReport r;
  for (const auto& f : series) {
    NormReport s = norms(f, p, gamma);
    r.l2 = std::max(r.l2, s.l2);
    r.lp = std::max(r.lp, s.lp);
    r.c0 = std::max(r.c0, s.c0);
    r.w1p = std::max(r.w1p, s.w1p);
    r.h_gamma = std::max(r.h_gamma, s.h_gamma);
  }
  r.p = p;
  r.gamma = gamma;
  r.c1_tx = c1_spacetime_norm(series, dt);
  return r;
}

} // namespace jetflow
