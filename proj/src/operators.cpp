#include "jetflow/operators.hpp"

#include <cmath>
#include <stdexcept>

#include "jetflow/parallel.hpp"

namespace jetflow {

double chi_cutoff(double r) {
  if (r <= 0.5) return 1.0;
  if (r >= 1.0) return 0.0;
  const double e = std::exp(1.0 / (0.5 - r) + 1.0 / (1.0 - r));
  return 1.0 / (e + 1.0);
}

namespace {

// apply a per-mode complex multiplier m(k1,k2,k3) to every component
template <typename M>
SpectralField apply_multiplier(const SpectralField& f, M m, bool result_real = true) {
  SpectralField out = f;
  const Grid3& g = f.grid();
  const int n = g.n;
  const std::size_t npts = g.points();
  for (int comp = 0; comp < f.components(); ++comp) {
    parallel_for(npts, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t idx = lo; idx < hi; ++idx) {
        const int i1 = static_cast<int>(idx / (static_cast<std::size_t>(n) * n));
        const int i2 = static_cast<int>((idx / n) % n);
        const int i3 = static_cast<int>(idx % n);
        out.coef(comp, idx) = f.coef(comp, idx) * m(g.freq(i1), g.freq(i2), g.freq(i3));
      }
    });
  }
  if (!result_real && f.is_real()) {
    // multiplier may break Hermitian symmetry (odd derivative handled below)
  }
  return out;
}

cplx ipow(int p) {
  switch (((p % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

} // namespace

SpectralField derivative(const SpectralField& f, const std::array<int, 3>& a) {
  const int order = a[0] + a[1] + a[2];
  const cplx ip = ipow(order);
  return apply_multiplier(f, [&](int k1, int k2, int k3) {
    double w = 1.0;
    for (int j = 0; j < a[0]; ++j) w *= k1;
    for (int j = 0; j < a[1]; ++j) w *= k2;
    for (int j = 0; j < a[2]; ++j) w *= k3;
    return ip * w;
  });
}

SpectralField partial(const SpectralField& f, int axis) {
  std::array<int, 3> a{0, 0, 0};
  a[axis] = 1;
  return derivative(f, a);
}

SpectralField laplacian(const SpectralField& f) {
  return apply_multiplier(f, [](int k1, int k2, int k3) {
    return cplx(-static_cast<double>(k1) * k1 - static_cast<double>(k2) * k2 - static_cast<double>(k3) * k3, 0.0);
  });
}

SpectralField divergence(const SpectralField& f) {
  const Grid3& g = f.grid();
  if (f.rank() == Rank::vector3) {
    SpectralField out(g, Rank::scalar, f.is_real());
    const int c = g.cutoff();
    for (int k1 = -c; k1 <= c; ++k1)
      for (int k2 = -c; k2 <= c; ++k2)
        for (int k3 = -c; k3 <= c; ++k3) {
          const cplx ik[3] = {cplx(0, k1), cplx(0, k2), cplx(0, k3)};
          cplx s = 0.0;
          for (int j = 0; j < 3; ++j) s += ik[j] * f.at_freq(j, k1, k2, k3);
          out.set_freq(0, k1, k2, k3, s);
        }
    return out;
  }
  if (f.rank() == Rank::tensor3x3) {
    SpectralField out(g, Rank::vector3, f.is_real());
    const int c = g.cutoff();
    for (int k1 = -c; k1 <= c; ++k1)
      for (int k2 = -c; k2 <= c; ++k2)
        for (int k3 = -c; k3 <= c; ++k3) {
          const cplx ik[3] = {cplx(0, k1), cplx(0, k2), cplx(0, k3)};
          for (int i = 0; i < 3; ++i) {
            cplx s = 0.0;
            for (int j = 0; j < 3; ++j) s += ik[j] * f.at_freq(3 * i + j, k1, k2, k3);
            out.set_freq(i, k1, k2, k3, s);
          }
        }
    return out;
  }
  throw std::invalid_argument("divergence: needs vector or tensor field");
}

SpectralField gradient(const SpectralField& f) {
  if (f.rank() != Rank::scalar) throw std::invalid_argument("gradient: scalar input expected");
  SpectralField out(f.grid(), Rank::vector3, f.is_real());
  const int c = f.grid().cutoff();
  for (int k1 = -c; k1 <= c; ++k1)
    for (int k2 = -c; k2 <= c; ++k2)
      for (int k3 = -c; k3 <= c; ++k3) {
        const cplx v = f.at_freq(0, k1, k2, k3);
        out.set_freq(0, k1, k2, k3, cplx(0, k1) * v);
        out.set_freq(1, k1, k2, k3, cplx(0, k2) * v);
        out.set_freq(2, k1, k2, k3, cplx(0, k3) * v);
      }
  return out;
}

SpectralField curl(const SpectralField& f) {
  if (f.rank() != Rank::vector3) throw std::invalid_argument("curl: vector input expected");
  SpectralField out(f.grid(), Rank::vector3, f.is_real());
  const int c = f.grid().cutoff();
  for (int k1 = -c; k1 <= c; ++k1)
    for (int k2 = -c; k2 <= c; ++k2)
      for (int k3 = -c; k3 <= c; ++k3) {
        const cplx u0 = f.at_freq(0, k1, k2, k3);
        const cplx u1 = f.at_freq(1, k1, k2, k3);
        const cplx u2 = f.at_freq(2, k1, k2, k3);
        const cplx ik0(0, k1), ik1(0, k2), ik2(0, k3);
        out.set_freq(0, k1, k2, k3, ik1 * u2 - ik2 * u1);
        out.set_freq(1, k1, k2, k3, ik2 * u0 - ik0 * u2);
        out.set_freq(2, k1, k2, k3, ik0 * u1 - ik1 * u0);
      }
  return out;
}

SpectralField project_nonzero(const SpectralField& f) {
  SpectralField out = f;
  for (int comp = 0; comp < f.components(); ++comp) out.coef(comp, 0, 0, 0) = 0.0;
  return out;
}

std::array<double, 9> mean_mode(const SpectralField& f) {
  std::array<double, 9> m{};
  for (int comp = 0; comp < f.components(); ++comp) m[comp] = f.coef(comp, 0, 0, 0).real();
  return m;
}

SpectralField project_le(const SpectralField& f, double kappa) {
  if (kappa < 1.0) throw std::domain_error("project_le: kappa must be >= 1");
  return apply_multiplier(f, [kappa](int k1, int k2, int k3) {
    const double r = std::sqrt(static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2 +
                               static_cast<double>(k3) * k3);
    return cplx(chi_cutoff(r / kappa), 0.0);
  });
}

SpectralField project_ge(const SpectralField& f, double kappa) {
  if (kappa < 1.0) throw std::domain_error("project_ge: kappa must be >= 1");
  return apply_multiplier(f, [kappa](int k1, int k2, int k3) {
    const double r = std::sqrt(static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2 +
                               static_cast<double>(k3) * k3);
    return cplx(1.0 - chi_cutoff(r / kappa), 0.0);
  });
}

SpectralField leray(const SpectralField& f) {
  if (f.rank() != Rank::vector3) throw std::invalid_argument("leray: vector input expected");
  SpectralField out = f;
  const int c = f.grid().cutoff();
  for (int k1 = -c; k1 <= c; ++k1)
    for (int k2 = -c; k2 <= c; ++k2)
      for (int k3 = -c; k3 <= c; ++k3) {
        const double kk = static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2 +
                          static_cast<double>(k3) * k3;
        if (kk == 0.0) continue; // mean passes through
        const double k[3] = {static_cast<double>(k1), static_cast<double>(k2), static_cast<double>(k3)};
        cplx kdotu = 0.0;
        for (int j = 0; j < 3; ++j) kdotu += k[j] * f.at_freq(j, k1, k2, k3);
        for (int i = 0; i < 3; ++i)
          out.set_freq(i, k1, k2, k3, f.at_freq(i, k1, k2, k3) - k[i] * kdotu / kk);
      }
  return out;
}

namespace {

// mode-wise inverse divergence from the explicit formula
// R u = grad (inv_lap u) + (grad inv_lap u)^T - 1/2 (grad grad inv_lap + Id) div inv_lap u
void inv_div_mode(const double k[3], const cplx u[3], cplx R[9]) {
  const double kk = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
  cplx kdotu = 0.0;
  for (int j = 0; j < 3; ++j) kdotu += k[j] * u[j];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      cplx v = cplx(0, -1) * (k[i] * u[j] + k[j] * u[i]) / kk;
      v += cplx(0, 0.5) * kdotu * (k[i] * k[j] / (kk * kk));
      if (i == j) v += cplx(0, 0.5) * kdotu / kk;
      R[3 * i + j] = v;
    }
}

} // namespace

SpectralField inv_divergence(const SpectralField& f, double mean_tol) {
  if (f.rank() != Rank::vector3) throw std::invalid_argument("inv_divergence: vector input expected");
  auto m = mean_mode(f);
  const double mean_norm = std::sqrt(m[0] * m[0] + m[1] * m[1] + m[2] * m[2]);
  if (mean_norm > mean_tol)
    throw std::domain_error("inv_divergence: input has nonzero mean |mean| = " + std::to_string(mean_norm));
  SpectralField out(f.grid(), Rank::tensor3x3, f.is_real());
  const int c = f.grid().cutoff();
  for (int k1 = -c; k1 <= c; ++k1)
    for (int k2 = -c; k2 <= c; ++k2)
      for (int k3 = -c; k3 <= c; ++k3) {
        if (k1 == 0 && k2 == 0 && k3 == 0) continue;
        const double k[3] = {static_cast<double>(k1), static_cast<double>(k2), static_cast<double>(k3)};
        const cplx u[3] = {f.at_freq(0, k1, k2, k3), f.at_freq(1, k1, k2, k3), f.at_freq(2, k1, k2, k3)};
        cplx R[9];
        inv_div_mode(k, u, R);
        for (int comp = 0; comp < 9; ++comp) out.set_freq(comp, k1, k2, k3, R[comp]);
      }
  return out;
}

SpectralField inv_div_curl(const SpectralField& f) {
  return inv_divergence(project_nonzero(curl(f)), 1e-9);
}

SpectralField inv_div_laplacian(const SpectralField& f) {
  return inv_divergence(project_nonzero(laplacian(f)), 1e-9);
}

SpectralField inv_div_project_ge(const SpectralField& f, double kappa) {
  return inv_divergence(project_nonzero(project_ge(f, kappa)), 1e-9);
}

SpectralField half_inv_lap_project_ge(const SpectralField& f, double kappa) {
  SpectralField g = project_ge(f, kappa);
  const int c = f.grid().cutoff();
  for (int comp = 0; comp < g.components(); ++comp)
    for (int k1 = -c; k1 <= c; ++k1)
      for (int k2 = -c; k2 <= c; ++k2)
        for (int k3 = -c; k3 <= c; ++k3) {
          const double kk = static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2 +
                            static_cast<double>(k3) * k3;
          if (kk == 0.0) continue;
          g.set_freq(comp, k1, k2, k3, g.at_freq(comp, k1, k2, k3) / std::sqrt(kk));
        }
  for (int comp = 0; comp < g.components(); ++comp) g.coef(comp, 0, 0, 0) = 0.0;
  return g;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("loglog_slope: need >= 2 points");
  const std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace jetflow
