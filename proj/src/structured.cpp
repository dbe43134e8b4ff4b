#include "jetflow/structured.hpp"

#include <cmath>
#include <stdexcept>

#include "jetflow/grid.hpp"

namespace jetflow {

void ModeSum::add(const Key& k, int comp, std::complex<double> v) {
  auto& slot = m_[k];
  if (slot.empty()) slot.assign(ncomp, {0.0, 0.0});
  slot[comp] += v;
}

std::complex<double> ModeSum::get(const Key& k, int comp) const {
  auto it = m_.find(k);
  if (it == m_.end()) return {0.0, 0.0};
  return it->second[comp];
}

double ModeSum::deposit(SpectralField& f, double scale) const {
  if (f.components() != ncomp) throw std::invalid_argument("ModeSum::deposit: rank mismatch");
  const int c = f.grid().cutoff();
  double dropped = 0.0;
  for (const auto& [k, v] : m_) {
    const bool in = std::abs(k[0]) <= c && std::abs(k[1]) <= c && std::abs(k[2]) <= c;
    for (int comp = 0; comp < ncomp; ++comp) {
      if (in)
        f.set_freq(comp, static_cast<int>(k[0]), static_cast<int>(k[1]), static_cast<int>(k[2]),
                   f.at_freq(comp, static_cast<int>(k[0]), static_cast<int>(k[1]),
                             static_cast<int>(k[2])) +
                       scale * v[comp]);
      else
        dropped += std::norm(scale * v[comp]);
    }
  }
  return std::pow(kTwoPi, 3.0) * dropped;
}

double ModeSum::l2_norm() const {
  double s = 0.0;
  for (const auto& [k, v] : m_)
    for (const auto& z : v) s += std::norm(z);
  return std::pow(kTwoPi, 1.5) * std::sqrt(s);
}

void ModeSum::scaled_add(const ModeSum& other, std::complex<double> scale) {
  if (other.ncomp != ncomp) throw std::invalid_argument("ModeSum::scaled_add: rank mismatch");
  for (const auto& [k, v] : other.m_)
    for (int comp = 0; comp < ncomp; ++comp) add(k, comp, scale * v[comp]);
}

ModeSum convolve_lowband(const SpectralField& amp, const std::vector<LatticeMode>& factor,
                         double t, double out_band) {
  if (amp.rank() != Rank::scalar) throw std::invalid_argument("convolve_lowband: scalar amplitude expected");
  ModeSum out;
  out.ncomp = factor.empty() ? 1 : factor.front().ncomp;
  const int c = amp.grid().cutoff();
  const double b2 = out_band * out_band;
  for (const auto& mode : factor) {
    const std::complex<double> phase = std::polar(1.0, mode.omega * t);
    for (int k1 = -c; k1 <= c; ++k1)
      for (int k2 = -c; k2 <= c; ++k2)
        for (int k3 = -c; k3 <= c; ++k3) {
          const cplx a = amp.at_freq(0, k1, k2, k3);
          if (a == cplx(0.0, 0.0)) continue;
          const std::int64_t f1 = mode.freq[0] + k1;
          const std::int64_t f2 = mode.freq[1] + k2;
          const std::int64_t f3 = mode.freq[2] + k3;
          const double n2 = static_cast<double>(f1) * f1 + static_cast<double>(f2) * f2 +
                            static_cast<double>(f3) * f3;
          if (n2 > b2) continue;
          for (int comp = 0; comp < out.ncomp; ++comp)
            out.add({f1, f2, f3}, comp, a * mode.coeff[comp] * phase);
        }
  }
  return out;
}

std::complex<double> pair_integral(const SpectralField& amp, const std::vector<LatticeMode>& factor,
                                   int comp, double t) {
  // int amp * f = (2pi)^3 sum_l amp_hat(-l) f_hat(l)
  std::complex<double> s{0.0, 0.0};
  const int c = amp.grid().cutoff();
  for (const auto& mode : factor) {
    if (std::abs(mode.freq[0]) > c || std::abs(mode.freq[1]) > c || std::abs(mode.freq[2]) > c)
      continue;
    const cplx a = amp.at_freq(0, static_cast<int>(-mode.freq[0]), static_cast<int>(-mode.freq[1]),
                               static_cast<int>(-mode.freq[2]));
    if (a == cplx(0.0, 0.0)) continue;
    s += a * mode.coeff[comp] * std::polar(1.0, mode.omega * t);
  }
  return std::pow(kTwoPi, 3.0) * s;
}

} // namespace jetflow
