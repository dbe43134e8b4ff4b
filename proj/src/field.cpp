#include "jetflow/field.hpp"

#include <cstring>
#include <map>
#include <mutex>
#include <random>
#include <stdexcept>

#include <fftw3.h>

#include "jetflow/parallel.hpp"

namespace jetflow {

SpectralField::SpectralField(Grid3 g, Rank r, bool real_valued)
    : grid_(g), rank_(r), real_(real_valued), c_(g.points() * ncomp(r), cplx(0.0, 0.0)) {}

cplx SpectralField::at_freq(int comp, int k1, int k2, int k3) const {
  const int c = grid_.cutoff();
  if (std::abs(k1) > c || std::abs(k2) > c || std::abs(k3) > c) return {0.0, 0.0};
  return coef(comp, grid_.index_of(k1), grid_.index_of(k2), grid_.index_of(k3));
}

void SpectralField::set_freq(int comp, int k1, int k2, int k3, cplx v) {
  const int c = grid_.cutoff();
  if (std::abs(k1) > c || std::abs(k2) > c || std::abs(k3) > c)
    throw std::out_of_range("set_freq: frequency beyond cutoff");
  coef(comp, grid_.index_of(k1), grid_.index_of(k2), grid_.index_of(k3)) = v;
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
  if (!(grid_ == o.grid_) || rank_ != o.rank_) throw std::invalid_argument("field +=: shape mismatch");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  real_ = real_ && o.real_;
  return *this;
}
SpectralField& SpectralField::operator-=(const SpectralField& o) {
  if (!(grid_ == o.grid_) || rank_ != o.rank_) throw std::invalid_argument("field -=: shape mismatch");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  real_ = real_ && o.real_;
  return *this;
}
SpectralField& SpectralField::operator*=(double s) {
  for (auto& z : c_) z *= s;
  return *this;
}

void SpectralField::zero_nyquist() {
  const int n = grid_.n;
  const int ny = n / 2;
  for (int comp = 0; comp < components(); ++comp)
    for (int i1 = 0; i1 < n; ++i1)
      for (int i2 = 0; i2 < n; ++i2)
        for (int i3 = 0; i3 < n; ++i3)
          if (i1 == ny || i2 == ny || i3 == ny) coef(comp, i1, i2, i3) = 0.0;
}

double SpectralField::hermitian_defect() const {
  const int c = grid_.cutoff();
  double worst = 0.0;
  for (int comp = 0; comp < components(); ++comp)
    for (int k1 = -c; k1 <= c; ++k1)
      for (int k2 = -c; k2 <= c; ++k2)
        for (int k3 = -c; k3 <= c; ++k3) {
          const cplx a = at_freq(comp, k1, k2, k3);
          const cplx b = std::conj(at_freq(comp, -k1, -k2, -k3));
          worst = std::max(worst, std::abs(a - b));
        }
  return worst;
}

void SpectralField::enforce_hermitian() {
  const int c = grid_.cutoff();
  for (int comp = 0; comp < components(); ++comp)
    for (int k1 = -c; k1 <= c; ++k1)
      for (int k2 = -c; k2 <= c; ++k2)
        for (int k3 = -c; k3 <= c; ++k3) {
          if (std::make_tuple(k1, k2, k3) < std::make_tuple(-k1, -k2, -k3)) continue;
          const cplx a = at_freq(comp, k1, k2, k3);
          const cplx b = at_freq(comp, -k1, -k2, -k3);
          const cplx avg = 0.5 * (a + std::conj(b));
          set_freq(comp, k1, k2, k3, avg);
          set_freq(comp, -k1, -k2, -k3, std::conj(avg));
        }
  real_ = true;
}

double SpectralField::eval(int comp, double x1, double x2, double x3) const {
  const int c = grid_.cutoff();
  // sum over k1 with precomputed phases per axis would be faster; probes are rare
  double acc = 0.0;
  for (int k1 = -c; k1 <= c; ++k1)
    for (int k2 = -c; k2 <= c; ++k2) {
      const double ph12 = k1 * x1 + k2 * x2;
      cplx s(0.0, 0.0);
      for (int k3 = -c; k3 <= c; ++k3) {
        const cplx u = at_freq(comp, k1, k2, k3);
        if (u == cplx(0.0, 0.0)) continue;
        s += u * std::polar(1.0, ph12 + k3 * x3);
      }
      acc += s.real();
    }
  return acc;
}

// ---------------------------------------------------------------------------
// FFT plumbing. FFTW runs single threaded and with FFTW_ESTIMATE so results
// are reproducible run to run; parallelism lives one level up (components,
// time samples, mode loops).

namespace {

struct PlanCache {
  std::mutex mtx;
  std::map<std::pair<int, int>, fftw_plan> plans; // (n, sign) -> plan
  std::map<int, fftw_complex*> buffers;           // n -> scratch

  fftw_complex* buffer(int n) {
    auto it = buffers.find(n);
    if (it != buffers.end()) return it->second;
    fftw_complex* b = fftw_alloc_complex(static_cast<std::size_t>(n) * n * n);
    buffers[n] = b;
    return b;
  }
  fftw_plan plan(int n, int sign) {
    auto key = std::make_pair(n, sign);
    auto it = plans.find(key);
    if (it != plans.end()) return it->second;
    fftw_complex* b = buffer(n);
    fftw_plan p = fftw_plan_dft_3d(n, n, n, b, b, sign, FFTW_ESTIMATE);
    plans[key] = p;
    return p;
  }
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

void run_fft(int n, int sign, std::vector<cplx>& inout, std::size_t offset) {
  auto& c = cache();
  std::lock_guard<std::mutex> lock(c.mtx);
  fftw_complex* buf = c.buffer(n);
  const std::size_t m = static_cast<std::size_t>(n) * n * n;
  std::memcpy(buf, inout.data() + offset, m * sizeof(cplx));
  fftw_execute(c.plan(n, sign));
  std::memcpy(inout.data() + offset, buf, m * sizeof(cplx));
}

} // namespace

SpectralField transform(const PhysicalField& p) {
  SpectralField f(p.grid, p.rank, true);
  const std::size_t m = p.grid.points();
  const double scale = 1.0 / static_cast<double>(m);
  for (int comp = 0; comp < ncomp(p.rank); ++comp) {
    for (std::size_t i = 0; i < m; ++i) f.coef(comp, i) = cplx(p.at(comp, i), 0.0);
    run_fft(p.grid.n, FFTW_FORWARD, f.data(), comp * m);
    for (std::size_t i = 0; i < m; ++i) f.coef(comp, i) *= scale;
  }
  f.zero_nyquist();
  return f;
}

PhysicalField inverse_transform(const SpectralField& f) {
  PhysicalField p(f.grid(), f.rank());
  const std::size_t m = f.grid().points();
  std::vector<cplx> work = f.data();
  for (int comp = 0; comp < f.components(); ++comp) {
    run_fft(f.grid().n, FFTW_BACKWARD, work, comp * m);
    for (std::size_t i = 0; i < m; ++i) p.at(comp, i) = work[comp * m + i].real();
  }
  return p;
}

namespace {

// spectrum on grid n embedded into grid 2n (zero padding)
void pad_spectrum(const SpectralField& f, int comp, SpectralField& out, int out_comp) {
  const Grid3& g = f.grid();
  const Grid3& G = out.grid();
  const int c = g.cutoff();
  for (int k1 = -c; k1 <= c; ++k1)
    for (int k2 = -c; k2 <= c; ++k2)
      for (int k3 = -c; k3 <= c; ++k3) {
        const cplx v = f.at_freq(comp, k1, k2, k3);
        if (v != cplx(0.0, 0.0))
          out.coef(out_comp, G.index_of(k1), G.index_of(k2), G.index_of(k3)) = v;
      }
}

} // namespace

SpectralField multiply_dealias(const SpectralField& a, const SpectralField& b, Rank out_rank,
                               const std::vector<std::array<int, 3>>& terms) {
  if (!(a.grid() == b.grid())) throw std::invalid_argument("multiply_dealias: grid mismatch");
  const Grid3 g = a.grid();
  const Grid3 G(2 * g.n);
  const std::size_t M = G.points();

  // physical samples of every needed component on the fine grid
  std::vector<std::vector<double>> pa(a.components()), pb(b.components());
  auto lift = [&](const SpectralField& src, int comp, std::vector<double>& dst) {
    SpectralField fine(G, Rank::scalar, src.is_real());
    pad_spectrum(src, comp, fine, 0);
    std::vector<cplx>& w = fine.data();
    run_fft(G.n, FFTW_BACKWARD, w, 0);
    dst.resize(M);
    for (std::size_t i = 0; i < M; ++i) dst[i] = w[i].real();
  };
  for (int c = 0; c < a.components(); ++c) lift(a, c, pa[c]);
  for (int c = 0; c < b.components(); ++c) lift(b, c, pb[c]);

  SpectralField fine_out(G, out_rank, true);
  PhysicalField prod(G, Rank::scalar);
  for (int oc = 0; oc < ncomp(out_rank); ++oc) {
    bool any = false;
    std::fill(prod.v.begin(), prod.v.end(), 0.0);
    for (const auto& t : terms) {
      if (t[2] != oc) continue;
      any = true;
      const std::vector<double>& x = pa[t[0]];
      const std::vector<double>& y = pb[t[1]];
      parallel_for(M, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) prod.v[i] += x[i] * y[i];
      });
    }
    if (!any) continue;
    for (std::size_t i = 0; i < M; ++i) fine_out.coef(oc, i) = cplx(prod.v[i], 0.0);
    run_fft(G.n, FFTW_FORWARD, fine_out.data(), oc * M);
    const double scale = 1.0 / static_cast<double>(M);
    for (std::size_t i = 0; i < M; ++i) fine_out.coef(oc, i) *= scale;
  }

  // truncate back to the original band
  SpectralField out(g, out_rank, true);
  const int c = g.cutoff();
  for (int oc = 0; oc < ncomp(out_rank); ++oc)
    for (int k1 = -c; k1 <= c; ++k1)
      for (int k2 = -c; k2 <= c; ++k2)
        for (int k3 = -c; k3 <= c; ++k3)
          out.set_freq(oc, k1, k2, k3, fine_out.at_freq(oc, k1, k2, k3));
  return out;
}

SpectralField multiply_scalar_fields(const SpectralField& a, const SpectralField& b) {
  return multiply_dealias(a, b, Rank::scalar, {{0, 0, 0}});
}

SpectralField outer_product(const SpectralField& a, const SpectralField& b) {
  std::vector<std::array<int, 3>> terms;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) terms.push_back({i, j, 3 * i + j});
  return multiply_dealias(a, b, Rank::tensor3x3, terms);
}

SpectralField dot_product(const SpectralField& a, const SpectralField& b) {
  return multiply_dealias(a, b, Rank::scalar, {{0, 0, 0}, {1, 1, 0}, {2, 2, 0}});
}

SpectralField random_field(Grid3 g, Rank r, int kmax, std::uint64_t seed, bool real_valued) {
  if (kmax > g.cutoff()) throw std::invalid_argument("random_field: kmax beyond cutoff");
  SpectralField f(g, r, real_valued);
  std::mt19937_64 rng(seed);
  auto gauss = [&rng]() {
    // Box-Muller on explicit uniforms keeps the stream library-independent
    double u1 = 0.0;
    do { u1 = std::uniform_real_distribution<double>(0.0, 1.0)(rng); } while (u1 <= 1e-300);
    const double u2 = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
  };
  for (int comp = 0; comp < ncomp(r); ++comp)
    for (int k1 = -kmax; k1 <= kmax; ++k1)
      for (int k2 = -kmax; k2 <= kmax; ++k2)
        for (int k3 = -kmax; k3 <= kmax; ++k3) f.set_freq(comp, k1, k2, k3, cplx(gauss(), gauss()));
  if (real_valued) f.enforce_hermitian();
  return f;
}

} // namespace jetflow
