#include "jetflow/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <omp.h>

namespace jetflow {

static std::atomic<int> g_workers{0};

void set_workers(int n) {
  g_workers.store(n < 0 ? 0 : n);
  if (n > 0) omp_set_num_threads(n);
}

int workers() {
  int w = g_workers.load();
  return w > 0 ? w : omp_get_max_threads();
}

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body) {
  if (n == 0) return;
  const int nw = workers();
  if (nw <= 1 || n < 2 * kReduceBlock) {
    body(0, n);
    return;
  }
#pragma omp parallel num_threads(nw)
  {
    const int tid = omp_get_thread_num();
    const int nt = omp_get_num_threads();
    const std::size_t chunk = (n + nt - 1) / nt;
    const std::size_t lo = std::min(n, chunk * static_cast<std::size_t>(tid));
    const std::size_t hi = std::min(n, lo + chunk);
    if (lo < hi) body(lo, hi);
  }
}

// Blocks are summed left-to-right inside, partials combined in block order.
// The parallel path fills the same partial array as the serial one.
static double blocked_sum(std::size_t n, const std::function<double(std::size_t)>& f, bool parallel) {
  if (n == 0) return 0.0;
  const std::size_t nb = (n + kReduceBlock - 1) / kReduceBlock;
  std::vector<double> partial(nb, 0.0);
  auto fill = [&](std::size_t blo, std::size_t bhi) {
    for (std::size_t b = blo; b < bhi; ++b) {
      const std::size_t lo = b * kReduceBlock;
      const std::size_t hi = std::min(n, lo + kReduceBlock);
      double s = 0.0;
      for (std::size_t i = lo; i < hi; ++i) s += f(i);
      partial[b] = s;
    }
  };
  if (parallel && workers() > 1 && nb > 1) {
#pragma omp parallel for schedule(static) num_threads(workers())
    for (long b = 0; b < static_cast<long>(nb); ++b) fill(b, b + 1);
  } else {
    fill(0, nb);
  }
  double total = 0.0;
  for (std::size_t b = 0; b < nb; ++b) total += partial[b];
  return total;
}

static double blocked_max(std::size_t n, const std::function<double(std::size_t)>& f, bool parallel) {
  if (n == 0) return -std::numeric_limits<double>::infinity();
  const std::size_t nb = (n + kReduceBlock - 1) / kReduceBlock;
  std::vector<double> partial(nb, -std::numeric_limits<double>::infinity());
  auto fill = [&](std::size_t b) {
    const std::size_t lo = b * kReduceBlock;
    const std::size_t hi = std::min(n, lo + kReduceBlock);
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t i = lo; i < hi; ++i) m = std::max(m, f(i));
    partial[b] = m;
  };
  if (parallel && workers() > 1 && nb > 1) {
#pragma omp parallel for schedule(static) num_threads(workers())
    for (long b = 0; b < static_cast<long>(nb); ++b) fill(b);
  } else {
    for (std::size_t b = 0; b < nb; ++b) fill(b);
  }
  double m = -std::numeric_limits<double>::infinity();
  for (std::size_t b = 0; b < nb; ++b) m = std::max(m, partial[b]);
  return m;
}

double det_sum(std::size_t n, const std::function<double(std::size_t)>& f) {
  return blocked_sum(n, f, true);
}
double det_max(std::size_t n, const std::function<double(std::size_t)>& f) {
  return blocked_max(n, f, true);
}

namespace ref {
double det_sum(std::size_t n, const std::function<double(std::size_t)>& f) {
  return blocked_sum(n, f, false);
}
double det_max(std::size_t n, const std::function<double(std::size_t)>& f) {
  return blocked_max(n, f, false);
}
} // namespace ref

} // namespace jetflow
