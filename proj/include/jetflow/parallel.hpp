#pragma once

#include <cstddef>
#include <functional>
#include <vector>

// Parallel primitives for the field kernels. Every reduction goes through a
// fixed block decomposition so the result is bit-identical no matter how many
// workers run it: blocks are summed serially inside, block partials are
// combined in block order. The serial reference implementations in
// jetflow::ref walk the same blocks and must agree bitwise with the parallel
// path; tests/test_kernels.cpp asserts that.

namespace jetflow {

// Number of worker threads used by parallel_for / det_sum. 0 = use OpenMP
// default. Set once at startup from the CLI --workers flag.
void set_workers(int n);
int workers();

inline constexpr std::size_t kReduceBlock = 4096;

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

// Deterministic blocked sum of f(i), i in [0, n).
double det_sum(std::size_t n, const std::function<double(std::size_t)>& f);

// Deterministic max (max is order-independent, but kept alongside det_sum so
// all reductions share one call site style).
double det_max(std::size_t n, const std::function<double(std::size_t)>& f);

namespace ref {
double det_sum(std::size_t n, const std::function<double(std::size_t)>& f);
double det_max(std::size_t n, const std::function<double(std::size_t)>& f);
} // namespace ref

} // namespace jetflow
