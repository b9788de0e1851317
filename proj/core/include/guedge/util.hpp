#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <thread>
#include <vector>

namespace guedge {

/// Runs f(i) for i in [0, count) on up to hardware_concurrency() threads.
/// Static index partition; f must be safe to call concurrently for distinct i.
/// Results keep their index, so reductions done afterwards in index order are
/// deterministic regardless of thread count.
inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& f) {
  std::size_t nthreads = std::thread::hardware_concurrency();
  if (nthreads == 0) nthreads = 1;
  if (nthreads > count) nthreads = count;
  if (nthreads <= 1) {
    for (std::size_t i = 0; i < count; ++i) f(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  for (std::size_t t = 0; t < nthreads; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < count; i += nthreads) f(i);
    });
  }
  for (auto& th : pool) th.join();
}

/// Least-squares slope of log|y| against log(x). Used for empirical
/// order-of-convergence estimates: residual ~ C * n^slope.
inline double fit_loglog_slope(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(std::abs(y[i]));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double denom = n * sxx - sx * sx;
  return (n * sxy - sx * sy) / denom;
}

}  // namespace guedge
