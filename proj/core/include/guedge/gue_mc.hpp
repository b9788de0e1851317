#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace guedge {

/// Monte Carlo sampler for the largest eigenvalue of GUE_n under the
/// eigenvalue density ~ e^{-sum x^2} prod |x_i - x_j|^2, via the beta=2
/// tridiagonal model: diagonal ~ N(0, 1/2), k-th sub-diagonal ~ chi_{2(n-k)}/2.
/// Every draw owns a counter-derived RNG stream, so the output is a pure
/// function of (seed, n, draw index): partitioned and sequential sampling
/// produce identical multisets.
struct SamplerConfig {
  int n = 2;
  long num_samples = 1000;
  std::uint64_t seed = 42;
  enum class Scaling { raw, centered } scaling = Scaling::raw;
  double c = 0.0;  // centering constant for Scaling::centered
};

std::vector<double> sample_lambda_max(const SamplerConfig& cfg);

/// Largest eigenvalue of a symmetric tridiagonal matrix by Sturm-count
/// bisection. diag has n entries, offdiag n-1.
double top_eigenvalue_tridiag(std::span<const double> diag,
                              std::span<const double> offdiag);

/// (fraction of draws <= t, 3-sigma binomial half-width). Needs >= 100 draws.
std::pair<double, double> empirical_cdf(std::span<const double> draws, double t);

/// One tridiagonal draw (diag, offdiag) for inspection/calibration tests.
void sample_tridiagonal(int n, std::uint64_t seed, long index,
                        std::vector<double>& diag, std::vector<double>& offdiag);

}  // namespace guedge
