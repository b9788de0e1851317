#include "guedge/gue_mc.hpp"

#include <cmath>
#include <stdexcept>

#include "guedge/util.hpp"

namespace guedge {
namespace {

// splitmix64: tiny, seedable, and good enough statistically for this use.
struct Stream {
  std::uint64_t state;

  explicit Stream(std::uint64_t s) : state(s) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in (0, 1): top 53 bits, offset by half an ulp to avoid 0
  double next_uniform() {
    return ((next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  // standard normal pair via Box-Muller; we consume both halves
  void next_normal_pair(double& a, double& b) {
    const double u = next_uniform();
    const double v = next_uniform();
    const double r = std::sqrt(-2.0 * std::log(u));
    const double ang = 6.283185307179586476925286766559 * v;
    a = r * std::cos(ang);
    b = r * std::sin(ang);
  }

  double next_normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double a, b;
    next_normal_pair(a, b);
    spare_ = b;
    have_spare_ = true;
    return a;
  }

  // Marsaglia-Tsang Gamma(alpha, 1) for alpha >= 1
  double next_gamma(double alpha) {
    const double d = alpha - 1.0 / 3.0;
    const double cc = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = next_normal();
        v = 1.0 + cc * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = next_uniform();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

 private:
  double spare_ = 0.0;
  bool have_spare_ = false;
};

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed ^ (index * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL);
  z = (z ^ (z >> 33)) * 0xff51afd7ed558ccdULL;
  z = (z ^ (z >> 33)) * 0xc4ceb9fe1a85ec53ULL;
  return z ^ (z >> 33);
}

}  // namespace

void sample_tridiagonal(int n, std::uint64_t seed, long index,
                        std::vector<double>& diag, std::vector<double>& offdiag) {
  if (n < 1) throw std::invalid_argument("sample_tridiagonal: n must be >= 1");
  Stream rng(mix_seed(seed, (std::uint64_t)index));
  diag.resize(n);
  offdiag.resize(n > 0 ? n - 1 : 0);
  const double sigma = std::sqrt(0.5);
  for (int i = 0; i < n; ++i) diag[i] = sigma * rng.next_normal();
  for (int k = 1; k <= n - 1; ++k) {
    // chi_{2(n-k)} / 2 with chi_m = sqrt(2 Gamma(m/2, 1))
    const double chi = std::sqrt(2.0 * rng.next_gamma((double)(n - k)));
    offdiag[k - 1] = 0.5 * chi;
  }
}

double top_eigenvalue_tridiag(std::span<const double> diag,
                              std::span<const double> offdiag) {
  const int n = (int)diag.size();
  if (n == 0) throw std::invalid_argument("top_eigenvalue_tridiag: empty matrix");
  if ((int)offdiag.size() != n - 1)
    throw std::invalid_argument("top_eigenvalue_tridiag: offdiag size mismatch");
  if (n == 1) return diag[0];

  // Gershgorin bracket
  double lo = diag[0], hi = diag[0];
  for (int i = 0; i < n; ++i) {
    const double r = (i > 0 ? std::abs(offdiag[i - 1]) : 0.0) +
                     (i < n - 1 ? std::abs(offdiag[i]) : 0.0);
    lo = std::min(lo, diag[i] - r);
    hi = std::max(hi, diag[i] + r);
  }

  // Sturm count: number of eigenvalues < x
  const auto count_below = [&](double x) {
    int cnt = 0;
    double d = 1.0;
    for (int i = 0; i < n; ++i) {
      const double e2 = i > 0 ? offdiag[i - 1] * offdiag[i - 1] : 0.0;
      d = diag[i] - x - (d != 0.0 ? e2 / d : e2 / 1e-300);
      if (d < 0.0) ++cnt;
    }
    return cnt;
  };

  const double scale = std::max({1.0, std::abs(lo), std::abs(hi)});
  while (hi - lo > 1e-13 * scale) {
    const double mid = 0.5 * (lo + hi);
    if (count_below(mid) >= n)
      hi = mid;  // all eigenvalues below mid
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<double> sample_lambda_max(const SamplerConfig& cfg) {
  if (cfg.n < 1) throw std::invalid_argument("sample_lambda_max: n must be >= 1");
  if (cfg.num_samples < 1)
    throw std::invalid_argument("sample_lambda_max: num_samples must be >= 1");
  std::vector<double> out(cfg.num_samples);
  const double center = std::sqrt(2.0 * (cfg.n + cfg.c));
  const double invjac = std::sqrt(2.0) * std::pow((double)cfg.n, 1.0 / 6.0);
  parallel_for((std::size_t)cfg.num_samples, [&](std::size_t k) {
    std::vector<double> d, e;
    sample_tridiagonal(cfg.n, cfg.seed, (long)k, d, e);
    double lam = top_eigenvalue_tridiag(d, e);
    if (cfg.scaling == SamplerConfig::Scaling::centered)
      lam = (lam - center) * invjac;
    out[k] = lam;
  });
  return out;
}

std::pair<double, double> empirical_cdf(std::span<const double> draws, double t) {
  if (draws.size() < 100)
    throw std::invalid_argument("empirical_cdf: need at least 100 draws");
  const double n = (double)draws.size();
  long below = 0;
  for (double d : draws)
    if (d <= t) ++below;
  const double p = below / n;
  const double halfwidth = 3.0 * std::sqrt(std::max(p * (1.0 - p), 1.0 / n) / n);
  return {p, halfwidth};
}

}  // namespace guedge
