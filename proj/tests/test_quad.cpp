#include <doctest.h>

#include <cmath>
#include <vector>

#include "guedge/airy_ops.hpp"
#include "guedge/errors.hpp"
#include "guedge/quad.hpp"
#include "guedge/specfun.hpp"

using namespace guedge;

namespace {

double integrate_pow(const QuadRule& r, int p) {
  double acc = 0.0;
  for (int i = 0; i < r.size(); ++i) acc += r.weights[i] * std::pow(r.nodes[i], p);
  return acc;
}

KernelMatrix airy_km(double s, int m, double T) {
  return discretize([](double x, double y) { return airy_kernel(x, y); },
                    truncated_halfline(s, T, m));
}

}  // namespace

TEST_SUITE("quad") {

TEST_CASE("gauss_legendre smallest rules") {
  const QuadRule r1 = gauss_legendre(1);
  CHECK(r1.nodes[0] == 0.0);
  CHECK(r1.weights[0] == 2.0);
  const QuadRule r2 = gauss_legendre(2);
  CHECK(r2.nodes[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(r2.nodes[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(r2.weights[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(r2.weights[1] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("degree exactness") {
  for (int m : {3, 10, 64, 200}) {
    const QuadRule r = gauss_legendre(m);
    CHECK(std::abs(integrate_pow(r, 2 * m - 1)) < 1e-13);
    const double exact = 2.0 / (2.0 * m - 1.0);
    CHECK(std::abs(integrate_pow(r, 2 * m - 2) - exact) < 1e-13);
  }
}

TEST_CASE("rule bounds and weight sum") {
  for (int m : {5, 100, 731, 2000}) {
    const QuadRule r = gauss_legendre(m);
    double sum = 0.0;
    for (int i = 0; i < m; ++i) {
      sum += r.weights[i];
      CHECK(r.weights[i] > 0.0);
      if (i) CHECK(r.nodes[i] > r.nodes[i - 1]);
    }
    CHECK(std::abs(sum - 2.0) < 1e-12);
  }
}

TEST_CASE("gauss_legendre rejects out-of-range sizes") {
  CHECK_THROWS_AS(gauss_legendre(0), std::invalid_argument);
  CHECK_THROWS_AS(gauss_legendre(2001), std::invalid_argument);
}

TEST_CASE("truncated halfline affine map") {
  const QuadRule r = truncated_halfline(0.0, 2.0, 2);
  CHECK(r.nodes[0] == doctest::Approx(1.0 - 1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(r.nodes[1] == doctest::Approx(1.0 + 1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(r.weights[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(truncated_halfline(0.0, -1.0, 5), std::invalid_argument);
}

TEST_CASE("exponential tail integral on the half line") {
  const QuadRule r = truncated_halfline(0.0, 40.0, 80);
  double acc = 0.0, sumw = 0.0;
  for (int i = 0; i < r.size(); ++i) {
    acc += r.weights[i] * std::exp(-r.nodes[i]);
    sumw += r.weights[i];
  }
  CHECK(std::abs(acc - (1.0 - std::exp(-40.0))) < 1e-12);
  CHECK(std::abs(sumw - 40.0) < 1e-12);
}

TEST_CASE("discretize zero kernel and rank-one trace") {
  const QuadRule r = truncated_halfline(0.0, 40.0, 60);
  const KernelMatrix z = discretize([](double, double) { return 0.0; }, r);
  CHECK(z.A.norm() == 0.0);
  const KernelMatrix k1 = discretize(
      [](double x, double y) { return hermite_phi(0, x) * hermite_phi(0, y); }, r);
  CHECK(k1.A.trace() == doctest::Approx(0.5).epsilon(1e-12));  // int_0^inf phi_0^2
  CHECK((k1.A - k1.A.transpose()).norm() == 0.0);
}

TEST_CASE("discretize rejects NaN kernels") {
  const QuadRule r = truncated_halfline(0.0, 1.0, 4);
  CHECK_THROWS_AS(
      discretize([](double, double) { return std::nan(""); }, r),
      NumericError);
}

TEST_CASE("airy kernel diagonal sum matches independent quadrature") {
  const double s = -2.0;
  const QuadRule r = truncated_halfline(s, 40.0, 100);
  const KernelMatrix km = airy_km(s, 100, 40.0);
  // trace of the weighted matrix approximates int K(x,x) dx
  double tr = km.A.trace();
  const QuadRule fine = truncated_halfline(s, 40.0, 400);
  double oracle = 0.0;
  for (int i = 0; i < fine.size(); ++i)
    oracle += fine.weights[i] * airy_kernel(fine.nodes[i], fine.nodes[i]);
  CHECK(std::abs(tr - oracle) < 1e-10);
  CHECK(r.size() == 100);
}

TEST_CASE("fredholm determinant closed forms") {
  const QuadRule r0 = truncated_halfline(0.0, 40.0, 80);
  CHECK(fredholm_det(discretize([](double, double) { return 0.0; }, r0)) == 1.0);
  auto phi00 = [](double x, double y) { return hermite_phi(0, x) * hermite_phi(0, y); };
  CHECK(fredholm_det(discretize(phi00, r0)) == doctest::Approx(0.5).epsilon(1e-12));
  const QuadRule r7 = truncated_halfline(0.7, 40.0, 80);
  const double expect = 0.5 * (1.0 + guedge::erf(0.7));
  CHECK(fredholm_det(discretize(phi00, r7)) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("weighted-symmetric and plain-weighted forms agree") {
  // det(I - S K S) with S = diag(sqrt(w)) equals det(I - K W): similar matrices
  const QuadRule r = truncated_halfline(-2.0, 40.0, 60);
  const KernelMatrix km = airy_km(-2.0, 60, 40.0);
  Eigen::MatrixXd kw(60, 60);
  for (int i = 0; i < 60; ++i)
    for (int j = 0; j < 60; ++j)
      kw(i, j) = airy_kernel(r.nodes[i], r.nodes[j]) * r.weights[j];
  const double det_plain =
      (Eigen::MatrixXd::Identity(60, 60) - kw).partialPivLu().determinant();
  CHECK(fredholm_det(km) == doctest::Approx(det_plain).epsilon(1e-12));
}

TEST_CASE("resolvent identity and Sherman-Morrison scaling") {
  const QuadRule r = truncated_halfline(0.0, 40.0, 60);
  const KernelMatrix z = discretize([](double, double) { return 0.0; }, r);
  std::vector<double> f(60);
  for (int i = 0; i < 60; ++i) f[i] = std::sin(r.nodes[i]);
  const std::vector<double> g = resolvent_apply(z, f);
  for (int i = 0; i < 60; ++i)
    CHECK(g[i] == doctest::Approx(f[i]).epsilon(1e-15));

  // rank-one A = lambda u u^T with <u,u> = 1: g = u / (1 - lambda)
  const double lambda = 0.3;
  auto ker = [lambda](double x, double y) {
    return 2.0 * lambda * hermite_phi(0, x) * hermite_phi(0, y);
  };  // 2 phi_0^2 integrates to 1 on (0,inf)
  const KernelMatrix k1 = discretize(ker, r);
  std::vector<double> u(60);
  for (int i = 0; i < 60; ++i) u[i] = hermite_phi(0, r.nodes[i]);
  const std::vector<double> gu = resolvent_apply(k1, u);
  for (int i = 0; i < 60; ++i)
    CHECK(gu[i] == doctest::Approx(u[i] / 0.7).epsilon(1e-10));
}

TEST_CASE("resolvent residual below 1e-10") {
  const KernelMatrix km = airy_km(-2.0, 100, 40.0);
  const int m = 100;
  std::vector<double> f(m);
  for (int i = 0; i < m; ++i) f[i] = airy_ai(km.rule.nodes[i]);
  const std::vector<double> g = resolvent_apply(km, f);
  // residual of (I - K W) g = f in function coordinates
  double worst = 0.0, fmax = 0.0;
  for (int i = 0; i < m; ++i) {
    double acc = g[i];
    for (int j = 0; j < m; ++j)
      acc -= airy_kernel(km.rule.nodes[i], km.rule.nodes[j]) * km.rule.weights[j] *
             g[j];
    worst = std::max(worst, std::abs(acc - f[i]));
    fmax = std::max(fmax, std::abs(f[i]));
  }
  CHECK(worst < 1e-10 * fmax);
}

TEST_CASE("spectral convergence of the airy determinant in m") {
  const double ref = fredholm_det(airy_km(-2.0, 240, 40.0));
  const double e60 = std::abs(fredholm_det(airy_km(-2.0, 60, 40.0)) - ref);
  const double e120 = std::abs(fredholm_det(airy_km(-2.0, 120, 40.0)) - ref);
  CHECK(e120 < 1e-6 * e60 + 1e-14);
}

TEST_CASE("truncation insensitivity for the airy kernel") {
  for (double s : {-10.0, -4.0, 0.0}) {
    const double d40 = fredholm_det(airy_km(s, 160, 40.0));
    const double d80 = fredholm_det(airy_km(s, 320, 80.0));
    CHECK(std::abs(d40 - d80) < 1e-12);
  }
}

TEST_CASE("singular system is signalled distinctly") {
  // rank-one kernel with eigenvalue 1.5 drives det(I-K) to -0.5
  const QuadRule r = truncated_halfline(0.0, 40.0, 40);
  auto ker = [](double x, double y) {
    return 3.0 * hermite_phi(0, x) * hermite_phi(0, y);
  };
  CHECK_THROWS_AS(fredholm_det(discretize(ker, r)), SingularSystemError);
  CHECK_THROWS_AS(resolvent_apply(discretize(ker, r), std::vector<double>(40, 1.0)),
                  SingularSystemError);
}

}  // TEST_SUITE
