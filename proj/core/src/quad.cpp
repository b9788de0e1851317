#include "guedge/quad.hpp"

#include <cmath>
#include <stdexcept>

#include "guedge/errors.hpp"

namespace guedge {
namespace {

// Legendre P_m and P_m' via the recurrence (k+1)P_{k+1} = (2k+1)x P_k - k P_{k-1}.
void legendre_pair(int m, double x, double& p, double& dp) {
  double p0 = 1.0, p1 = x;
  if (m == 0) {
    p = p0;
    dp = 0.0;
    return;
  }
  for (int k = 1; k < m; ++k) {
    const double p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
    p0 = p1;
    p1 = p2;
  }
  p = p1;
  dp = m * (x * p1 - p0) / (x * x - 1.0);
}

}  // namespace

QuadRule gauss_legendre(int m) {
  if (m < 1 || m > 2000)
    throw std::invalid_argument("gauss_legendre: m must be in [1, 2000]");
  QuadRule r;
  r.a = -1.0;
  r.length = 2.0;
  r.nodes.resize(m);
  r.weights.resize(m);
  if (m == 1) {
    r.nodes[0] = 0.0;
    r.weights[0] = 2.0;
    return r;
  }
  // Compute the lower half by Newton from the Tricomi initial guess, then
  // mirror, so the rule is symmetric to the last bit.
  for (int i = 0; i < (m + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (m + 0.5));
    double p = 0.0, dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      legendre_pair(m, x, p, dp);
      const double dx = -p / dp;
      x += dx;
      if (std::abs(dx) < 1e-15) break;
    }
    legendre_pair(m, x, p, dp);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // i = 0 is the largest root; store in ascending order
    r.nodes[m - 1 - i] = x;
    r.nodes[i] = -x;
    r.weights[m - 1 - i] = w;
    r.weights[i] = w;
  }
  if (m % 2 == 1) r.nodes[m / 2] = 0.0;
  return r;
}

QuadRule truncated_halfline(double a, double T, int m) {
  if (!(T > 0.0)) throw std::invalid_argument("truncated_halfline: T must be > 0");
  QuadRule base = gauss_legendre(m);
  QuadRule r;
  r.a = a;
  r.length = T;
  r.nodes.resize(m);
  r.weights.resize(m);
  const double half = 0.5 * T;
  const double mid = a + half;
  for (int i = 0; i < m; ++i) {
    r.nodes[i] = mid + half * base.nodes[i];
    r.weights[i] = half * base.weights[i];
  }
  return r;
}

KernelMatrix discretize(const std::function<double(double, double)>& kernel,
                        const QuadRule& rule) {
  const int m = rule.size();
  KernelMatrix km{Eigen::MatrixXd(m, m), rule};
  std::vector<double> sw(m);
  for (int i = 0; i < m; ++i) sw[i] = std::sqrt(rule.weights[i]);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j <= i; ++j) {
      const double k = kernel(rule.nodes[i], rule.nodes[j]);
      if (!std::isfinite(k))
        throw NumericError("discretize: kernel returned a non-finite value");
      const double v = sw[i] * k * sw[j];
      km.A(i, j) = v;
      km.A(j, i) = v;
    }
  }
  return km;
}

KernelMatrix discretize_cd(std::span<const double> aval,
                           std::span<const double> bval,
                           std::span<const double> da,
                           std::span<const double> db, double pref,
                           const QuadRule& rule) {
  const int m = rule.size();
  if ((int)aval.size() != m || (int)bval.size() != m || (int)da.size() != m ||
      (int)db.size() != m)
    throw std::invalid_argument("discretize_cd: sample arrays must match rule size");
  KernelMatrix km{Eigen::MatrixXd(m, m), rule};
  std::vector<double> sw(m);
  for (int i = 0; i < m; ++i) sw[i] = std::sqrt(rule.weights[i]);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < i; ++j) {
      const double k = pref *
                       (aval[i] * bval[j] - aval[j] * bval[i]) /
                       (rule.nodes[i] - rule.nodes[j]);
      if (!std::isfinite(k))
        throw NumericError("discretize_cd: non-finite kernel value");
      const double v = sw[i] * k * sw[j];
      km.A(i, j) = v;
      km.A(j, i) = v;
    }
    // L'Hopital on the diagonal
    const double kd = pref * (da[i] * bval[i] - db[i] * aval[i]);
    if (!std::isfinite(kd))
      throw NumericError("discretize_cd: non-finite diagonal value");
    km.A(i, i) = rule.weights[i] * kd;
  }
  return km;
}

double fredholm_det(const KernelMatrix& km) {
  const int m = km.rule.size();
  Eigen::MatrixXd ima = Eigen::MatrixXd::Identity(m, m) - km.A;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(ima);
  const double det = lu.determinant();
  if (!std::isfinite(det)) throw NumericError("fredholm_det: non-finite determinant");
  if (det <= 1e-290)
    throw SingularSystemError("fredholm_det: det(I-K) <= 0 within tolerance");
  return det;
}

std::vector<double> resolvent_apply(const KernelMatrix& km,
                                    std::span<const double> f) {
  if ((int)f.size() != km.rule.size())
    throw std::invalid_argument("resolvent_apply: f must have one value per node");
  ResolventFactor fac(km);
  Eigen::VectorXd fv = Eigen::Map<const Eigen::VectorXd>(f.data(), f.size());
  Eigen::VectorXd g = fac.solve(fv);
  return std::vector<double>(g.data(), g.data() + g.size());
}

ResolventFactor::ResolventFactor(const KernelMatrix& km) : rule_(km.rule) {
  const int m = km.rule.size();
  sqw_.resize(m);
  for (int i = 0; i < m; ++i) sqw_[i] = std::sqrt(km.rule.weights[i]);
  Eigen::MatrixXd ima = Eigen::MatrixXd::Identity(m, m) - km.A;
  lu_.compute(ima);
  det_ = lu_.determinant();
  if (!std::isfinite(det_))
    throw NumericError("ResolventFactor: non-finite determinant");
  if (det_ <= 1e-290)
    throw SingularSystemError("ResolventFactor: (I-K) singular within tolerance");
}

Eigen::VectorXd ResolventFactor::solve(const Eigen::VectorXd& f) const {
  // (I - K W) g = f  <=>  (I - A) (S g) = S f with S = diag(sqrt(w))
  Eigen::VectorXd fhat = sqw_.cwiseProduct(f);
  Eigen::VectorXd ghat = lu_.solve(fhat);
  return ghat.cwiseQuotient(sqw_);
}

Eigen::MatrixXd ResolventFactor::resolvent_kernel_nodes() const {
  const int m = rule_.size();
  // (I - A)^{-1} - I = (I - A)^{-1} A, unscaled back to function coordinates
  Eigen::MatrixXd rhat =
      lu_.solve(Eigen::MatrixXd::Identity(m, m)) - Eigen::MatrixXd::Identity(m, m);
  Eigen::MatrixXd r(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) r(i, j) = rhat(i, j) / (sqw_[i] * sqw_[j]);
  return r;
}

}  // namespace guedge
