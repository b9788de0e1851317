#include "guedge/painleve2.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "guedge/errors.hpp"
#include "guedge/specfun.hpp"

namespace guedge {
namespace {

// Chebyshev-Lobatto machinery on t in [-1, 1], t_j = cos(pi j / N) descending.
// The grid stores points ascending in s, which reverses the index.

Eigen::MatrixXd cheb_diff_matrix(const std::vector<double>& t) {
  const int n = (int)t.size();
  const int N = n - 1;
  Eigen::MatrixXd D(n, n);
  auto c = [&](int i) { return (i == 0 || i == N) ? 2.0 : 1.0; };
  for (int i = 0; i < n; ++i) {
    double rowsum = 0.0;
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double sgn = ((i + j) % 2 == 0) ? 1.0 : -1.0;
      D(i, j) = (c(i) / c(j)) * sgn / (t[i] - t[j]);
      rowsum += D(i, j);
    }
    D(i, i) = -rowsum;  // negative sum trick keeps rows exactly consistent
  }
  return D;
}

// Values at Lobatto points (t-descending order) -> Chebyshev coefficients of
// the plain sum f(t) = sum_k c_k T_k(t). Naive DCT, O(N^2).
std::vector<double> cheb_coeffs(const std::vector<double>& vt) {
  const int n = (int)vt.size();
  const int N = n - 1;
  std::vector<double> cs(2 * N);
  for (int r = 0; r < 2 * N; ++r) cs[r] = std::cos(M_PI * r / N);
  std::vector<double> c(n, 0.0);
  for (int k = 0; k <= N; ++k) {
    double acc = 0.5 * (vt[0] + ((k % 2 == 0) ? vt[N] : -vt[N]));
    for (int j = 1; j < N; ++j) acc += vt[j] * cs[(std::size_t)k * j % (2 * N)];
    const double gk = (k == 0 || k == N) ? 2.0 : 1.0;
    c[k] = 2.0 * acc / (N * gk);
  }
  return c;
}

double clenshaw(const std::vector<double>& c, double t) {
  double b1 = 0.0, b2 = 0.0;
  for (int k = (int)c.size() - 1; k >= 1; --k) {
    const double b0 = 2.0 * t * b1 - b2 + c[k];
    b2 = b1;
    b1 = b0;
  }
  return t * b1 - b2 + c[0];
}

// Coefficients of the antiderivative on t in [-1,1], normalized so that the
// antiderivative vanishes at t = -1.
std::vector<double> cheb_antiderivative(const std::vector<double>& c) {
  const int n = (int)c.size();
  std::vector<double> b(n + 1, 0.0);
  auto cc = [&](int k) { return k < n ? c[k] : 0.0; };
  // plain-sum convention: int T_0 = T_1, int T_1 = (T_0 + T_2)/4,
  // int T_k = T_{k+1}/(2(k+1)) - T_{k-1}/(2(k-1)) for k >= 2
  b[1] = cc(0) - 0.5 * cc(2);
  for (int k = 2; k <= n; ++k) b[k] = (cc(k - 1) - cc(k + 1)) / (2.0 * k);
  double at_m1 = 0.0;
  for (int k = 1; k <= n; ++k) at_m1 += (k % 2 == 0 ? 1.0 : -1.0) * b[k];
  b[0] = -at_m1;
  return b;
}

struct ChebIntegrals {
  std::vector<double> coeffs;  // antiderivative coefficients, t variable
  double half_len = 0.0;       // (s_max - s_min) / 2

  // int_{s}^{s_max} f dx = half_len * (G(1) - G(t(s)))
  double tail_from(double t) const {
    return half_len * (clenshaw(coeffs, 1.0) - clenshaw(coeffs, t));
  }
};

ChebIntegrals make_integrals(const HMGrid& g, const std::vector<double>& vals_ascending) {
  const int n = (int)vals_ascending.size();
  std::vector<double> vt(n);
  for (int i = 0; i < n; ++i) vt[i] = vals_ascending[n - 1 - i];
  ChebIntegrals ci;
  ci.coeffs = cheb_antiderivative(cheb_coeffs(vt));
  ci.half_len = 0.5 * (g.s_max - g.s_min);
  return ci;
}

double to_t(const HMGrid& g, double s) {
  return 2.0 * (s - g.s_min) / (g.s_max - g.s_min) - 1.0;
}

double barycentric(const HMGrid& g, const std::vector<double>& vals, double s) {
  const int n = (int)g.abscissae.size();
  double num = 0.0, den = 0.0;
  for (int i = 0; i < n; ++i) {
    const double d = s - g.abscissae[i];
    if (d == 0.0) return vals[i];
    double w = (i % 2 == 0) ? 1.0 : -1.0;
    if (i == 0 || i == n - 1) w *= 0.5;
    const double r = w / d;
    num += r * vals[i];
    den += r;
  }
  return num / den;
}

}  // namespace

double HMGrid::eval_q(double s) const { return barycentric(*this, q, s); }
double HMGrid::eval_qprime(double s) const { return barycentric(*this, qprime, s); }

HMGrid hm_solve(double s_min, double s_max, int npts) {
  if (s_min < -12.0 || s_min > -2.0)
    throw std::invalid_argument("hm_solve: s_min must lie in [-12, -2]");
  if (s_max < 6.0) throw std::invalid_argument("hm_solve: s_max must be >= 6");
  if (npts < 32 || npts > 4000)
    throw std::invalid_argument("hm_solve: npts must be in [32, 4000]");

  const int n = npts;
  const int N = n - 1;
  std::vector<double> t(n);
  for (int j = 0; j < n; ++j) t[j] = std::cos(M_PI * j / N);

  HMGrid g;
  g.s_min = s_min;
  g.s_max = s_max;
  g.abscissae.resize(n);
  const double half = 0.5 * (s_max - s_min);
  for (int i = 0; i < n; ++i) g.abscissae[i] = s_min + half * (1.0 + t[n - 1 - i]);
  g.abscissae.front() = s_min;
  g.abscissae.back() = s_max;

  // Differentiation in s, ascending index order.
  const Eigen::MatrixXd Dt = cheb_diff_matrix(t);
  Eigen::MatrixXd D(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) D(i, j) = Dt(n - 1 - i, n - 1 - j) / half;
  const Eigen::MatrixXd D2 = D * D;

  const double q_left = std::sqrt(-s_min / 2.0) * (1.0 + 1.0 / (8.0 * s_min * s_min * s_min));
  const double q_right = airy_ai(s_max);

  // Initial guess: left asymptote for s <= -2, Ai for s >= 0, linear bridge.
  Eigen::VectorXd y(n);
  const double q_at_m2 = 1.0 - 1.0 / 64.0;
  for (int i = 0; i < n; ++i) {
    const double s = g.abscissae[i];
    if (s <= -2.0)
      y[i] = std::sqrt(-s / 2.0) * (1.0 + 1.0 / (8.0 * s * s * s));
    else if (s >= 0.0)
      y[i] = airy_ai(s);
    else
      y[i] = q_at_m2 + (s + 2.0) / 2.0 * (0.35502805388781724 - q_at_m2);
  }

  auto residual = [&](const Eigen::VectorXd& v) {
    Eigen::VectorXd F = D2 * v;
    for (int i = 0; i < n; ++i)
      F[i] -= g.abscissae[i] * v[i] + 2.0 * v[i] * v[i] * v[i];
    F[0] = v[0] - q_left;
    F[n - 1] = v[n - 1] - q_right;
    return F;
  };

  // The raw collocation residual bottoms out around ||D^2|| * eps (~1e-8 for
  // 600 points), so convergence is declared when the Newton step stagnates at
  // rounding level; the residual ceiling below catches true non-convergence.
  Eigen::VectorXd F = residual(y);
  double fnorm = F.lpNorm<Eigen::Infinity>();
  bool converged = fnorm < 1e-10;
  for (int it = 0; it < 60 && !converged; ++it) {
    Eigen::MatrixXd J = D2;
    for (int i = 0; i < n; ++i) J(i, i) -= g.abscissae[i] + 6.0 * y[i] * y[i];
    J.row(0).setZero();
    J(0, 0) = 1.0;
    J.row(n - 1).setZero();
    J(n - 1, n - 1) = 1.0;
    const Eigen::VectorXd step = J.partialPivLu().solve(-F);
    double alpha = 1.0;
    for (int bt = 0; bt < 30; ++bt) {
      Eigen::VectorXd ytry = y + alpha * step;
      Eigen::VectorXd Ftry = residual(ytry);
      const double ftry = Ftry.lpNorm<Eigen::Infinity>();
      if (ftry < fnorm || alpha < 1e-8) {
        y = ytry;
        F = Ftry;
        fnorm = ftry;
        break;
      }
      alpha *= 0.5;
    }
    const double stepnorm = alpha * step.lpNorm<Eigen::Infinity>();
    converged = fnorm < 1e-10 ||
                (stepnorm < 1e-13 * std::max(1.0, y.lpNorm<Eigen::Infinity>()) &&
                 fnorm < 1e-6);
  }
  if (!converged)
    throw NumericError("hm_solve: Newton did not converge, residual " +
                       std::to_string(fnorm));

  g.q.assign(y.data(), y.data() + n);
  const Eigen::VectorXd yp = D * y;
  g.qprime.assign(yp.data(), yp.data() + n);
  return g;
}

const HMGrid& default_hm_grid() {
  static const HMGrid g = hm_solve();
  return g;
}

AuxFunctions derive_aux(const HMGrid& g) {
  const int n = (int)g.abscissae.size();
  std::vector<double> q2(n);
  for (int i = 0; i < n; ++i) q2[i] = g.q[i] * g.q[i];
  const ChebIntegrals A2 = make_integrals(g, q2);
  AuxFunctions aux;
  aux.u.resize(n);
  aux.v.resize(n);
  aux.p.resize(n);
  for (int i = 0; i < n; ++i) {
    const double u = A2.tail_from(to_t(g, g.abscissae[i]));
    aux.u[i] = u;
    aux.p[i] = g.qprime[i] + u * g.q[i];       // q' = p - q u
    aux.v[i] = 0.5 * (u * u - q2[i]);          // first integral 2v = u^2 - q^2
  }
  return aux;
}

double f2_from_q(const HMGrid& g, double s) {
  if (s < g.s_min || s > g.s_max)
    throw std::invalid_argument("f2_from_q: s outside the collocation grid");
  const int n = (int)g.abscissae.size();
  std::vector<double> q2(n), xq2(n);
  for (int i = 0; i < n; ++i) {
    q2[i] = g.q[i] * g.q[i];
    xq2[i] = g.abscissae[i] * q2[i];
  }
  const ChebIntegrals A2 = make_integrals(g, q2);
  const ChebIntegrals A1 = make_integrals(g, xq2);
  const double t = to_t(g, s);
  const double integral = A1.tail_from(t) - s * A2.tail_from(t);
  return std::exp(-integral);
}

}  // namespace guedge
