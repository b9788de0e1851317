#include "guedge/hermite_n.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "guedge/errors.hpp"
#include "guedge/specfun.hpp"
#include "guedge/util.hpp"

namespace guedge {
namespace {

void check_n(int n) {
  if (n < 1) throw std::invalid_argument("hermite_n: n must be >= 1");
}

// Kernel row K_n(x, z_j) from cached node samples; one phi recurrence at x.
Eigen::VectorXd kernel_row(const FiniteNState& st, double x) {
  const HermitePhiEval e = hermite_phi_eval(st.n, x);
  const double pref = std::sqrt(0.5 * st.n);
  const int m = st.rule.size();
  Eigen::VectorXd row(m);
  for (int j = 0; j < m; ++j) {
    const double d = x - st.rule.nodes[j];
    if (std::abs(d) > 1e-6) {
      row[j] = pref * (e.phi_n * st.phinm1[j] - e.phi_nm1 * st.phin[j]) / d;
    } else {
      // K(x, z_j) = Kd(x) + ((z_j - x)/2) Kd'(x) with Kd' = -sqrt(2n) phi phi
      const double kd = pref * (e.dphi_n * e.phi_nm1 - e.dphi_nm1 * e.phi_n);
      row[j] = kd + 0.5 * d * std::sqrt(2.0 * st.n) * e.phi_n * e.phi_nm1;
    }
  }
  return row;
}

FiniteNState build_state(int n, double c, double t, const FiniteNOptions& opts) {
  check_n(n);
  const int m = opts.m;
  const double T = opts.T > 0.0 ? opts.T : default_hermite_T(n);
  FiniteNState st;
  st.n = n;
  st.c = c;
  st.t = t;
  st.rule = truncated_halfline(t, T, m);
  st.phin.resize(m);
  st.phinm1.resize(m);
  st.dphin.resize(m);
  st.dphinm1.resize(m);
  for (int i = 0; i < m; ++i) {
    const HermitePhiEval e = hermite_phi_eval(n, st.rule.nodes[i]);
    st.phin[i] = e.phi_n;
    st.phinm1[i] = e.phi_nm1;
    st.dphin[i] = e.dphi_n;
    st.dphinm1[i] = e.dphi_nm1;
  }
  const double pref = std::sqrt(0.5 * n);
  const KernelMatrix km = discretize_cd(
      std::span<const double>(st.phin.data(), m),
      std::span<const double>(st.phinm1.data(), m),
      std::span<const double>(st.dphin.data(), m),
      std::span<const double>(st.dphinm1.data(), m), pref, st.rule);
  ResolventFactor fac(km);
  st.det = fac.det();
  st.hat = std::pow(0.5 * n, 0.25);
  st.QnVec = st.hat * fac.solve(st.phin);
  st.PnVec = st.hat * fac.solve(st.phinm1);
  if (opts.with_resolvent_kernel) st.R = fac.resolvent_kernel_nodes();

  const HermitePhiEval et = hermite_phi_eval(n, t);
  const Eigen::VectorXd row = kernel_row(st, t);
  double qn = st.hat * et.phi_n, pn = st.hat * et.phi_nm1;
  for (int j = 0; j < m; ++j) {
    qn += st.rule.weights[j] * row[j] * st.QnVec[j];
    pn += st.rule.weights[j] * row[j] * st.PnVec[j];
  }
  st.qn = qn;
  st.pn = pn;
  return st;
}

}  // namespace

double ScalingMap::jacobian() const {
  return std::pow((double)n, -1.0 / 6.0) / std::sqrt(2.0);
}

double ScalingMap::tau(double X) const {
  if (n + c <= 0.0) throw std::invalid_argument("ScalingMap: n + c must be > 0");
  return std::sqrt(2.0 * (n + c)) + X * jacobian();
}

double ScalingMap::inverse(double x) const {
  if (n + c <= 0.0) throw std::invalid_argument("ScalingMap: n + c must be > 0");
  return (x - std::sqrt(2.0 * (n + c))) / jacobian();
}

double hermite_kernel(int n, double x, double y) {
  check_n(n);
  const double pref = std::sqrt(0.5 * n);
  const HermitePhiEval ex = hermite_phi_eval(n, x);
  if (std::abs(x - y) > 1e-6) {
    const HermitePhiEval ey = hermite_phi_eval(n, y);
    return pref * (ex.phi_n * ey.phi_nm1 - ex.phi_nm1 * ey.phi_n) / (x - y);
  }
  // Diagonal form sqrt(n/2)(phi_n' phi_{n-1} - phi_{n-1}' phi_n) with the
  // first-order term from d/dx K_n(x,x) = -sqrt(2n) phi_n phi_{n-1}.
  const double kd = pref * (ex.dphi_n * ex.phi_nm1 - ex.dphi_nm1 * ex.phi_n);
  return kd - 0.5 * (y - x) * std::sqrt(2.0 * n) * ex.phi_n * ex.phi_nm1;
}

double scaled_kernel(const ScalingMap& map, double X, double Y) {
  return map.jacobian() * hermite_kernel(map.n, map.tau(X), map.tau(Y));
}

double kernel_expansion_rhs(double c, double X, double Y, int order, int n) {
  if (order < 0 || order > 2)
    throw std::invalid_argument("kernel_expansion_rhs: order must be 0, 1 or 2");
  double out = airy_kernel(X, Y);
  if (order < 1) return out;
  const AiryPair ax = airy_both(X);
  const AiryPair ay = airy_both(Y);
  const double n13 = std::pow((double)n, -1.0 / 3.0);
  out -= c * ax.ai * ay.ai * n13;
  if (order < 2) return out;
  const double bracket =
      (X + Y) * ax.aip * ay.aip - (X * X + X * Y + Y * Y) * ax.ai * ay.ai +
      0.5 * (3.0 - 20.0 * c * c) * (ax.aip * ay.ai + ax.ai * ay.aip);
  out += bracket * n13 * n13 / 20.0;
  return out;
}

double phi_scaled(int n, double c, double X, bool nm1) {
  check_n(n);
  const ScalingMap map{n, c};
  const HermitePhiEval e = hermite_phi_eval(n, map.tau(X));
  // (n/2)^{1/4} phi scales to n^{1/6} Ai at the edge
  return std::pow(0.5 * n, 0.25) * std::pow((double)n, -1.0 / 6.0) *
         (nm1 ? e.phi_nm1 : e.phi_n);
}

double phi_expansion_rhs(double c, double X, int order, int n, bool nm1) {
  if (order < 0 || order > 2)
    throw std::invalid_argument("phi_expansion_rhs: order must be 0, 1 or 2");
  const AiryPair a = airy_both(X);
  double out = a.ai;
  if (order < 1) return out;
  const double n13 = std::pow((double)n, -1.0 / 3.0);
  const double lin = nm1 ? 0.5 * (2.0 * c + 1.0) : 0.5 * (2.0 * c - 1.0);
  out += lin * a.aip * n13;
  if (order < 2) return out;
  const double quad = nm1 ? 10.0 * c * c + 10.0 * c + 1.5 : 10.0 * c * c - 10.0 * c + 1.5;
  out += (quad * X * a.ai + X * X * a.aip) * n13 * n13 / 20.0;
  return out;
}

double default_hermite_T(int n) {
  return 40.0 * std::pow((double)n, -1.0 / 6.0) / std::sqrt(2.0);
}

double FiniteNState::kernel(double x, double y) const {
  return hermite_kernel(n, x, y);
}

double FiniteNState::eval_Qn(double x) const {
  const Eigen::VectorXd row = kernel_row(*this, x);
  double acc = hat * hermite_phi_eval(n, x).phi_n;
  for (int j = 0; j < rule.size(); ++j) acc += rule.weights[j] * row[j] * QnVec[j];
  return acc;
}

double FiniteNState::eval_Pn(double x) const {
  const Eigen::VectorXd row = kernel_row(*this, x);
  double acc = hat * hermite_phi_eval(n, x).phi_nm1;
  for (int j = 0; j < rule.size(); ++j) acc += rule.weights[j] * row[j] * PnVec[j];
  return acc;
}

double FiniteNState::eval_R(double x, double y) const {
  if (R.size() == 0)
    throw std::logic_error("FiniteNState::eval_R: built without resolvent kernel");
  const int m = rule.size();
  const Eigen::VectorXd rowY = kernel_row(*this, y);
  Eigen::VectorXd ry(m);
  for (int j = 0; j < m; ++j) {
    double acc = rowY[j];
    for (int i = 0; i < m; ++i) acc += rule.weights[i] * rowY[i] * R(i, j);
    ry[j] = acc;
  }
  const Eigen::VectorXd rowX = kernel_row(*this, x);
  double acc = hermite_kernel(n, x, y);
  for (int j = 0; j < m; ++j) acc += rule.weights[j] * rowX[j] * ry[j];
  return acc;
}

FiniteNState finite_state(int n, double c, double s, const FiniteNOptions& opts) {
  if (s < -10.0) throw RegimeError("finite_state: s < -10 is out of regime");
  const ScalingMap map{n, c};
  return build_state(n, c, map.tau(s), opts);
}

FiniteNState finite_state_unscaled(int n, double t, const FiniteNOptions& opts) {
  return build_state(n, 0.0, t, opts);
}

double cdf_fredholm(int n, double t, int m, double T) {
  check_n(n);
  if (T <= 0.0) T = default_hermite_T(n);
  const QuadRule rule = truncated_halfline(t, T, m);
  Eigen::VectorXd pn(m), pnm1(m), dpn(m), dpnm1(m);
  for (int i = 0; i < m; ++i) {
    const HermitePhiEval e = hermite_phi_eval(n, rule.nodes[i]);
    pn[i] = e.phi_n;
    pnm1[i] = e.phi_nm1;
    dpn[i] = e.dphi_n;
    dpnm1[i] = e.dphi_nm1;
  }
  const KernelMatrix km = discretize_cd(
      std::span<const double>(pn.data(), m), std::span<const double>(pnm1.data(), m),
      std::span<const double>(dpn.data(), m), std::span<const double>(dpnm1.data(), m),
      std::sqrt(0.5 * n), rule);
  return fredholm_det(km);
}

double cdf_via_qp(int n, double t, int m_outer, int m, double T) {
  check_n(n);
  if (T <= 0.0) T = default_hermite_T(n);
  const QuadRule outer = truncated_halfline(t, T, m_outer);
  std::vector<double> qp(m_outer);
  FiniteNOptions opts;
  opts.m = m;
  opts.T = T;
  parallel_for(m_outer, [&](std::size_t k) {
    const FiniteNState st = finite_state_unscaled(n, outer.nodes[k], opts);
    qp[k] = st.qn * st.pn;
  });
  double integral = 0.0;
  for (int k = 0; k < m_outer; ++k)
    integral += outer.weights[k] * (outer.nodes[k] - t) * qp[k];
  return std::exp(-2.0 * integral);
}

std::array<double, 3> resolvent_expansion_residuals(int n, double c, double s,
                                                    std::span<const double> gridX,
                                                    const ResolventSample& airy) {
  const int g = (int)gridX.size();
  FiniteNOptions opts;
  opts.with_resolvent_kernel = true;
  const FiniteNState st = finite_state(n, c, s, opts);
  const ScalingMap map{n, c};
  const double jac = map.jacobian();
  const double n13 = std::pow((double)n, -1.0 / 3.0);

  // Airy-side ingredients at the grid points.
  std::vector<double> Q0(g), Q1(g), Q2(g), P0(g), P1(g);
  for (int i = 0; i < g; ++i) {
    Q0[i] = airy.eval_Q(0, gridX[i]);
    Q1[i] = airy.eval_Q(1, gridX[i]);
    Q2[i] = airy.eval_Q(2, gridX[i]);
    P0[i] = airy.eval_P(0, gridX[i]);
    P1[i] = airy.eval_P(1, gridX[i]);
  }
  const AiryFunctionals fn = functionals_from(airy);
  const double u0 = fn.u[0];

  std::array<double, 3> sup{0.0, 0.0, 0.0};
  for (int i = 0; i < g; ++i) {
    for (int j = 0; j < g; ++j) {
      const double lhs = jac * st.eval_R(map.tau(gridX[i]), map.tau(gridX[j]));
      const double r0 = airy.eval_R(gridX[i], gridX[j]);
      const double r1 = r0 - c * Q0[i] * Q0[j] * n13;
      const double bracket = P1[i] * P0[j] + P0[i] * P1[j] - Q2[i] * Q0[j] -
                             Q1[i] * Q1[j] - Q0[i] * Q2[j] +
                             20.0 * c * c * u0 * Q0[i] * Q0[j] +
                             0.5 * (3.0 - 20.0 * c * c) * (P0[i] * Q0[j] + Q0[i] * P0[j]);
      const double r2 = r1 + bracket * n13 * n13 / 20.0;
      sup[0] = std::max(sup[0], std::abs(lhs - r0));
      sup[1] = std::max(sup[1], std::abs(lhs - r1));
      sup[2] = std::max(sup[2], std::abs(lhs - r2));
    }
  }
  return sup;
}

QpExpansionReport qp_expansion_residuals(int n, double c, double s,
                                         std::span<const double> gridX,
                                         const ResolventSample& airy,
                                         const AiryFunctionals& fn) {
  const FiniteNState st = finite_state(n, c, s);
  const ScalingMap map{n, c};
  const double n16 = std::pow((double)n, -1.0 / 6.0);
  const double n13 = std::pow((double)n, -1.0 / 3.0);
  const double u0 = fn.u[0], u1 = fn.u[1], u2 = fn.u[2];
  const double v0 = fn.v[0], v1 = fn.v[1];

  const double cq_lin = 0.5 * (2.0 * c - 1.0);
  const double cp_lin = 0.5 * (2.0 * c + 1.0);
  const double cq_quad = 10.0 * c * c - 10.0 * c + 1.5;
  const double cp_quad = 10.0 * c * c + 10.0 * c + 1.5;
  const double cq_v = -30.0 * c * c + 10.0 * c + 1.5;
  const double cp_v = -30.0 * c * c - 10.0 * c + 1.5;
  const double c_pu = -10.0 * c * c + 1.5;

  QpExpansionReport rep;
  auto accumulate = [&](double lhsQ, double lhsP, double Q0x, double Q1x, double Q2x,
                        double P0x, double P1x, double P2x,
                        std::array<double, 3>& outQ, std::array<double, 3>& outP,
                        bool sup) {
    const double q_o0 = Q0x;
    const double q_o1 = q_o0 + (cq_lin * P0x - c * Q0x * u0) * n13;
    const double q_b = cq_quad * Q1x + P2x + cq_v * Q0x * v0 + P1x * v0 + P0x * v1 -
                       Q2x * u0 - Q1x * u1 - Q0x * u2 + c_pu * P0x * u0 +
                       20.0 * c * c * Q0x * u0 * u0;
    const double q_o2 = q_o1 + q_b * n13 * n13 / 20.0;
    const double p_o0 = Q0x;
    const double p_o1 = p_o0 + (cp_lin * P0x - c * Q0x * u0) * n13;
    const double p_b = cp_quad * Q1x + P2x + cp_v * Q0x * v0 + P1x * v0 + P0x * v1 -
                       Q2x * u0 - Q1x * u1 - Q0x * u2 + c_pu * P0x * u0 +
                       20.0 * c * c * Q0x * u0 * u0;
    const double p_o2 = p_o1 + p_b * n13 * n13 / 20.0;
    const double dq[3] = {std::abs(lhsQ - q_o0), std::abs(lhsQ - q_o1),
                          std::abs(lhsQ - q_o2)};
    const double dp[3] = {std::abs(lhsP - p_o0), std::abs(lhsP - p_o1),
                          std::abs(lhsP - p_o2)};
    for (int k = 0; k < 3; ++k) {
      outQ[k] = sup ? std::max(outQ[k], dq[k]) : dq[k];
      outP[k] = sup ? std::max(outP[k], dp[k]) : dp[k];
    }
  };

  for (double X : gridX) {
    const double lhsQ = n16 * st.eval_Qn(map.tau(X));
    const double lhsP = n16 * st.eval_Pn(map.tau(X));
    accumulate(lhsQ, lhsP, airy.eval_Q(0, X), airy.eval_Q(1, X), airy.eval_Q(2, X),
               airy.eval_P(0, X), airy.eval_P(1, X), airy.eval_P(2, X), rep.supQ,
               rep.supP, true);
  }
  // Endpoint scalars against the same expansion at X = s.
  accumulate(n16 * st.qn, n16 * st.pn, fn.q[0], fn.q[1], fn.q[2], fn.p[0], fn.p[1],
             fn.p[2], rep.scalar_q, rep.scalar_p, false);
  return rep;
}

}  // namespace guedge
