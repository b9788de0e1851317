#include "guedge/airy_ops.hpp"

#include <cmath>
#include <vector>

#include "guedge/errors.hpp"
#include "guedge/painleve2.hpp"
#include "guedge/specfun.hpp"
#include "guedge/util.hpp"

namespace guedge {
namespace {

// Kernel row K(X, z_j) against cached node samples; one Airy evaluation.
Eigen::VectorXd kernel_row(double X, const QuadRule& g, const Eigen::VectorXd& ai,
                           const Eigen::VectorXd& aip) {
  const AiryPair v = airy_both(X);
  const int m = g.size();
  Eigen::VectorXd row(m);
  for (int j = 0; j < m; ++j) {
    const double d = X - g.nodes[j];
    if (std::abs(d) > 1e-6) {
      row[j] = (v.ai * aip[j] - ai[j] * v.aip) / d;
    } else {
      row[j] = (v.aip * v.aip - X * v.ai * v.ai) + 0.5 * d * v.ai * v.ai;
    }
  }
  return row;
}

}  // namespace

double airy_kernel(double X, double Y) {
  if (std::abs(X - Y) > 1e-6) {
    const AiryPair a = airy_both(X);
    const AiryPair b = airy_both(Y);
    return (a.ai * b.aip - b.ai * a.aip) / (X - Y);
  }
  // K(X,Y) = Kd((X+Y)/2) + O((X-Y)^2) with Kd(z) = Ai'(z)^2 - z Ai(z)^2 and
  // Kd'(z) = -Ai(z)^2, expanded around X.
  const AiryPair a = airy_both(X);
  return (a.aip * a.aip - X * a.ai * a.ai) - 0.5 * (Y - X) * a.ai * a.ai;
}

ResolventSample build_resolvent(double s, int m, double T) {
  if (s < kAiryRegimeMin)
    throw RegimeError("build_resolvent: s below validity boundary -12");
  ResolventSample rs;
  rs.s = s;
  rs.grid = truncated_halfline(s, T, m);
  rs.ai.resize(m);
  rs.aip.resize(m);
  Eigen::VectorXd ai2(m);  // Ai'' = x Ai
  for (int i = 0; i < m; ++i) {
    const AiryPair v = airy_both(rs.grid.nodes[i]);
    rs.ai[i] = v.ai;
    rs.aip[i] = v.aip;
    ai2[i] = rs.grid.nodes[i] * v.ai;
  }
  const KernelMatrix km = discretize_cd(
      std::span<const double>(rs.ai.data(), m), std::span<const double>(rs.aip.data(), m),
      std::span<const double>(rs.aip.data(), m), std::span<const double>(ai2.data(), m),
      1.0, rs.grid);
  ResolventFactor fac(km);
  for (int i = 0; i < 3; ++i) {
    Eigen::VectorXd fq(m), fp(m);
    for (int j = 0; j < m; ++j) {
      const double xi = std::pow(rs.grid.nodes[j], i);
      fq[j] = xi * rs.ai[j];
      fp[j] = xi * rs.aip[j];
    }
    rs.Qv[i] = fac.solve(fq);
    rs.Pv[i] = fac.solve(fp);
  }
  rs.R = fac.resolvent_kernel_nodes();
  return rs;
}

double ResolventSample::eval_Q(int i, double X) const {
  const Eigen::VectorXd row = kernel_row(X, grid, ai, aip);
  double acc = std::pow(X, i) * airy_ai(X);
  for (int j = 0; j < grid.size(); ++j) acc += grid.weights[j] * row[j] * Qv[i][j];
  return acc;
}

double ResolventSample::eval_P(int i, double X) const {
  const Eigen::VectorXd row = kernel_row(X, grid, ai, aip);
  double acc = std::pow(X, i) * airy_ai_prime(X);
  for (int j = 0; j < grid.size(); ++j) acc += grid.weights[j] * row[j] * Pv[i][j];
  return acc;
}

double ResolventSample::eval_R(double X, double Y) const {
  const int m = grid.size();
  const Eigen::VectorXd rowY = kernel_row(Y, grid, ai, aip);
  // R(Y, z_j) = K(Y, z_j) + sum_i w_i K(Y, z_i) R(z_i, z_j), then symmetry.
  Eigen::VectorXd ry(m);
  for (int j = 0; j < m; ++j) {
    double acc = rowY[j];
    for (int i = 0; i < m; ++i) acc += grid.weights[i] * rowY[i] * R(i, j);
    ry[j] = acc;
  }
  const Eigen::VectorXd rowX = kernel_row(X, grid, ai, aip);
  double acc = airy_kernel(X, Y);
  for (int j = 0; j < m; ++j) acc += grid.weights[j] * rowX[j] * ry[j];
  return acc;
}

AiryFunctionals functionals_from(const ResolventSample& rs) {
  AiryFunctionals f;
  f.s = rs.s;
  const int m = rs.grid.size();
  const Eigen::VectorXd row = kernel_row(rs.s, rs.grid, rs.ai, rs.aip);
  const AiryPair v = airy_both(rs.s);
  for (int i = 0; i < 3; ++i) {
    const double si = std::pow(rs.s, i);
    double q = si * v.ai, p = si * v.aip;
    double u = 0, vv = 0, vt = 0, w = 0;
    for (int j = 0; j < m; ++j) {
      const double wj = rs.grid.weights[j];
      q += wj * row[j] * rs.Qv[i][j];
      p += wj * row[j] * rs.Pv[i][j];
      u += wj * rs.Qv[i][j] * rs.ai[j];
      vv += wj * rs.Pv[i][j] * rs.ai[j];
      vt += wj * rs.Qv[i][j] * rs.aip[j];
      w += wj * rs.Pv[i][j] * rs.aip[j];
    }
    f.q[i] = q;
    f.p[i] = p;
    f.u[i] = u;
    f.v[i] = vv;
    f.vt[i] = vt;
    f.w[i] = w;
  }
  return f;
}

AiryFunctionals functionals(double s, int m, double T) {
  return functionals_from(build_resolvent(s, m, T));
}

double integrate_functionals(double s,
                             const std::function<double(const AiryFunctionals&)>& f,
                             int outer_m, int m, double T) {
  const QuadRule outer = truncated_halfline(s, T, outer_m);
  std::vector<double> vals(outer_m);
  parallel_for(outer_m, [&](std::size_t k) {
    vals[k] = f(functionals(outer.nodes[k], m, T));
  });
  double acc = 0.0;
  for (int k = 0; k < outer_m; ++k) acc += outer.weights[k] * vals[k];
  return acc;
}

double f2_cdf(double s, F2Method method, int m, double T) {
  if (s < kF2RegimeMin) throw RegimeError("f2_cdf: s < -10 is out of regime");
  if (method == F2Method::determinant) {
    const QuadRule grid = truncated_halfline(s, T, m);
    Eigen::VectorXd ai(m), aip(m), ai2(m);
    for (int i = 0; i < m; ++i) {
      const AiryPair v = airy_both(grid.nodes[i]);
      ai[i] = v.ai;
      aip[i] = v.aip;
      ai2[i] = grid.nodes[i] * v.ai;
    }
    const KernelMatrix km = discretize_cd(
        std::span<const double>(ai.data(), m), std::span<const double>(aip.data(), m),
        std::span<const double>(aip.data(), m), std::span<const double>(ai2.data(), m),
        1.0, grid);
    return fredholm_det(km);
  }
  const HMGrid& g = default_hm_grid();
  if (s >= g.s_max) return 1.0;  // tail integral below 1e-15
  return f2_from_q(g, s);
}

}  // namespace guedge
