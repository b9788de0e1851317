#pragma once

#include <Eigen/Dense>
#include <array>
#include <span>

#include "guedge/airy_ops.hpp"
#include "guedge/quad.hpp"

namespace guedge {

/// Edge scaling x = sqrt(2(n+c)) + X / (sqrt(2) n^{1/6}) with fine-tuning
/// constant c. Strictly increasing in X; requires n + c > 0.
struct ScalingMap {
  int n = 1;
  double c = 0.0;

  double jacobian() const;         // dx/dX = 2^{-1/2} n^{-1/6}
  double tau(double X) const;      // unscaled coordinate
  double inverse(double x) const;  // scaled coordinate
};

/// Christoffel-Darboux form of the Hermite kernel
///   K_n(x,y) = sum_{k<n} phi_k(x) phi_k(y)
///            = sqrt(n/2) (phi_n(x) phi_{n-1}(y) - phi_{n-1}(x) phi_n(y)) / (x-y),
/// with the derivative form on/near the diagonal. n >= 1.
double hermite_kernel(int n, double x, double y);

/// 2^{-1/2} n^{-1/6} K_n(tau(X), tau(Y)): the kernel in edge coordinates.
double scaled_kernel(const ScalingMap& map, double X, double Y);

/// Airy-side expansion of the scaled kernel through the requested order
/// (0, 1 or 2):
///   K_Ai - c Ai Ai n^{-1/3}
///        + [ (X+Y) Ai'Ai' - (X^2+XY+Y^2) Ai Ai
///            + (3-20c^2)/2 (Ai'Ai + Ai Ai') ] n^{-2/3} / 20.
double kernel_expansion_rhs(double c, double X, double Y, int order, int n);

/// n^{-1/6} phi_n(tau(X)) (or phi_{n-1} when nm1), and its Airy-side
/// expansion through the requested order.
double phi_scaled(int n, double c, double X, bool nm1);
double phi_expansion_rhs(double c, double X, int order, int n, bool nm1);

/// Default truncation of the unscaled domain (t, infinity): a fixed window of
/// 40 units in edge-scaled coordinates, T = 40 * 2^{-1/2} n^{-1/6}. Enforced
/// by doubling tests rather than trusted.
double default_hermite_T(int n);

struct FiniteNOptions {
  int m = 100;
  double T = 0.0;  // 0 => default_hermite_T(n)
  bool with_resolvent_kernel = false;
};

/// Discretized finite-n state on (t, t+T): kernel matrix data, the resolvent
/// solves Q_n = (I-K_n)^{-1} phi_n and P_n = (I-K_n)^{-1} phi_{n-1}, the
/// endpoint scalars q_n = Q_n(t;t), p_n = P_n(t;t) by natural Nystrom
/// extension, and det(I - K_n).
///
/// phi_n here carries the (n/2)^{1/4} factor that makes the
/// Christoffel-Darboux form of K_n prefactor-free; that normalization is the
/// one under which d/dt R_n(t,t;t) = -2 q_n p_n and the edge scalings
/// n^{-1/6} q_n -> q(s) hold.
struct FiniteNState {
  int n = 1;
  double c = 0.0;
  double t = 0.0;
  double hat = 1.0;  // (n/2)^{1/4}
  QuadRule rule;
  Eigen::VectorXd phin, phinm1, dphin, dphinm1;  // plain orthonormal samples
  Eigen::VectorXd QnVec, PnVec;
  Eigen::MatrixXd R;  // resolvent kernel at node pairs (optional)
  double qn = 0.0, pn = 0.0;
  double det = 0.0;

  double kernel(double x, double y) const;  // K_n with cached node data
  double eval_Qn(double x) const;
  double eval_Pn(double x) const;
  double eval_R(double x, double y) const;  // needs with_resolvent_kernel
};

/// State at the scaled threshold t = tau(s). s >= -10.
FiniteNState finite_state(int n, double c, double s, const FiniteNOptions& opts = {});

/// State at an unscaled threshold t.
FiniteNState finite_state_unscaled(int n, double t, const FiniteNOptions& opts = {});

/// P(lambda_max <= t) = det(I - K_n) on (t, infinity).
double cdf_fredholm(int n, double t, int m = 100, double T = 0.0);

/// Same distribution through exp(-2 int_t^inf (x-t) q_n(x) p_n(x) dx),
/// where q_n(x) = Q_n(x;x): one fresh resolvent state per outer node.
double cdf_via_qp(int n, double t, int m_outer = 60, int m = 80, double T = 0.0);

/// Sup-norm residuals of the scaled finite-n resolvent against its Airy-side
/// expansion truncated after order 0, 1, 2 on gridX x gridX.
std::array<double, 3> resolvent_expansion_residuals(int n, double c, double s,
                                                    std::span<const double> gridX,
                                                    const ResolventSample& airy);

/// Residuals of n^{-1/6} Q_n(tau(X)) / P_n(tau(X)) and of the endpoint
/// scalars n^{-1/6} q_n, p_n against their expansions.
struct QpExpansionReport {
  std::array<double, 3> supQ{}, supP{};        // over gridX
  std::array<double, 3> scalar_q{}, scalar_p{};  // at X = s
};
QpExpansionReport qp_expansion_residuals(int n, double c, double s,
                                         std::span<const double> gridX,
                                         const ResolventSample& airy,
                                         const AiryFunctionals& fn);

}  // namespace guedge
