#pragma once

#include <Eigen/Dense>
#include <array>
#include <functional>

#include "guedge/quad.hpp"

namespace guedge {

/// Airy kernel (Ai(X)Ai'(Y) - Ai(Y)Ai'(X)) / (X - Y); for |X-Y| <= 1e-6 the
/// diagonal limit Ai'(X)^2 - X Ai(X)^2 with a first-order correction in Y-X.
double airy_kernel(double X, double Y);

inline constexpr double kAiryDefaultT = 40.0;
inline constexpr int kAiryDefaultM = 100;
inline constexpr double kAiryRegimeMin = -12.0;  // det(I-K) leaves double range below
inline constexpr double kF2RegimeMin = -10.0;

/// Nystrom resolvent data for the Airy kernel on (s, s+T): node values of the
/// resolvent kernel R(X,Y;s) and of Q_i = (I-K)^{-1} x^i Ai and
/// P_i = (I-K)^{-1} x^i Ai' for i = 0,1,2, plus natural Nystrom extensions
/// for evaluating everything off the nodes.
struct ResolventSample {
  double s = 0.0;
  QuadRule grid;
  Eigen::MatrixXd R;
  std::array<Eigen::VectorXd, 3> Qv;
  std::array<Eigen::VectorXd, 3> Pv;
  Eigen::VectorXd ai;   // Ai at nodes
  Eigen::VectorXd aip;  // Ai' at nodes

  double eval_Q(int i, double X) const;
  double eval_P(int i, double X) const;
  double eval_R(double X, double Y) const;
};

ResolventSample build_resolvent(double s, int m = kAiryDefaultM,
                                double T = kAiryDefaultT);

/// Scalar limit functionals at left endpoint s:
///   q_i = Q_i(s;s), p_i = P_i(s;s),
///   u_i = (Q_i, Ai), v_i = (P_i, Ai), vt_i = (Q_i, Ai'), w_i = (P_i, Ai'),
/// inner products on L^2(s, infinity).
struct AiryFunctionals {
  double s = 0.0;
  std::array<double, 3> q{}, p{}, u{}, v{}, vt{}, w{};
};

AiryFunctionals functionals(double s, int m = kAiryDefaultM,
                            double T = kAiryDefaultT);
AiryFunctionals functionals_from(const ResolventSample& rs);

/// Outer integral \int_s^inf f(functionals(x)) dx over a Gauss rule on
/// (s, s+T), one resolvent factorization per outer node, nodes evaluated in
/// parallel. Backbone of the composed integral identities.
double integrate_functionals(double s,
                             const std::function<double(const AiryFunctionals&)>& f,
                             int outer_m = 200, int m = kAiryDefaultM,
                             double T = kAiryDefaultT);

enum class F2Method { determinant, q_integral };

/// Tracy-Widom distribution F_2(s), either as det(I - K_Ai) on (s, inf) or as
/// exp(-int_s^inf (x-s) q(x)^2 dx) with q the Hastings-McLeod solution.
/// Requires s >= -10.
double f2_cdf(double s, F2Method method, int m = kAiryDefaultM,
              double T = kAiryDefaultT);

}  // namespace guedge
