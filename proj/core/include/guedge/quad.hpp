#pragma once

#include <Eigen/Dense>
#include <functional>
#include <span>
#include <vector>

namespace guedge {

/// Quadrature rule on the truncated interval [a, a+length]. Immutable after
/// construction; nodes strictly increasing, weights positive, sum of weights
/// equals length to rounding.
struct QuadRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  double a = 0.0;
  double length = 0.0;

  int size() const { return static_cast<int>(nodes.size()); }
};

/// Gauss-Legendre rule on [-1, 1] with m points (1 <= m <= 2000), computed by
/// Newton iteration on the Legendre three-term recurrence. Nodes/weights are
/// accurate to ~1e-15.
QuadRule gauss_legendre(int m);

/// Affine image of gauss_legendre(m) on [a, a+T], realizing the half line
/// (a, infinity) as a truncated interval. T > 0.
QuadRule truncated_halfline(double a, double T, int m);

/// Symmetric Nystrom discretization of an integral operator:
///   A_ij = sqrt(w_i) K(x_i, x_j) sqrt(w_j).
/// det(I - A) and the resolvent solves below are then plain dense algebra.
struct KernelMatrix {
  Eigen::MatrixXd A;
  QuadRule rule;
};

KernelMatrix discretize(const std::function<double(double, double)>& kernel,
                        const QuadRule& rule);

/// Same discretization but from precomputed node samples of a
/// Christoffel-Darboux-form kernel  pref * (a(x) b(y) - a(y) b(x)) / (x - y),
/// with the exact derivative formula on the diagonal. Used by both the Airy
/// and Hermite kernels; avoids re-evaluating the special functions per entry.
KernelMatrix discretize_cd(std::span<const double> aval,
                           std::span<const double> bval,
                           std::span<const double> da,
                           std::span<const double> db, double pref,
                           const QuadRule& rule);

/// det(I - A) by pivoted LU. Throws SingularSystemError when the determinant
/// is <= 0 within tolerance (operator out of regime) and NumericError when
/// the factorization itself produced a non-finite value.
double fredholm_det(const KernelMatrix& km);

/// Solves (I - K) g = f in the weighted coordinates and returns g at the
/// nodes; f holds function values at the nodes.
std::vector<double> resolvent_apply(const KernelMatrix& km,
                                    std::span<const double> f);

/// Reusable factorization of (I - A) for repeated solves against one kernel
/// discretization. solve() works in function-value coordinates.
class ResolventFactor {
 public:
  explicit ResolventFactor(const KernelMatrix& km);

  Eigen::VectorXd solve(const Eigen::VectorXd& f_at_nodes) const;
  double det() const { return det_; }
  const QuadRule& rule() const { return rule_; }

  /// Node values of the resolvent kernel R = (I-K)^{-1} K (function-value
  /// coordinates, symmetric).
  Eigen::MatrixXd resolvent_kernel_nodes() const;

 private:
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
  Eigen::VectorXd sqw_;  // sqrt of weights
  QuadRule rule_;
  double det_ = 0.0;
};

}  // namespace guedge
