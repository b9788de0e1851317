#pragma once

#include <array>
#include <span>
#include <vector>

#include "guedge/airy_ops.hpp"

namespace guedge {

/// The second-order coefficient E_{c,2} exists in two candidate readings that
/// differ in whether the mixed first-moment inner product enters as
/// v_1 = (P_1, Ai) together with the cubic terms u_0 v_0^2 - u_0^2 w_0, or as
/// vt_1 = (Q_1, Ai') replacing v_1 with the cubic terms kept. They agree only
/// if vt_1 = v_1 - v_0^2 + u_0 w_0; the consistency check against
/// bracket_integral adjudicates numerically which one assembles correctly.
enum class Ec2Variant { v1, v1_tilde };

/// Adjudicated default (the variant that matches the integral form).
inline constexpr Ec2Variant kEc2Default = Ec2Variant::v1;

/// E_{c,2}(s) = 2 w_1 - 3 u_2 + (3 - 20 c^2) v_0 + u_1 v_0 - u_0 v_1
///              + u_0 v_0^2 - u_0^2 w_0.
double ec2_from(const AiryFunctionals& f, double c, Ec2Variant v = kEc2Default);
double ec2(double s, double c, Ec2Variant v = kEc2Default);

/// Integral form of the second-order coefficient (equals -E_{c,2}):
///   (20 c^2 - 3) v_0(s)
///   + int_s^inf (-6 u_1 - 2 v_2 - 2 v_1 v_0 + 2 u_2 u_0 + u_1^2 + 2 w_0)(x) dx.
double bracket_integral(double s, double c, int outer_m = 200);

/// All per-s ingredients of the expansion, computed once and reusable across n.
struct EdgeworthTerms {
  double s = 0.0;
  double c = 0.0;
  double f2 = 0.0;
  double term1 = 0.0;           // c * u_0(s)
  double term2_closed = 0.0;    // -E_{c,2}(s) / 20
  double term2_integral = 0.0;  // bracket_integral / 20

  /// F_2(s) { 1 + term1 n^{-1/3} [order>=1] + term2_closed n^{-2/3} [order>=2] }
  double assembled(int n, int order) const;
};

EdgeworthTerms edgeworth_terms(double s, double c, bool with_integral_form = false,
                               Ec2Variant v = kEc2Default);

/// F_2(s) { 1 + c u_0 n^{-1/3} - E_{c,2}/20 n^{-2/3} } truncated at order.
double edgeworth_cdf(int n, double c, double s, int order,
                     Ec2Variant v = kEc2Default);

/// Log-log slope fits of |cdf_fredholm(n, tau(s)) - assembled(n, order)| over
/// n_list, per order. Residuals at the determinant noise floor make the fit
/// meaningless; they are flagged, not failed.
struct OrderEstimate {
  std::vector<int> n_list;
  std::array<std::vector<double>, 3> residuals;
  std::array<double, 3> slopes{};
  std::array<bool, 3> at_noise_floor{};
};

OrderEstimate order_estimate(double c, double s, std::span<const int> n_list,
                             Ec2Variant v = kEc2Default);

}  // namespace guedge
