#include "guedge/edgeworth.hpp"

#include <cmath>
#include <stdexcept>

#include "guedge/hermite_n.hpp"
#include "guedge/util.hpp"

namespace guedge {

double ec2_from(const AiryFunctionals& f, double c, Ec2Variant variant) {
  const double v1 = variant == Ec2Variant::v1 ? f.v[1] : f.vt[1];
  return 2.0 * f.w[1] - 3.0 * f.u[2] + (3.0 - 20.0 * c * c) * f.v[0] +
         f.u[1] * f.v[0] - f.u[0] * v1 + f.u[0] * f.v[0] * f.v[0] -
         f.u[0] * f.u[0] * f.w[0];
}

double ec2(double s, double c, Ec2Variant variant) {
  return ec2_from(functionals(s), c, variant);
}

double bracket_integral(double s, double c, int outer_m) {
  const AiryFunctionals at_s = functionals(s);
  const double integral = integrate_functionals(
      s,
      [](const AiryFunctionals& f) {
        return -6.0 * f.u[1] - 2.0 * f.v[2] - 2.0 * f.v[1] * f.v[0] +
               2.0 * f.u[2] * f.u[0] + f.u[1] * f.u[1] + 2.0 * f.w[0];
      },
      outer_m);
  return (20.0 * c * c - 3.0) * at_s.v[0] + integral;
}

double EdgeworthTerms::assembled(int n, int order) const {
  if (order < 0 || order > 2)
    throw std::invalid_argument("EdgeworthTerms: order must be 0, 1 or 2");
  const double n13 = std::pow((double)n, -1.0 / 3.0);
  double factor = 1.0;
  if (order >= 1) factor += term1 * n13;
  if (order >= 2) factor += term2_closed * n13 * n13;
  return f2 * factor;
}

EdgeworthTerms edgeworth_terms(double s, double c, bool with_integral_form,
                               Ec2Variant variant) {
  EdgeworthTerms t;
  t.s = s;
  t.c = c;
  t.f2 = f2_cdf(s, F2Method::determinant);
  const AiryFunctionals f = functionals(s);
  t.term1 = c * f.u[0];
  t.term2_closed = -ec2_from(f, c, variant) / 20.0;
  t.term2_integral = with_integral_form ? bracket_integral(s, c) / 20.0 : 0.0;
  return t;
}

double edgeworth_cdf(int n, double c, double s, int order, Ec2Variant variant) {
  if (n < 1) throw std::invalid_argument("edgeworth_cdf: n must be >= 1");
  return edgeworth_terms(s, c, false, variant).assembled(n, order);
}

OrderEstimate order_estimate(double c, double s, std::span<const int> n_list,
                             Ec2Variant variant) {
  if (n_list.size() < 4)
    throw std::invalid_argument("order_estimate: need at least 4 n values");
  OrderEstimate est;
  est.n_list.assign(n_list.begin(), n_list.end());
  const EdgeworthTerms terms = edgeworth_terms(s, c, false, variant);

  const std::size_t count = n_list.size();
  std::vector<double> exact(count);
  parallel_for(count, [&](std::size_t i) {
    const ScalingMap map{n_list[i], c};
    exact[i] = cdf_fredholm(n_list[i], map.tau(s));
  });

  std::vector<double> ns(count);
  for (std::size_t i = 0; i < count; ++i) ns[i] = (double)n_list[i];
  for (int order = 0; order < 3; ++order) {
    auto& res = est.residuals[order];
    res.resize(count);
    bool floor_hit = false;
    for (std::size_t i = 0; i < count; ++i) {
      res[i] = std::abs(exact[i] - terms.assembled(n_list[i], order));
      if (res[i] < 1e-8) floor_hit = true;
    }
    est.slopes[order] = fit_loglog_slope(ns, res);
    est.at_noise_floor[order] = floor_hit;
  }
  return est;
}

}  // namespace guedge
