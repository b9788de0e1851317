#include "guedge/checks.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "guedge/airy_ops.hpp"
#include "guedge/edgeworth.hpp"
#include "guedge/gue_mc.hpp"
#include "guedge/hermite_n.hpp"
#include "guedge/painleve2.hpp"
#include "guedge/quad.hpp"
#include "guedge/specfun.hpp"
#include "guedge/util.hpp"

namespace guedge {
namespace {

struct CheckSpec {
  int criterion;
  std::string description;
  double tolerance;
  // fills measured (and optionally detail); pass is decided by the caller
  std::function<double(std::string&)> run;
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// --- criterion 1 ---------------------------------------------------------

double tw_cross_route(std::string& detail) {
  const HMGrid& g = default_hm_grid();
  double worst = 0.0;
  for (double s : {-8.0, -6.0, -4.0, -2.0, 0.0, 2.0, 4.0}) {
    const double det = f2_cdf(s, F2Method::determinant);
    const double qi = f2_from_q(g, s);
    worst = std::max(worst, std::abs(det - qi));
  }
  detail = "sup over s in {-8..4} of |F2_det - F2_qint|";
  return worst;
}

// --- criterion 2 ---------------------------------------------------------

double finite_n_cross_route(std::string& detail) {
  const int ns[] = {1, 2, 4, 8, 16};
  const double ss[] = {-2.0, 0.0, 2.0};
  const double cs[] = {0.0, 1.0};
  struct Case {
    int n;
    double s, c;
  };
  std::vector<Case> cases;
  for (int n : ns)
    for (double s : ss)
      for (double c : cs) cases.push_back({n, s, c});
  std::vector<double> errs(cases.size());
  parallel_for(cases.size(), [&](std::size_t i) {
    const ScalingMap map{cases[i].n, cases[i].c};
    const double t = map.tau(cases[i].s);
    errs[i] = std::abs(cdf_via_qp(cases[i].n, t) - cdf_fredholm(cases[i].n, t));
  });
  double worst = 0.0;
  for (double e : errs) worst = std::max(worst, e);
  detail = "n in {1,2,4,8,16}, s in {-2,0,2}, c in {0,1}";
  return worst;
}

// --- criterion 3 ---------------------------------------------------------

double n1_closed_form(std::string& detail) {
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const double t = -2.25 + 0.5 * i;
    const double closed = 0.5 * (1.0 + guedge::erf(t));
    worst = std::max(worst, std::abs(cdf_fredholm(1, t) - closed));
  }
  detail = "F_{1,2}(t) vs (1+erf t)/2 at 10 thresholds";
  return worst;
}

double n1_median(std::string& detail) {
  detail = "F_{1,2}(0) vs 1/2";
  return std::abs(cdf_fredholm(1, 0.0) - 0.5);
}

// --- criterion 4 ---------------------------------------------------------

const std::vector<double>& identity_s_grid() {
  static const std::vector<double> s{-4.0, -2.0, 0.0, 2.0};
  return s;
}

double identity_u0_derivative(std::string& detail) {
  double worst = 0.0;
  const double h = 1e-4;
  for (double s : identity_s_grid()) {
    const AiryFunctionals fp = functionals(s + h);
    const AiryFunctionals fm = functionals(s - h);
    const AiryFunctionals f0 = functionals(s);
    const double du = (fp.u[0] - fm.u[0]) / (2.0 * h);
    worst = std::max(worst, std::abs(du + f0.q[0] * f0.q[0]));
  }
  detail = "u_0' = -q_0^2 by central differences";
  return worst;
}

double identity_v0_derivative(std::string& detail) {
  double worst = 0.0;
  const double h = 1e-4;
  for (double s : identity_s_grid()) {
    const AiryFunctionals fp = functionals(s + h);
    const AiryFunctionals fm = functionals(s - h);
    const AiryFunctionals f0 = functionals(s);
    const double dv = (fp.v[0] - fm.v[0]) / (2.0 * h);
    worst = std::max(worst, std::abs(dv + f0.p[0] * f0.q[0]));
  }
  detail = "v_0' = -p_0 q_0 by central differences";
  return worst;
}

double identity_q1(std::string& detail) {
  double worst = 0.0;
  for (double s : identity_s_grid()) {
    const AiryFunctionals f = functionals(s);
    const double rhs = s * f.q[0] - f.v[0] * f.q[0] + f.u[0] * f.p[0];
    worst = std::max(worst, std::abs(f.q[1] - rhs));
  }
  detail = "q_1 = s q_0 - v_0 q_0 + u_0 p_0";
  return worst;
}

double identity_u1_w0(std::string& detail) {
  double worst = 0.0;
  for (double s : identity_s_grid()) {
    const AiryFunctionals f = functionals(s);
    worst = std::max(worst, std::abs(f.u[1] - f.u[0] * f.v[0] + f.w[0] +
                                     f.p[0] * f.q[0]));
  }
  detail = "u_1 - u_0 v_0 + w_0 = -p_0 q_0";
  return worst;
}

double identity_matching(std::string& detail) {
  double worst = 0.0;
  for (double s : identity_s_grid()) {
    const double lhs = integrate_functionals(s, [](const AiryFunctionals& f) {
      return 6.0 * f.u[1] + 2.0 * f.v[2] + 2.0 * f.v[1] * f.v[0] -
             2.0 * f.u[2] * f.u[0] - f.u[1] * f.u[1] - 2.0 * f.w[0];
    });
    const AiryFunctionals f = functionals(s);
    const double rhs =
        2.0 * f.w[1] - 3.0 * f.u[2] + f.u[1] * f.v[0] - f.u[0] * f.vt[1];
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  detail = "integral of (6u_1+2v_2+2v_1v_0-2u_2u_0-u_1^2-2w_0) vs 2w_1-3u_2+u_1v_0-u_0 vt_1";
  return worst;
}

// --- criterion 5 ---------------------------------------------------------

double edgeworth_slope(int order, double c, double target, std::string& detail) {
  const int n_list[] = {16, 32, 64, 128, 256, 512};
  const OrderEstimate est = order_estimate(c, 0.0, n_list);
  detail = "slope " + fmt(est.slopes[order]) + " target " + fmt(target) +
           (est.at_noise_floor[order] ? " (noise floor hit)" : "");
  if (est.slopes[order] < target - 0.26)
    detail += " -- residual decays FASTER than the stated band: at c=0 the"
              " n^{-1} coefficient vanishes and the remainder is O(n^{-4/3})";
  return std::abs(est.slopes[order] - target);
}

// --- criterion 6 ---------------------------------------------------------

double kernel_expansion_slope(std::string& detail) {
  const double X = 0.3, Y = -0.2, c = 0.5;
  std::vector<double> ns, errs;
  for (int n = 64; n <= 4096; n *= 2) {
    const ScalingMap map{n, c};
    const double lhs = scaled_kernel(map, X, Y);
    const double rhs = kernel_expansion_rhs(c, X, Y, 2, n);
    ns.push_back((double)n);
    errs.push_back(std::abs(lhs - rhs));
  }
  const double slope = fit_loglog_slope(ns, errs);
  detail = "slope " + fmt(slope) + " target -1";
  return std::abs(slope + 1.0);
}

// --- criterion 7 ---------------------------------------------------------

std::vector<double> comparator_grid() {
  std::vector<double> g;
  for (int i = 0; i < 10; ++i) g.push_back(-2.0 + 4.0 * i / 9.0);
  return g;
}

double resolvent_expansion_slope(std::string& detail) {
  const double c = 1.0, s = -0.5;
  const ResolventSample airy = build_resolvent(s);
  const std::vector<double> grid = comparator_grid();
  const int n_list[] = {64, 128, 256, 512, 1024};
  std::vector<double> ns, errs(5);
  parallel_for(5, [&](std::size_t i) {
    errs[i] = resolvent_expansion_residuals(n_list[i], c, s, grid, airy)[2];
  });
  for (int n : n_list) ns.push_back((double)n);
  const double slope = fit_loglog_slope(ns, errs);
  detail = "order-2 resolvent residual slope " + fmt(slope) + " target -1";
  return std::abs(slope + 1.0);
}

double qp_expansion_slope(std::string& detail) {
  const double c = 1.0, s = -0.5;
  const ResolventSample airy = build_resolvent(s);
  const AiryFunctionals fn = functionals_from(airy);
  const std::vector<double> grid = comparator_grid();
  const int n_list[] = {64, 128, 256, 512, 1024};
  std::vector<double> ns, errQ(5), errP(5);
  parallel_for(5, [&](std::size_t i) {
    const QpExpansionReport rep =
        qp_expansion_residuals(n_list[i], c, s, grid, airy, fn);
    errQ[i] = rep.supQ[2];
    errP[i] = rep.supP[2];
  });
  for (int n : n_list) ns.push_back((double)n);
  const double slopeQ = fit_loglog_slope(ns, errQ);
  const double slopeP = fit_loglog_slope(ns, errP);
  detail = "order-2 Q_n slope " + fmt(slopeQ) + ", P_n slope " + fmt(slopeP) +
           " target -1";
  return std::max(std::abs(slopeQ + 1.0), std::abs(slopeP + 1.0));
}

// --- criterion 8 ---------------------------------------------------------

double logdet_derivative_identity(std::string& detail) {
  // Sign convention fixed by the rank-one closed form: det grows with t, so
  // d/dt log det(I-K_n) = +R_n(t,t;t), consistent with the companion derivative identity and with the
  // double-integral representation of the distribution.
  const int n = 8;
  const double h = 1e-4;
  double worst = 0.0;
  FiniteNOptions opts;
  opts.with_resolvent_kernel = true;
  for (double t : {3.5, 4.0, 4.5}) {
    const double dlog = (std::log(cdf_fredholm(n, t + h)) -
                         std::log(cdf_fredholm(n, t - h))) /
                        (2.0 * h);
    const FiniteNState st = finite_state_unscaled(n, t, opts);
    const double rtt = st.eval_R(t, t);
    worst = std::max(worst, std::abs(dlog - rtt) / std::abs(rtt));
  }
  detail = "d/dt log det(I-K_n) vs R_n(t,t;t), n=8";
  return worst;
}

double resolvent_derivative_identity(std::string& detail) {
  const int n = 8;
  const double h = 1e-4;
  double worst = 0.0;
  FiniteNOptions opts;
  opts.with_resolvent_kernel = true;
  for (double t : {3.5, 4.0, 4.5}) {
    const FiniteNState sp = finite_state_unscaled(n, t + h, opts);
    const FiniteNState sm = finite_state_unscaled(n, t - h, opts);
    const double drtt = (sp.eval_R(t + h, t + h) - sm.eval_R(t - h, t - h)) /
                        (2.0 * h);
    const FiniteNState st = finite_state_unscaled(n, t);
    const double rhs = -2.0 * st.qn * st.pn;
    worst = std::max(worst, std::abs(drtt - rhs) / std::abs(rhs));
  }
  detail = "d/dt R_n(t,t;t) vs -2 q_n p_n, n=8";
  return worst;
}

// --- criterion 9 ---------------------------------------------------------

double mc_agreement(std::string& detail) {
  double worst = 0.0;
  for (int n : {2, 4, 8}) {
    SamplerConfig cfg;
    cfg.n = n;
    cfg.num_samples = 100000;
    cfg.seed = 42;
    const std::vector<double> draws = sample_lambda_max(cfg);
    // 20-point grid across the bulk of the distribution
    const double lo = std::sqrt(2.0 * n) - 2.2, hi = std::sqrt(2.0 * n) + 1.2;
    for (int i = 0; i < 20; ++i) {
      const double t = lo + (hi - lo) * i / 19.0;
      const auto [p, hw] = empirical_cdf(draws, t);
      const double f = cdf_fredholm(n, t);
      worst = std::max(worst, std::abs(p - f) / hw);
    }
  }
  detail = "max |empirical - Fredholm| / (3-sigma halfwidth), n in {2,4,8}, N=1e5";
  return worst;
}

// --- criterion 10 --------------------------------------------------------

double variant_adjudication(std::string& detail) {
  double err_v1 = 0.0, err_vt = 0.0;
  for (double s : {-2.0, 0.0, 2.0}) {
    const double bracket = bracket_integral(s, 1.0);
    const AiryFunctionals f = functionals(s);
    err_v1 = std::max(err_v1, std::abs(bracket + ec2_from(f, 1.0, Ec2Variant::v1)));
    err_vt =
        std::max(err_vt, std::abs(bracket + ec2_from(f, 1.0, Ec2Variant::v1_tilde)));
  }
  const double tol = 1e-5;
  const bool v1_ok = err_v1 < tol, vt_ok = err_vt < tol;
  const bool exactly_one = v1_ok != vt_ok;
  const bool default_ok = (kEc2Default == Ec2Variant::v1) ? v1_ok : vt_ok;
  detail = std::string("|bracket + E_c2|: v1 variant ") + fmt(err_v1) +
           ", v1_tilde variant " + fmt(err_vt) + "; shipped default is " +
           (kEc2Default == Ec2Variant::v1 ? "v1" : "v1_tilde");
  if (!exactly_one || !default_ok) return 1.0;  // forced failure with detail
  return (kEc2Default == Ec2Variant::v1) ? err_v1 : err_vt;
}

const std::map<std::string, CheckSpec>& registry() {
  static const std::map<std::string, CheckSpec> reg = {
      {"tw-cross-route",
       {1, "Tracy-Widom determinant route vs q-integral route", 1e-7, tw_cross_route}},
      {"finite-n-cross-route",
       {2, "finite-n Fredholm determinant vs q_n p_n double integral", 1e-7,
        finite_n_cross_route}},
      {"n1-closed-form",
       {3, "F_{1,2}(t) = (1+erf t)/2 at 10 thresholds", 1e-10, n1_closed_form}},
      {"n1-median", {3, "F_{1,2}(0) = 1/2", 1e-12, n1_median}},
      {"identity-u0-derivative",
       {4, "u_0' = -q_0^2 (finite differences)", 1e-6, identity_u0_derivative}},
      {"identity-v0-derivative",
       {4, "v_0' = -p_0 q_0 (finite differences)", 1e-6, identity_v0_derivative}},
      {"identity-q1",
       {4, "q_1 = s q_0 - v_0 q_0 + u_0 p_0", 1e-8, identity_q1}},
      {"identity-u1-w0",
       {4, "u_1 - u_0 v_0 + w_0 = -p_0 q_0", 1e-8, identity_u1_w0}},
      {"identity-matching",
       {4, "first-moment integral identity", 1e-5, identity_matching}},
      {"edgeworth-order-0",
       {5, "residual slope -1/3 (order 0, c=1, s=0)", 0.1,
        [](std::string& d) { return edgeworth_slope(0, 1.0, -1.0 / 3.0, d); }}},
      {"edgeworth-order-1",
       {5, "residual slope -2/3 (order 1, c=1, s=0)", 0.1,
        [](std::string& d) { return edgeworth_slope(1, 1.0, -2.0 / 3.0, d); }}},
      {"edgeworth-order-2",
       {5, "residual slope -1 (order 2, c=0, s=0)", 0.25,
        [](std::string& d) { return edgeworth_slope(2, 0.0, -1.0, d); }}},
      {"kernel-expansion-slope",
       {6, "scaled kernel minus order-2 expansion decays like 1/n", 0.2,
        kernel_expansion_slope}},
      {"resolvent-expansion-slope",
       {7, "resolvent expansion order-2 residual slope -1", 0.25, resolvent_expansion_slope}},
      {"qp-expansion-slope",
       {7, "Q_n/P_n expansion order-2 residual slope -1", 0.25, qp_expansion_slope}},
      {"logdet-derivative-identity",
       {8, "-d/dt log det = R_n(t,t;t) at n=8", 1e-4, logdet_derivative_identity}},
      {"resolvent-derivative-identity",
       {8, "d/dt R_n(t,t;t) = -2 q_n p_n at n=8", 1e-4, resolvent_derivative_identity}},
      {"mc-agreement",
       {9, "empirical CDF inside 3-sigma band of the determinant", 1.0,
        mc_agreement}},
      {"variant-adjudication",
       {10, "exactly one E_c2 variant matches the integral form", 1e-5,
        variant_adjudication}},
  };
  return reg;
}

}  // namespace

std::vector<std::string> check_names() {
  std::vector<std::string> names;
  for (const auto& [name, spec] : registry()) names.push_back(name);
  return names;
}

CheckResult run_check(const std::string& name, double tol_scale) {
  const auto it = registry().find(name);
  if (it == registry().end())
    throw std::invalid_argument("run_check: unknown check '" + name + "'");
  const CheckSpec& spec = it->second;
  CheckResult res;
  res.name = name;
  res.criterion = spec.criterion;
  res.description = spec.description;
  res.tolerance = spec.tolerance * tol_scale;
  const auto start = std::chrono::steady_clock::now();
  res.measured = spec.run(res.detail);
  res.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  res.pass = res.measured <= res.tolerance;
  return res;
}

std::vector<CheckResult> run_all_checks(double tol_scale) {
  std::vector<CheckResult> out;
  for (const auto& [name, spec] : registry()) out.push_back(run_check(name, tol_scale));
  return out;
}

}  // namespace guedge
