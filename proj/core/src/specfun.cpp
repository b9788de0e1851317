#include "guedge/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace guedge {
namespace {

constexpr double kAi0 = 0.35502805388781723926;    // 3^{-2/3} / Gamma(2/3)
constexpr double kAip0 = -0.25881940379280679841;  // -3^{-1/3} / Gamma(1/3)
constexpr double kSqrtPi = 1.7724538509055160273;
constexpr double kQuarterPi = 0.78539816339744830962;

// One Taylor step for y'' = x y: given (y, y') at a, returns (y, y') at a + h.
// Coefficients obey (k+2)(k+1) c_{k+2} = a c_k + c_{k-1}. The series is
// entire, so the only accuracy limits are truncation (handled by the tail
// test) and cancellation, which stays mild for |h| <= 4.5.
AiryPair airy_taylor_step(double a, double y, double yp, double h) {
  double cm1 = 0.0;  // c_{k-1}
  double c0 = y;     // c_k
  double c1 = yp;    // c_{k+1}
  double hk = 1.0;   // h^k
  double sum = 0.0, dsum = 0.0, maxmag = std::abs(y);
  for (int k = 0; k < 200; ++k) {
    const double term = c0 * hk;
    sum += term;
    dsum += (k + 1) * c1 * hk;
    maxmag = std::max(maxmag, std::abs(term));
    const double c2 = (a * c0 + cm1) / ((k + 2.0) * (k + 1.0));
    cm1 = c0;
    c0 = c1;
    c1 = c2;
    hk *= h;
    // At a = 0 every third coefficient vanishes, so test two consecutive
    // unadded terms before declaring convergence.
    if (k >= 4 && std::abs(c0 * hk) + std::abs(c1 * hk * h) < 1e-21 * maxmag) {
      sum += c0 * hk;
      dsum += (k + 2) * c1 * hk * h;
      break;
    }
  }
  return {sum, dsum};
}

// DLMF 9.7.5 / 9.7.6: exponentially decaying asymptotics for x >> 0.
AiryPair airy_asym_pos(double x) {
  const double sqrtx = std::sqrt(x);
  const double xi = (2.0 / 3.0) * x * sqrtx;
  double uk = 1.0, pw = 1.0, sign = 1.0;
  double su = 1.0, sv = 1.0;
  double prev = 1e300;
  for (int k = 1; k <= 60; ++k) {
    uk *= (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) /
          (216.0 * k * (2.0 * k - 1.0));
    const double vk = uk * (6.0 * k + 1.0) / (1.0 - 6.0 * k);
    pw /= xi;
    sign = -sign;
    const double tu = uk * pw;
    if (tu > prev) break;  // past the optimal truncation point
    prev = tu;
    su += sign * tu;
    sv += sign * vk * pw;
    if (tu < 1e-18) break;
  }
  const double x4 = std::sqrt(sqrtx);  // x^{1/4}
  const double e = std::exp(-xi);
  return {e * su / (2.0 * kSqrtPi * x4), -e * x4 * sv / (2.0 * kSqrtPi)};
}

// DLMF 9.7.9 / 9.7.10: oscillatory asymptotics for x << 0.
AiryPair airy_asym_neg(double x) {
  const double z = -x;
  const double sqrtz = std::sqrt(z);
  const double zeta = (2.0 / 3.0) * z * sqrtz;
  double uk = 1.0, pw = 1.0;
  double pu = 1.0, qu = 0.0, pv = 1.0, qv = 0.0;
  double prev = 1e300;
  for (int k = 1; k <= 60; ++k) {
    uk *= (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) /
          (216.0 * k * (2.0 * k - 1.0));
    const double vk = uk * (6.0 * k + 1.0) / (1.0 - 6.0 * k);
    pw /= zeta;
    const double tu = uk * pw;
    if (tu > prev) break;
    prev = tu;
    const double s = (k / 2) % 2 == 0 ? 1.0 : -1.0;  // (-1)^m, k = 2m or 2m+1
    if (k % 2 == 0) {
      pu += s * tu;
      pv += s * vk * pw;
    } else {
      qu += s * tu;
      qv += s * vk * pw;
    }
    if (tu < 1e-18) break;
  }
  const double ang = zeta - kQuarterPi;
  const double c = std::cos(ang), s = std::sin(ang);
  const double z4 = std::sqrt(sqrtz);  // z^{1/4}
  return {(c * pu + s * qu) / (kSqrtPi * z4), (s * pv - c * qv) * z4 / kSqrtPi};
}

struct LadderEntry {
  double x, ai, aip;
};

// Reference values at spacing 0.25 spanning the region where neither the
// origin series nor an asymptotic expansion delivers 1e-13 on its own.
// Built by marching y'' = xy in the direction along which Ai grows relative
// to Bi, so the marching itself cannot amplify the contamination of the seed.
std::array<LadderEntry, 17> build_pos_ladder() {  // x = 4.5 + 0.25 i
  std::array<LadderEntry, 17> lad{};
  AiryPair v = airy_asym_pos(8.5);
  lad[16] = {8.5, v.ai, v.aip};
  for (int i = 15; i >= 0; --i) {
    v = airy_taylor_step(lad[i + 1].x, lad[i + 1].ai, lad[i + 1].aip, -0.25);
    lad[i] = {4.5 + 0.25 * i, v.ai, v.aip};
  }
  return lad;
}

std::array<LadderEntry, 19> build_neg_ladder() {  // x = -4.5 - 0.25 i
  std::array<LadderEntry, 19> lad{};
  AiryPair v = airy_taylor_step(0.0, kAi0, kAip0, -4.5);
  lad[0] = {-4.5, v.ai, v.aip};
  for (int i = 1; i <= 18; ++i) {
    v = airy_taylor_step(lad[i - 1].x, lad[i - 1].ai, lad[i - 1].aip, -0.25);
    lad[i] = {-4.5 - 0.25 * i, v.ai, v.aip};
  }
  return lad;
}

AiryPair ladder_eval(const LadderEntry& e, double x) {
  if (x == e.x) return {e.ai, e.aip};
  return airy_taylor_step(e.x, e.ai, e.aip, x - e.x);
}

// Keeps the running pair of mantissas within a safe power-of-two window.
// Pure exponent shifts, so no rounding is introduced.
void renorm(double& a, double& b, long& e2) {
  const double m = std::max(std::abs(a), std::abs(b));
  if (m == 0.0 || (m > 0x1p-60 && m < 0x1p60)) return;
  int ex = 0;
  std::frexp(m, &ex);
  a = std::ldexp(a, -ex);
  b = std::ldexp(b, -ex);
  e2 += ex;
}

void check_phi_args(int k) {
  if (k < 0) throw std::invalid_argument("hermite_phi: negative degree");
  if (k > 1000000) throw std::invalid_argument("hermite_phi: degree > 1e6");
}

}  // namespace

AiryPair airy_both(double x) {
  if (x >= -4.5 && x <= 4.5) return airy_taylor_step(0.0, kAi0, kAip0, x);
  if (x > 8.5) return airy_asym_pos(x);
  if (x > 4.5) {
    static const auto lad = build_pos_ladder();
    const int i = std::clamp((int)std::lround((x - 4.5) / 0.25), 0, 16);
    return ladder_eval(lad[i], x);
  }
  if (x >= -9.0) {
    static const auto lad = build_neg_ladder();
    const int i = std::clamp((int)std::lround((-4.5 - x) / 0.25), 0, 18);
    return ladder_eval(lad[i], x);
  }
  return airy_asym_neg(x);
}

double airy_ai(double x) { return airy_both(x).ai; }

double airy_ai_prime(double x) { return airy_both(x).aip; }

double hermite_phi(int k, double x) {
  check_phi_args(k);
  // phi_0 = pi^{-1/4} e^{-x^2/2}, started in (mantissa, exponent) form so the
  // Gaussian factor never underflows before the polynomial growth catches up.
  const double l2 = -x * x * 0.72134752044448170368 - 0.41287403236807969951;
  const double fl = std::floor(l2);
  long e2 = (long)fl;
  double p = std::exp2(l2 - fl);  // phi_0 mantissa
  double pm1 = 0.0;               // phi_{-1}
  for (int j = 0; j < k; ++j) {
    const double pn =
        x * std::sqrt(2.0 / (j + 1)) * p - std::sqrt((double)j / (j + 1)) * pm1;
    pm1 = p;
    p = pn;
    if ((j & 31) == 31) renorm(p, pm1, e2);
  }
  if (e2 < -1400) return 0.0;  // below the subnormal range
  if (e2 > 1400) throw std::overflow_error("hermite_phi: exponent overflow");
  return std::ldexp(p, (int)e2);
}

HermitePhiEval hermite_phi_eval(int n, double x) {
  check_phi_args(n);
  if (n < 1) throw std::invalid_argument("hermite_phi_eval: n must be >= 1");
  const double l2 = -x * x * 0.72134752044448170368 - 0.41287403236807969951;
  const double fl = std::floor(l2);
  long e2 = (long)fl;
  double p = std::exp2(l2 - fl);
  double pm1 = 0.0, pm2 = 0.0;
  for (int j = 0; j < n; ++j) {
    const double pn =
        x * std::sqrt(2.0 / (j + 1)) * p - std::sqrt((double)j / (j + 1)) * pm1;
    pm2 = pm1;
    pm1 = p;
    p = pn;
    if ((j & 31) == 31) {
      const double m = std::max({std::abs(p), std::abs(pm1), std::abs(pm2)});
      if (m > 0 && (m <= 0x1p-60 || m >= 0x1p60)) {
        int ex = 0;
        std::frexp(m, &ex);
        p = std::ldexp(p, -ex);
        pm1 = std::ldexp(pm1, -ex);
        pm2 = std::ldexp(pm2, -ex);
        e2 += ex;
      }
    }
  }
  // phi_n' = sqrt(2n) phi_{n-1} - x phi_n, exact in the scaled coordinates
  const double dp = std::sqrt(2.0 * n) * pm1 - x * p;
  const double dpm1 =
      n >= 2 ? std::sqrt(2.0 * (n - 1)) * pm2 - x * pm1 : -x * pm1;
  HermitePhiEval out{};
  const auto fin = [&](double m) {
    if (e2 < -1400) return 0.0;
    return std::ldexp(m, (int)e2);
  };
  out.phi_n = fin(p);
  out.phi_nm1 = fin(pm1);
  out.dphi_n = fin(dp);
  out.dphi_nm1 = fin(dpm1);
  return out;
}

std::vector<double> hermite_phi_all(int kmax, double x) {
  check_phi_args(kmax);
  std::vector<double> out(kmax + 1);
  const double l2 = -x * x * 0.72134752044448170368 - 0.41287403236807969951;
  const double fl = std::floor(l2);
  long e2 = (long)fl;
  double p = std::exp2(l2 - fl);
  double pm1 = 0.0;
  const auto fin = [&](double m) {
    if (e2 < -1400) return 0.0;
    return std::ldexp(m, (int)e2);
  };
  out[0] = fin(p);
  for (int j = 0; j < kmax; ++j) {
    const double pn =
        x * std::sqrt(2.0 / (j + 1)) * p - std::sqrt((double)j / (j + 1)) * pm1;
    pm1 = p;
    p = pn;
    if ((j & 31) == 31) renorm(p, pm1, e2);
    out[j + 1] = fin(p);
  }
  return out;
}

double erf(double x) { return std::erf(x); }

}  // namespace guedge
