#pragma once

#include <vector>

namespace guedge {

/// Airy function Ai(x). Absolute error <= 1e-13 on [-20, 20]; underflows
/// gracefully to 0 for large positive x (x >~ 107). Total on finite input.
double airy_ai(double x);

/// Derivative Ai'(x), same accuracy contract as airy_ai.
double airy_ai_prime(double x);

/// Both values in one evaluation (they share all intermediate work).
struct AiryPair {
  double ai;
  double aip;
};
AiryPair airy_both(double x);

/// Orthonormal Hermite oscillator function
///   phi_k(x) = H_k(x) e^{-x^2/2} / (2^k k! sqrt(pi))^{1/2}.
/// Evaluated by the normalized three-term recurrence with an internal
/// power-of-two exponent accumulator, so no intermediate over/underflow occurs
/// even for x up to sqrt(2k)+10 and k up to 10^6. Throws std::invalid_argument
/// for k < 0 or k > 10^6.
double hermite_phi(int k, double x);

/// phi_n, phi_{n-1} and their derivatives at x (n >= 1), one recurrence pass.
/// phi_n'(x) = sqrt(2n) phi_{n-1}(x) - x phi_n(x).
struct HermitePhiEval {
  double phi_n;
  double phi_nm1;
  double dphi_n;
  double dphi_nm1;
};
HermitePhiEval hermite_phi_eval(int n, double x);

/// phi_0(x) .. phi_kmax(x) in one pass. Intended for moderate kmax (direct
/// kernel sums, Gram matrices); individual entries may underflow to 0 far
/// beyond the turning point, which is the correct rounded value.
std::vector<double> hermite_phi_all(int kmax, double x);

/// Error function to ~1 ulp.
double erf(double x);

}  // namespace guedge
