#pragma once

#include <vector>

namespace guedge {

/// Hastings-McLeod solution of Painleve II, q'' = s q + 2 q^3, with
/// q ~ Ai(s) as s -> +inf, on a Chebyshev collocation grid. Solved as a
/// two-point boundary value problem by global Newton iteration: integrating
/// leftward from +inf initial data is exponentially unstable, the BVP is not.
struct HMGrid {
  double s_min = 0.0;
  double s_max = 0.0;
  std::vector<double> abscissae;  // Chebyshev points, ascending
  std::vector<double> q;
  std::vector<double> qprime;

  /// Barycentric interpolation (spectrally accurate on this grid).
  double eval_q(double s) const;
  double eval_qprime(double s) const;
};

/// Solves the collocated BVP with boundary data
///   q(s_max) = Ai(s_max),
///   q(s_min) = sqrt(-s_min/2) (1 + 1/(8 s_min^3))   (left asymptote).
/// Requires s_min >= -12, s_max >= 6, npts >= 32. Newton to residual 1e-10;
/// throws NumericError with the final residual on non-convergence.
HMGrid hm_solve(double s_min = -12.0, double s_max = 8.0, int npts = 600);

/// Process-wide cached default grid (the hm_solve defaults above).
const HMGrid& default_hm_grid();

/// u(s) = int_s^{s_max} q^2 (tail beyond s_max dropped; it is below 1e-12 for
/// s_max >= 8), p = q' + u q, v = (u^2 - q^2)/2, all on the grid points.
struct AuxFunctions {
  std::vector<double> u, v, p;
};
AuxFunctions derive_aux(const HMGrid& g);

/// Tracy-Widom integral exp(-int_s^{s_max} (x-s) q(x)^2 dx) for s inside the
/// grid, via Chebyshev coefficient integration of the collocation values.
double f2_from_q(const HMGrid& g, double s);

}  // namespace guedge
