#pragma once

// Superoscillatory sequences
//
//   F_m(t, a) = (cos(t/m) + i a sin(t/m))^m = sum_k c_k(m, a) e^{it(1 - 2k/m)},
//   c_k(m, a) = C(m, k) ((1 + a)/2)^{m-k} ((1 - a)/2)^k,
//
// whose terms all have frequency in [-1, 1] while F_m(t, a) -> e^{iat}
// uniformly on compact sets. The bicomplex version runs one sequence per
// idempotent channel.

#include <vector>

#include "bcw/series.hpp"

namespace bcw {

struct SuperoscParams {
  int m = 1;
  double a = 0.0;
};

struct BCSuperoscParams {
  int m = 1;
  double a = 0.0;
  double b = 0.0;
};

/// c_0 .. c_m. Throws InvalidArgument if m < 1.
std::vector<double> superosc_coeffs(int m, double a);

/// Closed form (cos(t/m) + i a sin(t/m))^m; log-polar for m > 512.
Complex superosc_eval(int m, double a, double t);

/// sum_k c_k e^{it(1 - 2k/m)}, summed in ascending k.
Complex superosc_coeff_sum(int m, double a, double t);

/// F_m(x, a) e1 + F_m(y, b) e2.
Bicomplex bc_superosc_eval(const BCSuperoscParams& params, double x, double y);

/// f_{-1} Z^{-1} + f_0 + f_1 Z + sum_{n not in {-1,0,1}} f_n F_m(t-s, t+s, n, n)
/// at Z = e^{it} e^{js}. Throws ShapeMismatch for non-square f.
BCMatrix approximate_series(const BCLaurentSeries& f, int m, const BoundaryPoint& pt);

/// Sup over the grid of bc_operator_norm(eval(f) - approximate_series(f)).
double approximation_error(const BCLaurentSeries& f, int m, const std::vector<BoundaryPoint>& grid);

/// nt x ns tensor grid over [t_lo, t_hi] x [s_lo, s_hi], endpoints included.
std::vector<BoundaryPoint> boundary_grid(double t_lo, double t_hi, int nt, double s_lo,
                                         double s_hi, int ns);

}  // namespace bcw
