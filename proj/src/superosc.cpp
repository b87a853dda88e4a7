#include "bcw/superosc.hpp"

#include <cmath>

#include "bcw/kernels.hpp"

namespace bcw {

namespace {

Complex ipow(Complex base, unsigned n) {
  Complex acc = 1.0;
  while (n != 0) {
    if (n & 1U) acc *= base;
    base *= base;
    n >>= 1U;
  }
  return acc;
}

void require_order(int m) {
  if (m < 1) throw DomainError(Errc::InvalidArgument, "superoscillation order m must be >= 1");
}

// Channel weight for the Laurent index n at channel angle x.
Complex term_weight(int n, int m, double x) {
  if (n >= -1 && n <= 1) return std::polar(1.0, n * x);
  return superosc_eval(m, static_cast<double>(n), x);
}

}  // namespace

std::vector<double> superosc_coeffs(int m, double a) {
  require_order(m);
  const double up = (1.0 + a) / 2.0;
  const double down = (1.0 - a) / 2.0;
  std::vector<double> c(static_cast<std::size_t>(m) + 1);
  double binom = 1.0;
  for (int k = 0; k <= m; ++k) {
    c[static_cast<std::size_t>(k)] = binom * std::pow(up, m - k) * std::pow(down, k);
    binom = binom * (m - k) / (k + 1);
  }
  return c;
}

Complex superosc_eval(int m, double a, double t) {
  require_order(m);
  const double x = t / m;
  const Complex w(std::cos(x), a * std::sin(x));
  if (m <= 512) return ipow(w, static_cast<unsigned>(m));
  // Large m: r^m e^{i m phi} without forming intermediate powers.
  const double log_r = std::log(std::abs(w));
  return std::polar(std::exp(m * log_r), m * std::arg(w));
}

Complex superosc_coeff_sum(int m, double a, double t) {
  const auto c = superosc_coeffs(m, a);
  Complex acc = 0.0;
  for (int k = 0; k <= m; ++k) {
    acc += c[static_cast<std::size_t>(k)] * std::polar(1.0, t * (1.0 - 2.0 * k / m));
  }
  return acc;
}

Bicomplex bc_superosc_eval(const BCSuperoscParams& params, double x, double y) {
  return Bicomplex::from_idempotent(superosc_eval(params.m, params.a, x),
                                    superosc_eval(params.m, params.b, y));
}

BCMatrix approximate_series(const BCLaurentSeries& f, int m, const BoundaryPoint& pt) {
  require_order(m);
  if (f.rows() != f.cols()) throw DomainError(Errc::ShapeMismatch, "approximate_series needs square f");
  const double x = pt.t - pt.s;
  const double y = pt.t + pt.s;
  CMatrix acc1 = CMatrix::Zero(f.rows(), f.cols());
  CMatrix acc2 = CMatrix::Zero(f.rows(), f.cols());
  for (const auto& [n, c] : f.terms()) {
    acc1 += term_weight(n, m, x) * c.p1();
    acc2 += term_weight(n, m, y) * c.p2();
  }
  return BCMatrix::from_channels(acc1, acc2);
}

double approximation_error(const BCLaurentSeries& f, int m, const std::vector<BoundaryPoint>& grid) {
  require_order(m);
  if (f.rows() != f.cols()) throw DomainError(Errc::ShapeMismatch, "approximation_error needs square f");
  std::vector<double> errs(grid.size());
#pragma omp parallel for num_threads(kernels::worker_threads()) schedule(static)
  for (long long k = 0; k < static_cast<long long>(grid.size()); ++k) {
    const auto& pt = grid[static_cast<std::size_t>(k)];
    errs[static_cast<std::size_t>(k)] =
        bc_operator_norm(subtract(eval(f, pt), approximate_series(f, m, pt)));
  }
  double worst = 0.0;
  for (double e : errs) worst = std::max(worst, e);
  return worst;
}

std::vector<BoundaryPoint> boundary_grid(double t_lo, double t_hi, int nt, double s_lo,
                                         double s_hi, int ns) {
  std::vector<BoundaryPoint> grid;
  grid.reserve(static_cast<std::size_t>(std::max(nt, 0) * std::max(ns, 0)));
  const auto node = [](double lo, double hi, int count, int i) {
    return count <= 1 ? lo : lo + (hi - lo) * i / (count - 1);
  };
  for (int i = 0; i < nt; ++i) {
    for (int j = 0; j < ns; ++j) grid.push_back({node(t_lo, t_hi, nt, i), node(s_lo, s_hi, ns, j)});
  }
  return grid;
}

}  // namespace bcw
