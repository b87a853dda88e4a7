#pragma once

// Truncated matrix Laurent series sum_n f_n z^n with finite support: the
// computational stand-in for elements of the (bicomplex) Wiener algebra.
//
// A bicomplex series f(Z) = sum f_n Z^n evaluated on the distinguished
// boundary Z = e^{it} e^{js} splits into two ordinary complex series on the
// unit circle: channel 1 at e^{i(t-s)} and channel 2 at e^{i(t+s)}. Every
// transform-based algorithm (inversion, factorization) works channelwise.

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "bcw/errors.hpp"
#include "bcw/linalg.hpp"

namespace bcw {

namespace detail {

inline CMatrix zero_coeff(const CMatrix*, Eigen::Index r, Eigen::Index c) {
  return CMatrix::Zero(r, c);
}
inline BCMatrix zero_coeff(const BCMatrix*, Eigen::Index r, Eigen::Index c) {
  return BCMatrix(r, c);
}
inline CMatrix coeff_product(const CMatrix& a, const CMatrix& b) { return a * b; }
inline BCMatrix coeff_product(const BCMatrix& a, const BCMatrix& b) { return matmul(a, b); }
inline CMatrix coeff_sum(const CMatrix& a, const CMatrix& b) { return a + b; }
inline BCMatrix coeff_sum(const BCMatrix& a, const BCMatrix& b) { return add(a, b); }
inline CMatrix coeff_adjoint(const CMatrix& a) { return a.adjoint(); }
inline BCMatrix coeff_adjoint(const BCMatrix& a) { return star_adjoint(a); }
inline double coeff_norm(const CMatrix& a) { return spectral_norm(a); }
inline double coeff_norm(const BCMatrix& a) { return bc_operator_norm(a); }

}  // namespace detail

template <class Coeff>
class LaurentSeries {
 public:
  using coeff_type = Coeff;

  LaurentSeries() = default;
  LaurentSeries(Eigen::Index rows, Eigen::Index cols) : rows_(rows), cols_(cols) {}

  Eigen::Index rows() const noexcept { return rows_; }
  Eigen::Index cols() const noexcept { return cols_; }
  const std::map<int, Coeff>& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }
  int n_min() const { return terms_.empty() ? 0 : terms_.begin()->first; }
  int n_max() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }

  void set(int n, Coeff c) {
    if (c.rows() != rows_ || c.cols() != cols_) {
      throw DomainError(Errc::ShapeMismatch, "coefficient " + std::to_string(n) +
                                                 " does not match series shape");
    }
    terms_.insert_or_assign(n, std::move(c));
  }

  /// Zero when n is outside the support.
  Coeff coeff(int n) const {
    if (auto it = terms_.find(n); it != terms_.end()) return it->second;
    return detail::zero_coeff(static_cast<const Coeff*>(nullptr), rows_, cols_);
  }

 private:
  Eigen::Index rows_ = 0;
  Eigen::Index cols_ = 0;
  std::map<int, Coeff> terms_;
};

using ChannelSeries = LaurentSeries<CMatrix>;
/// Plain complex matrix series, e.g. the sharp-symmetric image of a bicomplex
/// series.
using ComplexSeries = LaurentSeries<CMatrix>;
using BCLaurentSeries = LaurentSeries<BCMatrix>;

enum class Side { plus, minus };

template <class Coeff>
LaurentSeries<Coeff> add(const LaurentSeries<Coeff>& f, const LaurentSeries<Coeff>& g) {
  if (f.rows() != g.rows() || f.cols() != g.cols()) {
    throw DomainError(Errc::ShapeMismatch, "series add: shapes differ");
  }
  LaurentSeries<Coeff> out = f;
  for (const auto& [n, c] : g.terms()) out.set(n, detail::coeff_sum(out.coeff(n), c));
  return out;
}

template <class Coeff>
LaurentSeries<Coeff> negate(const LaurentSeries<Coeff>& f) {
  LaurentSeries<Coeff> out(f.rows(), f.cols());
  for (const auto& [n, c] : f.terms()) out.set(n, -c);
  return out;
}

template <class Coeff>
LaurentSeries<Coeff> subtract(const LaurentSeries<Coeff>& f, const LaurentSeries<Coeff>& g) {
  return add(f, negate(g));
}

/// Cauchy product. Summation over pairs runs in ascending (i, j) order.
template <class Coeff>
LaurentSeries<Coeff> multiply(const LaurentSeries<Coeff>& f, const LaurentSeries<Coeff>& g) {
  if (f.cols() != g.rows()) {
    throw DomainError(Errc::ShapeMismatch, "series multiply: inner dimensions differ");
  }
  LaurentSeries<Coeff> out(f.rows(), g.cols());
  for (const auto& [i, a] : f.terms()) {
    for (const auto& [j, b] : g.terms()) {
      out.set(i + j, detail::coeff_sum(out.coeff(i + j), detail::coeff_product(a, b)));
    }
  }
  return out;
}

/// The series whose value on the circle is the adjoint of f's: coefficients
/// (f_n)* moved to index -n.
template <class Coeff>
LaurentSeries<Coeff> adjoint(const LaurentSeries<Coeff>& f) {
  LaurentSeries<Coeff> out(f.cols(), f.rows());
  for (const auto& [n, c] : f.terms()) out.set(-n, detail::coeff_adjoint(c));
  return out;
}

/// plus keeps n >= 0, minus keeps n <= 0.
template <class Coeff>
LaurentSeries<Coeff> project(const LaurentSeries<Coeff>& f, Side side) {
  LaurentSeries<Coeff> out(f.rows(), f.cols());
  for (const auto& [n, c] : f.terms()) {
    if ((side == Side::plus && n >= 0) || (side == Side::minus && n <= 0)) out.set(n, c);
  }
  return out;
}

/// Sum of coefficient norms: spectral norm for complex coefficients,
/// ||P1|| + ||P2|| for bicomplex ones.
template <class Coeff>
double wiener_norm(const LaurentSeries<Coeff>& f) {
  double total = 0.0;
  for (const auto& [n, c] : f.terms()) total += detail::coeff_norm(c);
  return total;
}

/// Sum of ||f_n|| over |n| > k.
template <class Coeff>
double tail_mass(const LaurentSeries<Coeff>& f, int k) {
  double total = 0.0;
  for (const auto& [n, c] : f.terms()) {
    if (n > k || n < -k) total += detail::coeff_norm(c);
  }
  return total;
}

/// Keeps only indices in [lo, hi].
template <class Coeff>
LaurentSeries<Coeff> truncate(const LaurentSeries<Coeff>& f, int lo, int hi) {
  LaurentSeries<Coeff> out(f.rows(), f.cols());
  for (const auto& [n, c] : f.terms()) {
    if (n >= lo && n <= hi) out.set(n, c);
  }
  return out;
}

/// Horner evaluation at a point of the unit circle (or any nonzero z).
CMatrix eval(const ChannelSeries& f, Complex z);
/// Value on the circle at angle theta.
CMatrix eval_angle(const ChannelSeries& f, double theta);

BCMatrix eval(const BCLaurentSeries& f, const BoundaryPoint& pt);

std::pair<ChannelSeries, ChannelSeries> split_channels(const BCLaurentSeries& f);
BCLaurentSeries merge_channels(const ChannelSeries& c1, const ChannelSeries& c2);

/// Coefficientwise sharp embedding and its inverse.
ComplexSeries embed_series(const BCLaurentSeries& f);
BCLaurentSeries extract_series(const ComplexSeries& f, double tol = kSharpTol);

/// Every coefficient satisfies F_n = F_n# within tol (relative). Throws
/// OddDimension.
bool is_sharp_symmetric_series(const ComplexSeries& f, double tol = kSharpTol);

using Sampler = std::function<CMatrix(double theta)>;

/// Coefficients for |n| <= k from samples at theta_m = 2 pi m / n_points.
/// Exact for trigonometric polynomials of degree < n_points / 2. The sampler
/// is called concurrently and must be pure. Throws InvalidArgument unless
/// n_points is a power of two with n_points >= 2k + 2.
ChannelSeries coefficients_from_samples(const Sampler& sampler, int k, std::size_t n_points);

/// Same as above from precomputed samples on the uniform grid; returns
/// indices in [lo, hi].
ChannelSeries coefficients_from_grid(const std::vector<CMatrix>& samples, int lo, int hi);

/// Power of two, at least max(256, 8 * (n_max - n_min)).
std::size_t default_grid_size(int n_min, int n_max);

}  // namespace bcw
