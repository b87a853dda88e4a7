#pragma once

// Bicomplex scalars Z = z1 + j z2 over C(i), with i^2 = j^2 = -1 and k = ij,
// k^2 = +1. Every product, power and inverse goes through the idempotent
// channels
//
//   lambda1 = z1 - i z2,  lambda2 = z1 + i z2,  Z = lambda1 e1 + lambda2 e2,
//
// where e1 = (1 + k)/2 and e2 = (1 - k)/2 are mutually annihilating
// idempotents.

#include <complex>
#include <utility>

namespace bcw {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

struct Channels {
  Complex lambda1;
  Complex lambda2;
};

/// Hyperbolic-valued norm c1 e1 + c2 e2 with c1, c2 >= 0.
struct HyperbolicNorm {
  double c1 = 0.0;
  double c2 = 0.0;
};

enum class Conjugation { bar, dagger, star };
enum class NormKind { dual_lie, lie };

class Bicomplex {
 public:
  constexpr Bicomplex() = default;
  /// Throws DomainError(InvalidArgument) on NaN/Inf components.
  Bicomplex(Complex z1, Complex z2 = {});
  Bicomplex(double re) : Bicomplex(Complex(re, 0.0)) {}

  static Bicomplex from_idempotent(Complex lambda1, Complex lambda2);
  static Bicomplex e1() { return from_idempotent(1.0, 0.0); }
  static Bicomplex e2() { return from_idempotent(0.0, 1.0); }
  static Bicomplex i() { return {kI, 0.0}; }
  static Bicomplex j() { return {0.0, 1.0}; }
  static Bicomplex k() { return {0.0, kI}; }

  Complex z1() const noexcept { return z1_; }
  Complex z2() const noexcept { return z2_; }
  Channels channels() const noexcept { return {z1_ - kI * z2_, z1_ + kI * z2_}; }

  Bicomplex operator-() const { return {-z1_, -z2_}; }
  friend Bicomplex operator+(const Bicomplex& a, const Bicomplex& b) {
    return {a.z1_ + b.z1_, a.z2_ + b.z2_};
  }
  friend Bicomplex operator-(const Bicomplex& a, const Bicomplex& b) {
    return {a.z1_ - b.z1_, a.z2_ - b.z2_};
  }
  friend Bicomplex operator*(const Bicomplex& a, const Bicomplex& b);
  friend bool operator==(const Bicomplex&, const Bicomplex&) = default;

 private:
  Complex z1_{};
  Complex z2_{};
};

std::pair<Complex, Complex> idempotent_decompose(const Bicomplex& z);
Bicomplex mul(const Bicomplex& z, const Bicomplex& w);
Bicomplex pow(const Bicomplex& z, unsigned n);

/// Default relative tolerance for zero-divisor detection: a channel counts as
/// zero when |lambda| <= kInverseTol * dual_lie(Z).
inline constexpr double kInverseTol = 1e-12;

/// Throws DomainError(ZeroDivisor) if either channel is (relatively) zero.
Bicomplex inverse(const Bicomplex& z, double rel_tol = kInverseTol);

Bicomplex conjugate(const Bicomplex& z, Conjugation kind);

/// dual_lie is |lambda1| + |lambda2|, without the conventional 1/2, so that
/// norm(1) == 2.
double norm(const Bicomplex& z, NormKind kind);
HyperbolicNorm hyperbolic_norm(const Bicomplex& z);

/// A point e^{it} e^{js} of the distinguished boundary.
struct BoundaryPoint {
  double t = 0.0;
  double s = 0.0;

  /// Channel arguments on the unit circle: e^{i(t-s)} and e^{i(t+s)}.
  Complex channel1() const { return std::polar(1.0, t - s); }
  Complex channel2() const { return std::polar(1.0, t + s); }
};

Bicomplex boundary_value(const BoundaryPoint& pt);

bool is_hyperbolic_positive(const Bicomplex& z, double tol = 1e-10);

}  // namespace bcw
