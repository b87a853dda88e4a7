#include "bcw/bicomplex.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bcw/errors.hpp"

namespace bcw {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::ZeroDivisor: return "ZeroDivisor";
    case Errc::NotSharpSymmetric: return "NotSharpSymmetric";
    case Errc::OddDimension: return "OddDimension";
    case Errc::SingularY: return "SingularY";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::NotInvertibleOnBoundary: return "NotInvertibleOnBoundary";
    case Errc::NotPositive: return "NotPositive";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::NotRelated: return "NotRelated";
    case Errc::DuplicatePole: return "DuplicatePole";
    case Errc::SingularResolvent: return "SingularResolvent";
    case Errc::EigenvalueOnCircle: return "EigenvalueOnCircle";
    case Errc::UnstableA: return "UnstableA";
    case Errc::SingularA: return "SingularA";
    case Errc::SingularD: return "SingularD";
    case Errc::NotStable: return "NotStable";
  }
  return "Unknown";
}

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

Complex ipow(Complex base, unsigned n) {
  Complex acc = 1.0;
  while (n != 0) {
    if (n & 1U) acc *= base;
    base *= base;
    n >>= 1U;
  }
  return acc;
}

}  // namespace

Bicomplex::Bicomplex(Complex z1, Complex z2) : z1_(z1), z2_(z2) {
  if (!finite(z1) || !finite(z2)) {
    throw DomainError(Errc::InvalidArgument, "bicomplex components must be finite");
  }
}

Bicomplex Bicomplex::from_idempotent(Complex lambda1, Complex lambda2) {
  return {(lambda1 + lambda2) / 2.0, kI * (lambda1 - lambda2) / 2.0};
}

Bicomplex operator*(const Bicomplex& a, const Bicomplex& b) {
  // (a1 + j a2)(b1 + j b2) = a1 b1 - a2 b2 + j (a1 b2 + a2 b1)
  return {a.z1_ * b.z1_ - a.z2_ * b.z2_, a.z1_ * b.z2_ + a.z2_ * b.z1_};
}

std::pair<Complex, Complex> idempotent_decompose(const Bicomplex& z) {
  const auto c = z.channels();
  return {c.lambda1, c.lambda2};
}

Bicomplex mul(const Bicomplex& z, const Bicomplex& w) {
  const auto a = z.channels();
  const auto b = w.channels();
  return Bicomplex::from_idempotent(a.lambda1 * b.lambda1, a.lambda2 * b.lambda2);
}

Bicomplex pow(const Bicomplex& z, unsigned n) {
  const auto c = z.channels();
  return Bicomplex::from_idempotent(ipow(c.lambda1, n), ipow(c.lambda2, n));
}

Bicomplex inverse(const Bicomplex& z, double rel_tol) {
  const auto c = z.channels();
  const double scale = std::abs(c.lambda1) + std::abs(c.lambda2);
  const double tol = rel_tol * scale;
  if (scale == 0.0 || std::abs(c.lambda1) <= tol || std::abs(c.lambda2) <= tol) {
    std::ostringstream msg;
    msg << "channels (" << c.lambda1 << ", " << c.lambda2 << ") include a zero";
    throw DomainError(Errc::ZeroDivisor, msg.str());
  }
  return Bicomplex::from_idempotent(1.0 / c.lambda1, 1.0 / c.lambda2);
}

Bicomplex conjugate(const Bicomplex& z, Conjugation kind) {
  switch (kind) {
    case Conjugation::bar: return {std::conj(z.z1()), std::conj(z.z2())};
    case Conjugation::dagger: return {z.z1(), -z.z2()};
    case Conjugation::star: return {std::conj(z.z1()), -std::conj(z.z2())};
  }
  return z;
}

double norm(const Bicomplex& z, NormKind kind) {
  const auto c = z.channels();
  const double a = std::abs(c.lambda1);
  const double b = std::abs(c.lambda2);
  return kind == NormKind::dual_lie ? a + b : std::max(a, b);
}

HyperbolicNorm hyperbolic_norm(const Bicomplex& z) {
  const auto c = z.channels();
  return {std::abs(c.lambda1), std::abs(c.lambda2)};
}

Bicomplex boundary_value(const BoundaryPoint& pt) {
  const Complex rot = std::polar(1.0, pt.t);
  return {rot * std::cos(pt.s), rot * std::sin(pt.s)};
}

bool is_hyperbolic_positive(const Bicomplex& z, double tol) {
  const auto c = z.channels();
  return std::abs(c.lambda1.imag()) <= tol && std::abs(c.lambda2.imag()) <= tol &&
         c.lambda1.real() > tol && c.lambda2.real() > tol;
}

}  // namespace bcw
