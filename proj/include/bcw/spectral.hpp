#pragma once

// Inversion and spectral factorization in the bicomplex Wiener algebra.
//
// Both run on the idempotent channels: a bicomplex series is invertible
// (positive) on the distinguished boundary iff each channel is invertible
// (positive) on the unit circle, so everything reduces to two independent
// complex problems on a uniform grid, solved pointwise and brought back to
// coefficients by DFT.

#include <array>
#include <cstddef>
#include <optional>

#include "bcw/series.hpp"

namespace bcw {

enum class Normalization {
  pd0,     // f+ coefficient 0 Hermitian positive definite
  at_one,  // f+(1) = I; requires f(1) = I
};

struct FactorOptions {
  /// Truncation degree of the factor; defaults to the degree of f.
  std::optional<int> K;
  /// Grid size (power of two); defaults to a size derived from f and K.
  std::optional<std::size_t> N;
  double newton_tol = 1e-10;
  int max_iter = 60;
  /// Smallest admissible eigenvalue on the grid; defaults to 1e-10 * ||f||.
  std::optional<double> pd_tol;
  Normalization normalization = Normalization::pd0;
  /// Tolerances for the at_one precondition and the sharp-symmetry
  /// certificate of the sharp route.
  double at_one_tol = 1e-8;
  double sharp_tol = 1e-8;
};

struct InversionResult {
  BCLaurentSeries inverse;
  /// sup ||f g - I|| over both channels on a grid twice as fine as N.
  double residual = 0.0;
  /// Mass of recovered coefficients beyond |n| = K.
  double tail_mass = 0.0;
  int K = 0;
  std::size_t N = 0;
};

struct ChannelInversion {
  ChannelSeries inverse;
  double residual = 0.0;
  double tail_mass = 0.0;
};

/// Throws NotInvertibleOnBoundary when some channel value on the grid has
/// smallest singular value <= tol * max(1, ||channel||).
ChannelInversion invert_channel(const ChannelSeries& f, int k, std::size_t n, double tol,
                                int channel = 1);
InversionResult invert(const BCLaurentSeries& f, int k, std::size_t n, double tol = 1e-10);

struct ChannelFactorization {
  ChannelSeries factor;
  /// sup ||f - f+ f+*|| on a grid twice as fine as N.
  double residual = 0.0;
  double relative_residual = 0.0;
  int iterations = 0;
  double tail_mass = 0.0;
  int K = 0;
  std::size_t N = 0;
};

/// Wilson's Newton-type iteration W <- W (causal_half(W^{-1} f W^{-*}) + I/2)
/// on one channel, where causal_half keeps positive frequencies and half the
/// constant term. Throws NotPositive, NoConvergence.
ChannelFactorization factorize_channel(const ChannelSeries& f, const FactorOptions& opts,
                                       int channel = 1);

struct FactorizationResult {
  BCLaurentSeries factor;
  double residual = 0.0;
  double relative_residual = 0.0;
  std::array<int, 2> iterations{};
  double tail_mass = 0.0;
  int K = 0;
  std::size_t N = 0;
};

/// f = f+ star(f+) with f+ causal.
FactorizationResult spectral_factorize(const BCLaurentSeries& f, const FactorOptions& opts = {});

struct UnitaryCertificate {
  CMatrix u;
  /// sup-grid ||a U - b||.
  double residual = 0.0;
  /// ||U* U - I||_F.
  double unitarity_defect = 0.0;
};

/// U = a_0^{-1} b_0, certified unitary with a U = b. Throws NotRelated.
UnitaryCertificate factor_uniqueness_unitary(const ComplexSeries& a, const ComplexSeries& b,
                                             double tol = 1e-6);
std::array<UnitaryCertificate, 2> factor_uniqueness_unitary(const BCLaurentSeries& a,
                                                            const BCLaurentSeries& b,
                                                            double tol = 1e-6);

struct SharpFactorization {
  ComplexSeries factor;
  double residual = 0.0;
  double relative_residual = 0.0;
  int iterations = 0;
  /// max_n ||F+_n - (F+_n)#|| / ||F+|| before symmetrization.
  double symmetry_defect = 0.0;
};

/// Factorizes a sharp-symmetric 2p x 2p series as a plain complex one, then
/// symmetrizes and certifies the factor. Throws NotSharpSymmetric plus the
/// errors of factorize_channel.
SharpFactorization sharp_route_factorize(const ComplexSeries& f, const FactorOptions& opts = {});

}  // namespace bcw
