#pragma once

// Rational matrix functions f(z) = D + C (zI - A)^{-1} B and their Laurent
// expansions on the unit circle.
//
// Coefficient convention (validated against DFT of sampled values): with P
// the Riesz projector onto the spectrum of A outside the closed unit disk,
//
//   coefficient of z^{-n}, n >= 1:  C A^{n-1} (I - P) B
//   coefficient of z^{n},  n >= 0:  D delta_{n0} - C (A|ran P)^{-n-1} P B
//
// The stable part of the resolvent produces negative powers of z, the
// unstable part nonnegative ones.

#include <cstddef>
#include <vector>

#include "bcw/series.hpp"

namespace bcw {

inline constexpr double kCircleTol = 1e-8;
inline constexpr std::size_t kQuadratureNodes = 4096;

struct Realization {
  CMatrix A;
  CMatrix B;
  CMatrix C;
  CMatrix D;

  Eigen::Index states() const noexcept { return A.rows(); }
  /// Throws ShapeMismatch.
  void validate() const;
};

struct PoleTerm {
  Complex pole;
  /// H_1 .. H_k: coefficients of (z - pole)^{-1} .. (z - pole)^{-k}.
  std::vector<CMatrix> coeffs;
};

struct PartialFractions {
  CMatrix D;
  std::vector<PoleTerm> poles;
};

struct RieszProjector {
  CMatrix P;
};

enum class RieszMethod { schur, quadrature };

/// Block Jordan-like realization: per pole p_m with k_m terms, A_m has p_m I
/// on the diagonal and I on the superdiagonal, B_m stacks H_1..H_k, and C_m
/// selects the first block row. Not minimal in general. Throws DuplicatePole.
Realization build_realization(const PartialFractions& pf);

CMatrix eval_partial_fractions(const PartialFractions& pf, Complex z);

/// D + C (zI - A)^{-1} B. Throws SingularResolvent.
CMatrix eval_realization(const Realization& r, Complex z);

/// min over eigenvalues of | |lambda| - 1 | > tol.
bool is_regular_on_circle(const CMatrix& a, double tol = kCircleTol);

/// Projector onto the invariant subspace of eigenvalues with |lambda| > 1.
/// Throws EigenvalueOnCircle.
RieszProjector riesz_projection(const CMatrix& a, RieszMethod method = RieszMethod::schur,
                                double tol = kCircleTol, std::size_t nodes = kQuadratureNodes);

/// Laurent coefficient of z^n on the unit circle. Throws EigenvalueOnCircle.
CMatrix fourier_from_realization(const Realization& r, const RieszProjector& p, int n);

/// Coefficients for |n| <= k.
ComplexSeries fourier_series_from_realization(const Realization& r, const RieszProjector& p,
                                              int k);

/// Solves X - a X a* = b b* for spectral radius(a) < 1 by accumulating
/// X <- a X a* + b b*, falling back to a vectorized direct solve when the
/// accumulation is slow. Throws UnstableA.
CMatrix stein_solve(const CMatrix& a, const CMatrix& b, double tol = kCircleTol);

/// Realization of f(z) = w(z) w(1/conj z)^* for the factor
/// w(z) = d + c (zI - a)^{-1} b. Throws SingularA, SingularD, NotStable.
Realization spectral_density_realization(const CMatrix& a, const CMatrix& b, const CMatrix& c,
                                         const CMatrix& d);

/// Fourier coefficient f_k of the same density, any integer k:
/// f_0 = dd* + cXc*, f_k = (db* + cXa*) a*^{k-1} c*, f_{-k} = f_k*.
CMatrix spectral_fourier_coeffs(const CMatrix& a, const CMatrix& b, const CMatrix& c,
                                const CMatrix& d, int k);

/// Pole/residue data of a realization: poles are eigenvalue clusters of A
/// (relative tolerance cluster_tol) and H_k = C (A - p)^{k-1} Pi_p B with Pi_p
/// the spectral projector of the cluster.
PartialFractions partial_fractions(const Realization& r, double cluster_tol = 1e-6);

/// Rebuilds r from sharp-symmetrized partial fractions so that A, B, C, D are
/// all blockwise sharp-symmetric. Returns r unchanged when it already is.
/// Throws OddDimension, NotSharpSymmetric.
Realization sharp_symmetrize_realization(const Realization& r, double tol = 1e-8);

bool is_sharp_symmetric_realization(const Realization& r, double tol = 1e-12);

}  // namespace bcw
