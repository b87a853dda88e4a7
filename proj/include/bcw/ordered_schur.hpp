#pragma once

#include <functional>

#include "bcw/linalg.hpp"

namespace bcw {

/// A = U T U* with T upper triangular and the selected eigenvalues occupying
/// the leading `selected` diagonal positions of T.
struct OrderedSchur {
  CMatrix u;
  CMatrix t;
  Eigen::Index selected = 0;
};

using EigenvalueSelector = std::function<bool(Complex)>;

/// Complex Schur form reordered by adjacent Givens swaps so that every
/// eigenvalue with select(lambda) == true comes first. Relative order within
/// each group is preserved.
OrderedSchur ordered_schur(const CMatrix& a, const EigenvalueSelector& select);

/// Solves T11 R - R T22 = T12 for upper triangular T11, T22 with disjoint
/// spectra.
CMatrix solve_triangular_sylvester(const CMatrix& t11, const CMatrix& t22, const CMatrix& t12);

/// Spectral projector onto the invariant subspace of the leading block, along
/// the invariant subspace of the trailing block: U [[I, R], [0, 0]] U*.
CMatrix leading_spectral_projector(const OrderedSchur& s);

CVector eigenvalues(const CMatrix& a);
double spectral_radius(const CMatrix& a);

}  // namespace bcw
