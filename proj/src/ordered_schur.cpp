#include "bcw/ordered_schur.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace bcw {

namespace {

// Swaps the diagonal entries k and k+1 of the triangular factor in place.
void swap_adjacent(CMatrix& t, CMatrix& u, Eigen::Index k) {
  const Complex a = t(k, k);
  const Complex b = t(k + 1, k + 1);
  const Complex c = t(k, k + 1);
  if (a == b) return;
  // (c, b - a) is the eigenvector of [[a, c], [0, b]] for eigenvalue b; a
  // unitary with that first column moves b to the top.
  const Complex v1 = c;
  const Complex v2 = b - a;
  const double r = std::hypot(std::abs(v1), std::abs(v2));
  const Complex g11 = v1 / r;
  const Complex g21 = v2 / r;
  CMatrix g(2, 2);
  g << g11, -std::conj(g21), g21, std::conj(g11);

  t.middleRows(k, 2) = (g.adjoint() * t.middleRows(k, 2)).eval();
  t.middleCols(k, 2) = (t.middleCols(k, 2) * g).eval();
  u.middleCols(k, 2) = (u.middleCols(k, 2) * g).eval();
  t(k + 1, k) = 0.0;
  t(k, k) = b;
  t(k + 1, k + 1) = a;
}

}  // namespace

OrderedSchur ordered_schur(const CMatrix& a, const EigenvalueSelector& select) {
  OrderedSchur out;
  const Eigen::Index n = a.rows();
  if (n == 0) {
    out.u = CMatrix(0, 0);
    out.t = CMatrix(0, 0);
    return out;
  }
  Eigen::ComplexSchur<CMatrix> schur(a);
  out.u = schur.matrixU();
  out.t = schur.matrixT();
  out.t.triangularView<Eigen::StrictlyLower>().setZero();

  // Bubble each selected eigenvalue up to the end of the leading block.
  Eigen::Index next = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!select(out.t(i, i))) continue;
    for (Eigen::Index k = i; k > next; --k) swap_adjacent(out.t, out.u, k - 1);
    ++next;
  }
  out.selected = next;
  return out;
}

CMatrix solve_triangular_sylvester(const CMatrix& t11, const CMatrix& t22, const CMatrix& t12) {
  const Eigen::Index k = t11.rows();
  const Eigen::Index m = t22.rows();
  CMatrix r = CMatrix::Zero(k, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    // (T11 - t22(j,j) I) r_j = t12_j + sum_{i<j} r_i t22(i,j)
    CVector rhs = t12.col(j);
    for (Eigen::Index i = 0; i < j; ++i) rhs += r.col(i) * t22(i, j);
    CMatrix shifted = t11;
    shifted.diagonal().array() -= t22(j, j);
    r.col(j) = shifted.triangularView<Eigen::Upper>().solve(rhs);
  }
  return r;
}

CMatrix leading_spectral_projector(const OrderedSchur& s) {
  const Eigen::Index n = s.t.rows();
  const Eigen::Index k = s.selected;
  CMatrix pt = CMatrix::Zero(n, n);
  if (k == 0) return pt;
  pt.topLeftCorner(k, k).setIdentity();
  if (k < n) {
    pt.topRightCorner(k, n - k) = solve_triangular_sylvester(
        s.t.topLeftCorner(k, k), s.t.bottomRightCorner(n - k, n - k), s.t.topRightCorner(k, n - k));
  }
  return s.u * pt * s.u.adjoint();
}

CVector eigenvalues(const CMatrix& a) {
  if (a.rows() == 0) return CVector(0);
  Eigen::ComplexEigenSolver<CMatrix> eig(a, false);
  return eig.eigenvalues();
}

double spectral_radius(const CMatrix& a) {
  if (a.rows() == 0) return 0.0;
  return eigenvalues(a).cwiseAbs().maxCoeff();
}

}  // namespace bcw
