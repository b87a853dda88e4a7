#pragma once

#include <Eigen/Dense>

#include "bcw/bicomplex.hpp"

namespace bcw {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// p x q bicomplex matrix M = M1 + j M2, stored in cartesian form.
///
/// The idempotent channels are P1 = M1 - i M2 and P2 = M1 + i M2, and
/// M = P1 e1 + P2 e2. Products, adjoints and positivity all act on P1 and P2
/// independently.
class BCMatrix {
 public:
  BCMatrix() = default;
  BCMatrix(Eigen::Index rows, Eigen::Index cols)
      : m1_(CMatrix::Zero(rows, cols)), m2_(CMatrix::Zero(rows, cols)) {}
  /// Throws ShapeMismatch if the two parts differ in shape.
  BCMatrix(CMatrix m1, CMatrix m2);

  static BCMatrix from_channels(const CMatrix& p1, const CMatrix& p2);
  static BCMatrix identity(Eigen::Index n);
  static BCMatrix scalar(const Bicomplex& z);
  /// Z * I_n.
  static BCMatrix scaled_identity(const Bicomplex& z, Eigen::Index n);

  Eigen::Index rows() const noexcept { return m1_.rows(); }
  Eigen::Index cols() const noexcept { return m1_.cols(); }
  const CMatrix& m1() const noexcept { return m1_; }
  const CMatrix& m2() const noexcept { return m2_; }
  CMatrix p1() const { return m1_ - kI * m2_; }
  CMatrix p2() const { return m1_ + kI * m2_; }
  Bicomplex operator()(Eigen::Index r, Eigen::Index c) const { return {m1_(r, c), m2_(r, c)}; }

  BCMatrix operator-() const { return {-m1_, -m2_}; }

 private:
  CMatrix m1_;
  CMatrix m2_;
};

BCMatrix add(const BCMatrix& m, const BCMatrix& n);
BCMatrix subtract(const BCMatrix& m, const BCMatrix& n);
BCMatrix matmul(const BCMatrix& m, const BCMatrix& n);
BCMatrix scale(const BCMatrix& m, const Bicomplex& z);
/// Transpose with the star conjugation applied entrywise; channelwise this is
/// (P1*, P2*).
BCMatrix star_adjoint(const BCMatrix& m);

/// Frobenius distance over both cartesian parts.
double distance(const BCMatrix& m, const BCMatrix& n);

/// 2x2 structure matrix [[0, -1], [1, 0]].
CMatrix sharp_j();

/// Structure matrix for the block-interleaved 2a x 2a layout, I_a (x) J.
/// It is unitary with J_a J_a* = I.
CMatrix sharp_structure(Eigen::Index blocks);

/// Block-interleaved embedding: entry (s,t) becomes the 2x2 block
/// [[z1, -z2], [z2, z1]] at rows 2s..2s+1, cols 2t..2t+1.
CMatrix embed_sharp(const BCMatrix& m);

/// Default relative tolerance for sharp-symmetry tests.
inline constexpr double kSharpTol = 1e-10;

/// Inverse of embed_sharp. Throws OddDimension or NotSharpSymmetric.
BCMatrix extract_sharp(const CMatrix& c, double tol = kSharpTol);

/// C# = J_a C J_b* for the interleaved structure. Throws OddDimension.
CMatrix sharp_conjugate(const CMatrix& c);
bool is_sharp_symmetric(const CMatrix& c, double tol = kSharpTol);

/// Permutation between the interleaved layout and the [[M1, -M2], [M2, M1]]
/// layout: block = perm(2p)^T * interleaved * perm(2q).
Eigen::PermutationMatrix<Eigen::Dynamic> interleave_permutation(Eigen::Index blocks);
CMatrix interleaved_to_block(const CMatrix& c);
CMatrix block_to_interleaved(const CMatrix& c);

/// U = (1/sqrt 2) [[1, 1], [i, -i]], which takes embed_sharp(Z) to
/// diag(lambda1, lambda2).
CMatrix scalar_diagonalizer();

/// Y C Y^{-1}. Throws SingularY or ShapeMismatch.
CMatrix similarity_conjugate(const CMatrix& c, const CMatrix& y);

double spectral_norm(const CMatrix& m);
double min_singular_value(const CMatrix& m);

/// Hermitian (within tol * scale) with smallest eigenvalue >= -tol * scale.
/// A negative tol selects the default 1e-10 relative to the spectral norm.
bool is_hermitian_psd(const CMatrix& m, double tol = -1.0);

/// Both channels Hermitian positive semidefinite.
bool is_positive(const BCMatrix& m, double tol = -1.0);

/// ||P1||_op + ||P2||_op.
double bc_operator_norm(const BCMatrix& m);

}  // namespace bcw
