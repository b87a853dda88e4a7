#include "bcw/linalg.hpp"

#include <cmath>
#include <sstream>

#include "bcw/errors.hpp"

namespace bcw {

namespace {

void require_same_shape(const BCMatrix& m, const BCMatrix& n, const char* op) {
  if (m.rows() != n.rows() || m.cols() != n.cols()) {
    std::ostringstream msg;
    msg << op << ": " << m.rows() << "x" << m.cols() << " vs " << n.rows() << "x" << n.cols();
    throw DomainError(Errc::ShapeMismatch, msg.str());
  }
}

void require_even(const CMatrix& c) {
  if (c.rows() % 2 != 0 || c.cols() % 2 != 0) {
    std::ostringstream msg;
    msg << "expected even dimensions, got " << c.rows() << "x" << c.cols();
    throw DomainError(Errc::OddDimension, msg.str());
  }
}

}  // namespace

BCMatrix::BCMatrix(CMatrix m1, CMatrix m2) : m1_(std::move(m1)), m2_(std::move(m2)) {
  if (m1_.rows() != m2_.rows() || m1_.cols() != m2_.cols()) {
    throw DomainError(Errc::ShapeMismatch, "cartesian parts differ in shape");
  }
  if (!m1_.allFinite() || !m2_.allFinite()) {
    throw DomainError(Errc::InvalidArgument, "matrix entries must be finite");
  }
}

BCMatrix BCMatrix::from_channels(const CMatrix& p1, const CMatrix& p2) {
  if (p1.rows() != p2.rows() || p1.cols() != p2.cols()) {
    throw DomainError(Errc::ShapeMismatch, "channels differ in shape");
  }
  return {(p1 + p2) / 2.0, kI * (p1 - p2) / 2.0};
}

BCMatrix BCMatrix::identity(Eigen::Index n) {
  return {CMatrix::Identity(n, n), CMatrix::Zero(n, n)};
}

BCMatrix BCMatrix::scalar(const Bicomplex& z) {
  return {CMatrix::Constant(1, 1, z.z1()), CMatrix::Constant(1, 1, z.z2())};
}

BCMatrix BCMatrix::scaled_identity(const Bicomplex& z, Eigen::Index n) {
  const CMatrix id = CMatrix::Identity(n, n);
  return {z.z1() * id, z.z2() * id};
}

BCMatrix add(const BCMatrix& m, const BCMatrix& n) {
  require_same_shape(m, n, "add");
  return {m.m1() + n.m1(), m.m2() + n.m2()};
}

BCMatrix subtract(const BCMatrix& m, const BCMatrix& n) {
  require_same_shape(m, n, "subtract");
  return {m.m1() - n.m1(), m.m2() - n.m2()};
}

BCMatrix matmul(const BCMatrix& m, const BCMatrix& n) {
  if (m.cols() != n.rows()) {
    std::ostringstream msg;
    msg << "matmul: " << m.rows() << "x" << m.cols() << " times " << n.rows() << "x" << n.cols();
    throw DomainError(Errc::ShapeMismatch, msg.str());
  }
  return BCMatrix::from_channels(m.p1() * n.p1(), m.p2() * n.p2());
}

BCMatrix scale(const BCMatrix& m, const Bicomplex& z) {
  const auto c = z.channels();
  return BCMatrix::from_channels(c.lambda1 * m.p1(), c.lambda2 * m.p2());
}

BCMatrix star_adjoint(const BCMatrix& m) {
  // Entrywise star: conj(z1) - j conj(z2), then transpose.
  return {m.m1().adjoint(), -m.m2().adjoint()};
}

double distance(const BCMatrix& m, const BCMatrix& n) {
  require_same_shape(m, n, "distance");
  return std::sqrt((m.m1() - n.m1()).squaredNorm() + (m.m2() - n.m2()).squaredNorm());
}

CMatrix sharp_j() {
  CMatrix j(2, 2);
  j << 0.0, -1.0, 1.0, 0.0;
  return j;
}

CMatrix sharp_structure(Eigen::Index blocks) {
  CMatrix ja = CMatrix::Zero(2 * blocks, 2 * blocks);
  for (Eigen::Index b = 0; b < blocks; ++b) ja.block(2 * b, 2 * b, 2, 2) = sharp_j();
  return ja;
}

CMatrix embed_sharp(const BCMatrix& m) {
  CMatrix c(2 * m.rows(), 2 * m.cols());
  for (Eigen::Index s = 0; s < m.rows(); ++s) {
    for (Eigen::Index t = 0; t < m.cols(); ++t) {
      const Complex z1 = m.m1()(s, t);
      const Complex z2 = m.m2()(s, t);
      c(2 * s, 2 * t) = z1;
      c(2 * s, 2 * t + 1) = -z2;
      c(2 * s + 1, 2 * t) = z2;
      c(2 * s + 1, 2 * t + 1) = z1;
    }
  }
  return c;
}

CMatrix sharp_conjugate(const CMatrix& c) {
  require_even(c);
  // For the interleaved layout J_a C J_b* acts blockwise:
  // J [[a, b], [c, d]] J* = [[d, -c], [-b, a]].
  CMatrix out(c.rows(), c.cols());
  for (Eigen::Index s = 0; s < c.rows(); s += 2) {
    for (Eigen::Index t = 0; t < c.cols(); t += 2) {
      out(s, t) = c(s + 1, t + 1);
      out(s, t + 1) = -c(s + 1, t);
      out(s + 1, t) = -c(s, t + 1);
      out(s + 1, t + 1) = c(s, t);
    }
  }
  return out;
}

bool is_sharp_symmetric(const CMatrix& c, double tol) {
  require_even(c);
  return (c - sharp_conjugate(c)).norm() <= tol * c.norm();
}

BCMatrix extract_sharp(const CMatrix& c, double tol) {
  require_even(c);
  const double defect = (c - sharp_conjugate(c)).norm();
  if (defect > tol * c.norm()) {
    std::ostringstream msg;
    msg << "||C - C#||_F = " << defect << " exceeds " << tol << " * ||C||_F";
    throw DomainError(Errc::NotSharpSymmetric, msg.str());
  }
  const Eigen::Index p = c.rows() / 2;
  const Eigen::Index q = c.cols() / 2;
  CMatrix m1(p, q);
  CMatrix m2(p, q);
  for (Eigen::Index s = 0; s < p; ++s) {
    for (Eigen::Index t = 0; t < q; ++t) {
      m1(s, t) = c(2 * s, 2 * t);
      m2(s, t) = c(2 * s + 1, 2 * t);
    }
  }
  return {m1, m2};
}

Eigen::PermutationMatrix<Eigen::Dynamic> interleave_permutation(Eigen::Index blocks) {
  // Column k of the block layout (k < blocks: first part, else second part)
  // sits at interleaved index 2k or 2(k - blocks) + 1.
  Eigen::VectorXi idx(2 * blocks);
  for (Eigen::Index k = 0; k < blocks; ++k) {
    idx(k) = static_cast<int>(2 * k);
    idx(k + blocks) = static_cast<int>(2 * k + 1);
  }
  return Eigen::PermutationMatrix<Eigen::Dynamic>(idx);
}

CMatrix interleaved_to_block(const CMatrix& c) {
  require_even(c);
  const auto pr = interleave_permutation(c.rows() / 2);
  const auto pc = interleave_permutation(c.cols() / 2);
  return pr.transpose() * c * pc;
}

CMatrix block_to_interleaved(const CMatrix& c) {
  require_even(c);
  const auto pr = interleave_permutation(c.rows() / 2);
  const auto pc = interleave_permutation(c.cols() / 2);
  return pr * c * pc.transpose();
}

CMatrix scalar_diagonalizer() {
  CMatrix u(2, 2);
  u << 1.0, 1.0, kI, -kI;
  return u / std::sqrt(2.0);
}

CMatrix similarity_conjugate(const CMatrix& c, const CMatrix& y) {
  if (y.rows() != y.cols() || c.rows() != c.cols() || y.rows() != c.rows()) {
    throw DomainError(Errc::ShapeMismatch, "similarity_conjugate needs square, equal shapes");
  }
  Eigen::PartialPivLU<CMatrix> lu(y);
  const double smin = min_singular_value(y);
  if (smin <= 1e-13 * std::max(spectral_norm(y), 1e-300)) {
    throw DomainError(Errc::SingularY, "Y is numerically singular");
  }
  return y * c * lu.inverse();
}

double spectral_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

double min_singular_value(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

bool is_hermitian_psd(const CMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  if (m.size() == 0) return true;
  const double scale = spectral_norm(m);
  const double t = tol < 0.0 ? 1e-10 * scale : tol;
  if ((m - m.adjoint()).norm() > std::max(t, 1e-14 * scale) * 2.0) return false;
  const CMatrix h = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(h, Eigen::EigenvaluesOnly);
  return eig.eigenvalues()(0) >= -t;
}

bool is_positive(const BCMatrix& m, double tol) {
  return is_hermitian_psd(m.p1(), tol) && is_hermitian_psd(m.p2(), tol);
}

double bc_operator_norm(const BCMatrix& m) {
  return spectral_norm(m.p1()) + spectral_norm(m.p2());
}

}  // namespace bcw
