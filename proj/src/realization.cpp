#include "bcw/realization.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bcw/kernels.hpp"
#include "bcw/ordered_schur.hpp"

namespace bcw {

namespace {

void shape_error(const std::string& what) { throw DomainError(Errc::ShapeMismatch, what); }

void require_regular(const CMatrix& a, double tol) {
  const CVector ev = eigenvalues(a);
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (std::abs(std::abs(ev(i)) - 1.0) <= tol) {
      std::ostringstream msg;
      msg << "eigenvalue " << ev(i) << " lies within " << tol << " of the unit circle";
      throw DomainError(Errc::EigenvalueOnCircle, msg.str());
    }
  }
}

bool is_singular(const CMatrix& m, double rel = 1e-12) {
  return m.rows() != m.cols() || min_singular_value(m) <= rel * std::max(spectral_norm(m), 1e-300);
}

// Orthonormal basis of the range of a projector (its nonzero singular values
// are all >= 1).
CMatrix projector_range(const CMatrix& p) {
  if (p.rows() == 0) return CMatrix(0, 0);
  Eigen::JacobiSVD<CMatrix> svd(p, Eigen::ComputeFullU);
  Eigen::Index rank = 0;
  while (rank < svd.singularValues().size() && svd.singularValues()(rank) > 0.5) ++rank;
  return svd.matrixU().leftCols(rank);
}

struct CoefficientEngine {
  const Realization& r;
  CMatrix stable_b;    // (I - P) B
  CMatrix complement;  // I - P
  CMatrix basis;       // orthonormal basis of ran P
  Eigen::PartialPivLU<CMatrix> restricted;  // A restricted to ran P
  CMatrix unstable_b;  // basis* P B

  CoefficientEngine(const Realization& real, const RieszProjector& proj) : r(real) {
    const Eigen::Index n = r.states();
    complement = CMatrix::Identity(n, n) - proj.P;
    stable_b = complement * r.B;
    basis = projector_range(proj.P);
    if (basis.cols() > 0) {
      restricted.compute(basis.adjoint() * r.A * basis);
      unstable_b = basis.adjoint() * proj.P * r.B;
    }
  }

  // Coefficients of z^{-1}, ..., z^{-count}.
  std::vector<CMatrix> negative(int count) const {
    std::vector<CMatrix> out;
    CMatrix x = stable_b;
    for (int j = 1; j <= count; ++j) {
      if (j > 1) x = complement * (r.A * x);
      out.push_back(r.C * x);
    }
    return out;
  }

  // Coefficients of z^0, ..., z^{count-1}.
  std::vector<CMatrix> nonnegative(int count) const {
    std::vector<CMatrix> out;
    CMatrix y = unstable_b;
    for (int j = 0; j < count; ++j) {
      CMatrix coeff = j == 0 ? r.D : CMatrix::Zero(r.D.rows(), r.D.cols());
      if (basis.cols() > 0) {
        y = restricted.solve(y);
        coeff -= r.C * basis * y;
      }
      out.push_back(std::move(coeff));
    }
    return out;
  }
};

CMatrix inverse_adjoint(const CMatrix& a) { return a.partialPivLu().inverse().adjoint(); }

void check_density_inputs(const CMatrix& a, const CMatrix& b, const CMatrix& c, const CMatrix& d) {
  if (a.rows() != a.cols() || b.rows() != a.rows() || c.cols() != a.rows() ||
      d.rows() != c.rows() || d.cols() != b.cols()) {
    shape_error("spectral density: (a, b, c, d) shapes are inconsistent");
  }
  if (is_singular(a)) throw DomainError(Errc::SingularA, "a is not invertible");
  if (is_singular(d)) throw DomainError(Errc::SingularD, "d is not invertible");
  const double rho_a = spectral_radius(a);
  if (rho_a >= 1.0) {
    std::ostringstream msg;
    msg << "spectral radius of a is " << rho_a;
    throw DomainError(Errc::NotStable, msg.str());
  }
  const CMatrix zeros = a - b * d.partialPivLu().solve(c);
  const double rho_z = spectral_radius(zeros);
  if (rho_z >= 1.0) {
    std::ostringstream msg;
    msg << "spectral radius of a - b d^{-1} c is " << rho_z;
    throw DomainError(Errc::NotStable, msg.str());
  }
}

}  // namespace

void Realization::validate() const {
  const Eigen::Index n = A.rows();
  if (A.cols() != n || B.rows() != n || C.cols() != n || D.rows() != C.rows() ||
      D.cols() != B.cols()) {
    std::ostringstream msg;
    msg << "realization shapes A " << A.rows() << "x" << A.cols() << ", B " << B.rows() << "x"
        << B.cols() << ", C " << C.rows() << "x" << C.cols() << ", D " << D.rows() << "x"
        << D.cols();
    shape_error(msg.str());
  }
}

Realization build_realization(const PartialFractions& pf) {
  const Eigen::Index a = pf.D.rows();
  const Eigen::Index b = pf.D.cols();
  Eigen::Index states = 0;
  for (std::size_t m = 0; m < pf.poles.size(); ++m) {
    const auto& term = pf.poles[m];
    if (term.coeffs.empty()) shape_error("pole with no coefficients");
    for (const auto& h : term.coeffs) {
      if (h.rows() != a || h.cols() != b) shape_error("partial fraction coefficient shape differs from D");
    }
    for (std::size_t l = 0; l < m; ++l) {
      if (std::abs(pf.poles[l].pole - term.pole) <= 1e-12 * std::max(1.0, std::abs(term.pole))) {
        std::ostringstream msg;
        msg << "pole " << term.pole << " appears at positions " << l << " and " << m;
        throw DomainError(Errc::DuplicatePole, msg.str());
      }
    }
    states += static_cast<Eigen::Index>(term.coeffs.size()) * a;
  }

  Realization r{CMatrix::Zero(states, states), CMatrix::Zero(states, b), CMatrix::Zero(a, states),
                pf.D};
  Eigen::Index offset = 0;
  for (const auto& term : pf.poles) {
    const auto k = static_cast<Eigen::Index>(term.coeffs.size());
    for (Eigen::Index i = 0; i < k; ++i) {
      r.A.block(offset + i * a, offset + i * a, a, a) = term.pole * CMatrix::Identity(a, a);
      if (i + 1 < k) r.A.block(offset + i * a, offset + (i + 1) * a, a, a).setIdentity();
      r.B.block(offset + i * a, 0, a, b) = term.coeffs[static_cast<std::size_t>(i)];
    }
    r.C.block(0, offset, a, a).setIdentity();
    offset += k * a;
  }
  return r;
}

CMatrix eval_partial_fractions(const PartialFractions& pf, Complex z) {
  CMatrix acc = pf.D;
  for (const auto& term : pf.poles) {
    Complex inv = 1.0 / (z - term.pole);
    Complex power = inv;
    for (const auto& h : term.coeffs) {
      acc += power * h;
      power *= inv;
    }
  }
  return acc;
}

CMatrix eval_realization(const Realization& r, Complex z) {
  r.validate();
  if (r.states() == 0) return r.D;
  CMatrix shifted = -r.A;
  shifted.diagonal().array() += z;
  const Eigen::PartialPivLU<CMatrix> lu(shifted);
  if (!(lu.rcond() > 1e-13)) {
    std::ostringstream msg;
    msg << "zI - A is singular at z = " << z;
    throw DomainError(Errc::SingularResolvent, msg.str());
  }
  return r.D + r.C * lu.solve(r.B);
}

bool is_regular_on_circle(const CMatrix& a, double tol) {
  const CVector ev = eigenvalues(a);
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (std::abs(std::abs(ev(i)) - 1.0) <= tol) return false;
  }
  return true;
}

RieszProjector riesz_projection(const CMatrix& a, RieszMethod method, double tol,
                                std::size_t nodes) {
  if (a.rows() != a.cols()) shape_error("riesz_projection needs a square matrix");
  require_regular(a, tol);
  const Eigen::Index n = a.rows();
  if (method == RieszMethod::schur) {
    const auto schur = ordered_schur(a, [](Complex lambda) { return std::abs(lambda) > 1.0; });
    return {leading_spectral_projector(schur)};
  }
  return {CMatrix::Identity(n, n) - kernels::resolvent_contour(a, nodes)};
}

CMatrix fourier_from_realization(const Realization& r, const RieszProjector& p, int n) {
  r.validate();
  require_regular(r.A, kCircleTol);
  const CoefficientEngine engine(r, p);
  if (n < 0) return engine.negative(-n).back();
  return engine.nonnegative(n + 1).back();
}

ComplexSeries fourier_series_from_realization(const Realization& r, const RieszProjector& p,
                                              int k) {
  r.validate();
  require_regular(r.A, kCircleTol);
  const CoefficientEngine engine(r, p);
  ComplexSeries out(r.D.rows(), r.D.cols());
  const auto neg = engine.negative(k);
  const auto pos = engine.nonnegative(k + 1);
  for (int j = 1; j <= k; ++j) out.set(-j, neg[static_cast<std::size_t>(j - 1)]);
  for (int j = 0; j <= k; ++j) out.set(j, pos[static_cast<std::size_t>(j)]);
  return out;
}

CMatrix stein_solve(const CMatrix& a, const CMatrix& b, double tol) {
  if (a.rows() != a.cols() || b.rows() != a.rows()) shape_error("stein_solve: shapes of a, b");
  const double rho = spectral_radius(a);
  if (rho >= 1.0 - tol) {
    std::ostringstream msg;
    msg << "spectral radius of a is " << rho;
    throw DomainError(Errc::UnstableA, msg.str());
  }
  const CMatrix bb = b * b.adjoint();
  const Eigen::Index m = a.rows();
  CMatrix x = bb;
  bool converged = false;
  for (int iter = 0; iter < 5000; ++iter) {
    CMatrix next = a * x * a.adjoint() + bb;
    const double step = (next - x).norm();
    x = std::move(next);
    if (step <= 1e-15 * x.norm()) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    // vec(a X a*) = (conj(a) (x) a) vec(X) for column-major vec.
    CMatrix kron(m * m, m * m);
    for (Eigen::Index i = 0; i < m; ++i) {
      for (Eigen::Index j = 0; j < m; ++j) kron.block(i * m, j * m, m, m) = std::conj(a(i, j)) * a;
    }
    const CMatrix lhs = CMatrix::Identity(m * m, m * m) - kron;
    const CVector vec = lhs.partialPivLu().solve(bb.reshaped());
    x = vec.reshaped(m, m);
  }
  return (x + x.adjoint()) / 2.0;
}

Realization spectral_density_realization(const CMatrix& a, const CMatrix& b, const CMatrix& c,
                                         const CMatrix& d) {
  check_density_inputs(a, b, c, d);
  const Eigen::Index m = a.rows();
  const CMatrix a_inv_star = inverse_adjoint(a);
  const CMatrix inner = d.adjoint() - b.adjoint() * a_inv_star * c.adjoint();

  Realization r;
  r.A = CMatrix::Zero(2 * m, 2 * m);
  r.A.topLeftCorner(m, m) = a;
  r.A.topRightCorner(m, m) = -b * b.adjoint() * a_inv_star;
  r.A.bottomRightCorner(m, m) = a_inv_star;
  r.B = CMatrix(2 * m, b.cols());
  r.B.topRows(m) = b * inner;
  r.B.bottomRows(m) = a_inv_star * c.adjoint();
  r.C = CMatrix(c.rows(), 2 * m);
  r.C.leftCols(m) = c;
  r.C.rightCols(m) = -d * b.adjoint() * a_inv_star;
  r.D = d * inner;
  return r;
}

CMatrix spectral_fourier_coeffs(const CMatrix& a, const CMatrix& b, const CMatrix& c,
                                const CMatrix& d, int k) {
  check_density_inputs(a, b, c, d);
  const CMatrix x = stein_solve(a, b);
  if (k == 0) return d * d.adjoint() + c * x * c.adjoint();
  const int order = std::abs(k);
  CMatrix acc = d * b.adjoint() + c * x * a.adjoint();
  for (int j = 1; j < order; ++j) acc = acc * a.adjoint();
  acc = acc * c.adjoint();
  return k > 0 ? acc : CMatrix(acc.adjoint());
}

PartialFractions partial_fractions(const Realization& r, double cluster_tol) {
  r.validate();
  PartialFractions pf{r.D, {}};
  if (r.states() == 0) return pf;

  // Greedy clustering of the spectrum.
  const CVector ev = eigenvalues(r.A);
  std::vector<std::vector<Complex>> clusters;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    bool placed = false;
    for (auto& cl : clusters) {
      if (std::abs(cl.front() - ev(i)) <= cluster_tol * std::max(1.0, std::abs(ev(i)))) {
        cl.push_back(ev(i));
        placed = true;
        break;
      }
    }
    if (!placed) clusters.push_back({ev(i)});
  }

  const double scale = std::max({spectral_norm(r.B) * spectral_norm(r.C), 1e-300});
  for (const auto& cl : clusters) {
    Complex center = 0.0;
    for (Complex z : cl) center += z;
    center /= static_cast<double>(cl.size());
    const double radius = cluster_tol * std::max(1.0, std::abs(center));
    const auto schur = ordered_schur(r.A, [&](Complex z) {
      return std::abs(z - center) <= 2.0 * radius + 1e-300;
    });
    const CMatrix proj = leading_spectral_projector(schur);
    CMatrix shifted = r.A;
    shifted.diagonal().array() -= center;

    PoleTerm term{center, {}};
    CMatrix x = proj * r.B;
    for (std::size_t j = 0; j < cl.size(); ++j) {
      if (j > 0) x = shifted * x;
      term.coeffs.push_back(r.C * x);
    }
    while (!term.coeffs.empty() && spectral_norm(term.coeffs.back()) <= 1e-10 * scale) {
      term.coeffs.pop_back();
    }
    if (!term.coeffs.empty()) pf.poles.push_back(std::move(term));
  }
  return pf;
}

bool is_sharp_symmetric_realization(const Realization& r, double tol) {
  const auto ok = [tol](const CMatrix& m) {
    return m.size() == 0 || ((m.rows() % 2 == 0) && (m.cols() % 2 == 0) && is_sharp_symmetric(m, tol));
  };
  return ok(r.A) && ok(r.B) && ok(r.C) && ok(r.D);
}

Realization sharp_symmetrize_realization(const Realization& r, double tol) {
  r.validate();
  if (r.D.rows() % 2 != 0 || r.D.cols() % 2 != 0) {
    throw DomainError(Errc::OddDimension, "sharp symmetry needs even output/input dimensions");
  }
  if (is_sharp_symmetric_realization(r)) return r;

  PartialFractions pf = partial_fractions(r);
  pf.D = (pf.D + sharp_conjugate(pf.D)) / 2.0;
  for (auto& term : pf.poles) {
    for (auto& h : term.coeffs) h = (h + sharp_conjugate(h)) / 2.0;
  }
  Realization out = build_realization(pf);

  // Sharp averaging must not move the values on the circle.
  constexpr int kChecks = 64;
  double scale = 0.0;
  double worst = 0.0;
  for (int i = 0; i < kChecks; ++i) {
    const Complex z = std::polar(1.0, kernels::grid_angle(static_cast<std::size_t>(i), kChecks) + 0.1);
    const CMatrix before = eval_realization(r, z);
    scale = std::max(scale, spectral_norm(before));
    worst = std::max(worst, spectral_norm(before - eval_realization(out, z)));
  }
  if (worst > tol * std::max(scale, 1.0)) {
    std::ostringstream msg;
    msg << "sharp averaging changes circle values by " << worst;
    throw DomainError(Errc::NotSharpSymmetric, msg.str());
  }
  return out;
}

}  // namespace bcw
