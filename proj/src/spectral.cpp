#include "bcw/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bcw/fourier.hpp"
#include "bcw/kernels.hpp"

namespace bcw {

namespace {

void require_square(Eigen::Index rows, Eigen::Index cols, const char* op) {
  if (rows != cols) {
    std::ostringstream msg;
    msg << op << " needs a square series, got " << rows << "x" << cols;
    throw DomainError(Errc::ShapeMismatch, msg.str());
  }
}

void require_grid(std::size_t n, int k) {
  if (!fourier::is_power_of_two(n) || n < static_cast<std::size_t>(2 * k + 2)) {
    std::ostringstream msg;
    msg << "grid size N = " << n << " must be a power of two >= 2K + 2 = " << 2 * k + 2;
    throw DomainError(Errc::InvalidArgument, msg.str());
  }
}

int degree(const ChannelSeries& f) { return std::max(std::abs(f.n_min()), std::abs(f.n_max())); }

double sup_distance(const std::vector<CMatrix>& a, const std::vector<CMatrix>& b) {
  double worst = 0.0;
  for (std::size_t m = 0; m < a.size(); ++m) worst = std::max(worst, spectral_norm(a[m] - b[m]));
  return worst;
}

std::vector<CMatrix> gram(const std::vector<CMatrix>& w) {
  std::vector<CMatrix> out(w.size());
  for (std::size_t m = 0; m < w.size(); ++m) out[m] = w[m] * w[m].adjoint();
  return out;
}

// Keeps strictly positive frequencies and half of frequency zero, in place.
void causal_half(std::vector<CMatrix>& grid) {
  const std::size_t n = grid.size();
  const Eigen::Index rows = grid.front().rows();
  const Eigen::Index cols = grid.front().cols();
  const auto entries = static_cast<std::size_t>(rows * cols);
  std::vector<Complex> buf(entries * n);
  for (std::size_t m = 0; m < n; ++m) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      for (Eigen::Index r = 0; r < rows; ++r) {
        buf[static_cast<std::size_t>(c * rows + r) * n + m] = grid[m](r, c);
      }
    }
  }
  fourier::forward(buf, n, entries);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t e = 0; e < entries; ++e) {
    Complex* sig = buf.data() + e * n;
    sig[0] *= 0.5 * inv_n;
    for (std::size_t k = 1; k < n / 2; ++k) sig[k] *= inv_n;
    for (std::size_t k = n / 2; k < n; ++k) sig[k] = 0.0;
  }
  fourier::backward(buf, n, entries);
  for (std::size_t m = 0; m < n; ++m) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      for (Eigen::Index r = 0; r < rows; ++r) {
        grid[m](r, c) = buf[static_cast<std::size_t>(c * rows + r) * n + m];
      }
    }
  }
}

// Right unitary Q with a Q Hermitian positive semidefinite (polar factor).
CMatrix polar_correction(const CMatrix& a) {
  Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixV() * svd.matrixU().adjoint();
}

ChannelSeries right_multiply(const ChannelSeries& f, const CMatrix& q) {
  ChannelSeries out(f.rows(), q.cols());
  for (const auto& [n, c] : f.terms()) out.set(n, c * q);
  return out;
}

void check_positive(const std::vector<CMatrix>& samples, double pd_tol, int channel) {
  for (std::size_t m = 0; m < samples.size(); ++m) {
    const CMatrix& v = samples[m];
    const double theta = kernels::grid_angle(m, samples.size());
    const double herm_defect = (v - v.adjoint()).norm();
    Eigen::SelfAdjointEigenSolver<CMatrix> eig((v + v.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
    const double lmin = eig.eigenvalues()(0);
    if (herm_defect > pd_tol || lmin <= pd_tol) {
      std::ostringstream msg;
      msg << "channel " << channel << " at theta=" << theta << ": smallest eigenvalue " << lmin
          << ", hermitian defect " << herm_defect << " (pd_tol " << pd_tol << ")";
      throw DomainError(Errc::NotPositive, msg.str());
    }
  }
}

}  // namespace

ChannelInversion invert_channel(const ChannelSeries& f, int k, std::size_t n, double tol,
                                int channel) {
  require_square(f.rows(), f.cols(), "invert");
  require_grid(n, k);
  const double threshold = tol * std::max(1.0, wiener_norm(f));
  auto inv = kernels::invert(kernels::sample(f, n));
  if (inv.min_singular <= threshold) {
    std::ostringstream msg;
    msg << "channel " << channel << " at theta=" << kernels::grid_angle(inv.argmin, n)
        << ": smallest singular value " << inv.min_singular << " <= " << threshold;
    throw DomainError(Errc::NotInvertibleOnBoundary, msg.str());
  }
  ChannelInversion out;
  // Full window so the mass beyond K is visible.
  const int half = static_cast<int>(n / 2);
  const ChannelSeries full = coefficients_from_grid(inv.values, -half + 1, half);
  out.inverse = truncate(full, -k, k);
  out.tail_mass = tail_mass(full, k);

  const auto fine_f = kernels::sample(f, 2 * n);
  const auto fine_g = kernels::sample(out.inverse, 2 * n);
  const auto prod = kernels::multiply(fine_f, fine_g);
  std::vector<CMatrix> ident(prod.size(), CMatrix::Identity(f.rows(), f.cols()));
  out.residual = sup_distance(prod, ident);
  return out;
}

InversionResult invert(const BCLaurentSeries& f, int k, std::size_t n, double tol) {
  const auto [c1, c2] = split_channels(f);
  const auto r1 = invert_channel(c1, k, n, tol, 1);
  const auto r2 = invert_channel(c2, k, n, tol, 2);
  InversionResult out;
  out.inverse = merge_channels(r1.inverse, r2.inverse);
  out.residual = std::max(r1.residual, r2.residual);
  out.tail_mass = r1.tail_mass + r2.tail_mass;
  out.K = k;
  out.N = n;
  return out;
}

ChannelFactorization factorize_channel(const ChannelSeries& f, const FactorOptions& opts,
                                       int channel) {
  require_square(f.rows(), f.cols(), "spectral_factorize");
  const Eigen::Index p = f.rows();
  const int k = opts.K.value_or(degree(f));
  if (k < 0) throw DomainError(Errc::InvalidArgument, "K must be nonnegative");
  const std::size_t n =
      opts.N.value_or(fourier::next_power_of_two(std::max<std::size_t>(
          default_grid_size(f.n_min(), f.n_max()), 4 * static_cast<std::size_t>(k + 1))));
  require_grid(n, k);

  const double scale = std::max(wiener_norm(f), 1e-300);
  const double pd_tol = opts.pd_tol.value_or(1e-10 * scale);
  const auto samples = kernels::sample(f, n);
  check_positive(samples, pd_tol, channel);

  // Start from the Cholesky factor of the mean value.
  const CMatrix mean = (f.coeff(0) + f.coeff(0).adjoint()) / 2.0;
  const CMatrix w0 = mean.llt().matrixL();
  std::vector<CMatrix> w(n, w0);

  ChannelFactorization out;
  double residual = sup_distance(gram(w), samples) / scale;
  int iter = 0;
  const CMatrix half_identity = CMatrix::Identity(p, p) / 2.0;
  while (residual > opts.newton_tol) {
    if (iter >= opts.max_iter) {
      std::ostringstream msg;
      msg << "channel " << channel << ": residual " << residual << " after " << iter
          << " iterations (newton_tol " << opts.newton_tol << ")";
      throw DomainError(Errc::NoConvergence, msg.str());
    }
    auto x = kernels::whiten(w, samples);
    causal_half(x);
    for (auto& v : x) v += half_identity;
    w = kernels::multiply(w, x);
    residual = sup_distance(gram(w), samples) / scale;
    ++iter;
  }

  const int half = static_cast<int>(n / 2);
  const ChannelSeries full = coefficients_from_grid(w, -half + 1, half);
  ChannelSeries factor = truncate(full, 0, k);
  out.tail_mass = tail_mass(full, k);

  if (opts.normalization == Normalization::pd0) {
    factor = right_multiply(factor, polar_correction(factor.coeff(0)));
  } else {
    const CMatrix f_at_one = eval(f, Complex(1.0, 0.0));
    const double defect = spectral_norm(f_at_one - CMatrix::Identity(p, p));
    if (defect > opts.at_one_tol) {
      std::ostringstream msg;
      msg << "normalization at_one needs f(1) = I; channel " << channel << " has ||f(1) - I|| = "
          << defect;
      throw DomainError(Errc::InvalidArgument, msg.str());
    }
    factor = right_multiply(factor, polar_correction(eval(factor, Complex(1.0, 0.0))));
  }

  const auto fine_f = kernels::sample(f, 2 * n);
  const auto fine_w = kernels::sample(factor, 2 * n);
  out.residual = sup_distance(gram(fine_w), fine_f);
  out.relative_residual = out.residual / scale;
  out.factor = std::move(factor);
  out.iterations = iter;
  out.K = k;
  out.N = n;
  return out;
}

FactorizationResult spectral_factorize(const BCLaurentSeries& f, const FactorOptions& opts) {
  const auto [c1, c2] = split_channels(f);
  const auto r1 = factorize_channel(c1, opts, 1);
  const auto r2 = factorize_channel(c2, opts, 2);
  FactorizationResult out;
  out.factor = merge_channels(r1.factor, r2.factor);
  out.residual = std::max(r1.residual, r2.residual);
  out.relative_residual = std::max(r1.relative_residual, r2.relative_residual);
  out.iterations = {r1.iterations, r2.iterations};
  out.tail_mass = r1.tail_mass + r2.tail_mass;
  out.K = r1.K;
  out.N = r1.N;
  return out;
}

UnitaryCertificate factor_uniqueness_unitary(const ComplexSeries& a, const ComplexSeries& b,
                                             double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols()) {
    throw DomainError(Errc::ShapeMismatch, "factor_uniqueness_unitary needs equal square shapes");
  }
  const CMatrix a0 = a.coeff(0);
  const double scale = std::max({1.0, wiener_norm(a), wiener_norm(b)});
  if (min_singular_value(a0) <= 1e-14 * scale) {
    throw DomainError(Errc::NotRelated, "a_0 is singular");
  }
  UnitaryCertificate cert;
  cert.u = a0.partialPivLu().solve(b.coeff(0));
  cert.unitarity_defect =
      (cert.u.adjoint() * cert.u - CMatrix::Identity(a.cols(), a.cols())).norm();

  const int lo = std::min(a.n_min(), b.n_min());
  const int hi = std::max(a.n_max(), b.n_max());
  const std::size_t n = default_grid_size(lo, hi);
  const auto sa = kernels::sample(a, n);
  const auto sb = kernels::sample(b, n);
  for (std::size_t m = 0; m < n; ++m) {
    cert.residual = std::max(cert.residual, spectral_norm(sa[m] * cert.u - sb[m]));
  }
  if (cert.unitarity_defect > tol || cert.residual > tol * scale) {
    std::ostringstream msg;
    msg << "unitarity defect " << cert.unitarity_defect << ", residual " << cert.residual
        << " (tol " << tol << ")";
    throw DomainError(Errc::NotRelated, msg.str());
  }
  return cert;
}

std::array<UnitaryCertificate, 2> factor_uniqueness_unitary(const BCLaurentSeries& a,
                                                            const BCLaurentSeries& b,
                                                            double tol) {
  const auto [a1, a2] = split_channels(a);
  const auto [b1, b2] = split_channels(b);
  return {factor_uniqueness_unitary(a1, b1, tol), factor_uniqueness_unitary(a2, b2, tol)};
}

SharpFactorization sharp_route_factorize(const ComplexSeries& f, const FactorOptions& opts) {
  if (!is_sharp_symmetric_series(f)) {
    throw DomainError(Errc::NotSharpSymmetric, "input coefficients are not sharp-symmetric");
  }
  const auto plain = factorize_channel(f, opts, 0);
  SharpFactorization out;
  const double scale = std::max(wiener_norm(plain.factor), 1e-300);
  ComplexSeries symmetric(f.rows(), f.cols());
  for (const auto& [n, c] : plain.factor.terms()) {
    const CMatrix sharp = sharp_conjugate(c);
    out.symmetry_defect = std::max(out.symmetry_defect, spectral_norm(c - sharp) / scale);
    symmetric.set(n, (c + sharp) / 2.0);
  }
  if (out.symmetry_defect > opts.sharp_tol) {
    std::ostringstream msg;
    msg << "factor deviates from its sharp conjugate by " << out.symmetry_defect;
    throw DomainError(Errc::NotSharpSymmetric, msg.str());
  }
  const std::size_t n = plain.N;
  const auto fine_f = kernels::sample(f, 2 * n);
  const auto fine_w = kernels::sample(symmetric, 2 * n);
  out.residual = sup_distance(gram(fine_w), fine_f);
  out.relative_residual = out.residual / std::max(wiener_norm(f), 1e-300);
  out.iterations = plain.iterations;
  out.factor = std::move(symmetric);
  return out;
}

}  // namespace bcw
