#include "bcw/series.hpp"

#include <algorithm>
#include <numbers>
#include <sstream>

#include "bcw/fourier.hpp"
#include "bcw/kernels.hpp"

namespace bcw {

CMatrix eval(const ChannelSeries& f, Complex z) {
  CMatrix acc = CMatrix::Zero(f.rows(), f.cols());
  if (f.empty()) return acc;
  // Horner over n_max .. n_min, then shift by z^{n_min}.
  const int lo = f.n_min();
  for (int n = f.n_max(); n >= lo; --n) {
    acc *= z;
    if (auto it = f.terms().find(n); it != f.terms().end()) acc += it->second;
  }
  if (lo != 0) acc *= std::pow(z, lo);
  return acc;
}

CMatrix eval_angle(const ChannelSeries& f, double theta) {
  CMatrix acc = CMatrix::Zero(f.rows(), f.cols());
  for (const auto& [n, c] : f.terms()) acc += c * std::polar(1.0, n * theta);
  return acc;
}

BCMatrix eval(const BCLaurentSeries& f, const BoundaryPoint& pt) {
  const auto [c1, c2] = split_channels(f);
  return BCMatrix::from_channels(eval(c1, pt.channel1()), eval(c2, pt.channel2()));
}

std::pair<ChannelSeries, ChannelSeries> split_channels(const BCLaurentSeries& f) {
  ChannelSeries c1(f.rows(), f.cols());
  ChannelSeries c2(f.rows(), f.cols());
  for (const auto& [n, c] : f.terms()) {
    c1.set(n, c.p1());
    c2.set(n, c.p2());
  }
  return {std::move(c1), std::move(c2)};
}

BCLaurentSeries merge_channels(const ChannelSeries& c1, const ChannelSeries& c2) {
  if (c1.rows() != c2.rows() || c1.cols() != c2.cols()) {
    throw DomainError(Errc::ShapeMismatch, "merge_channels: channel shapes differ");
  }
  BCLaurentSeries out(c1.rows(), c1.cols());
  for (const auto& [n, c] : c1.terms()) out.set(n, BCMatrix::from_channels(c, c2.coeff(n)));
  for (const auto& [n, c] : c2.terms()) {
    if (!c1.terms().contains(n)) out.set(n, BCMatrix::from_channels(c1.coeff(n), c));
  }
  return out;
}

ComplexSeries embed_series(const BCLaurentSeries& f) {
  ComplexSeries out(2 * f.rows(), 2 * f.cols());
  for (const auto& [n, c] : f.terms()) out.set(n, embed_sharp(c));
  return out;
}

BCLaurentSeries extract_series(const ComplexSeries& f, double tol) {
  if (f.rows() % 2 != 0 || f.cols() % 2 != 0) {
    throw DomainError(Errc::OddDimension, "extract_series needs even dimensions");
  }
  BCLaurentSeries out(f.rows() / 2, f.cols() / 2);
  for (const auto& [n, c] : f.terms()) out.set(n, extract_sharp(c, tol));
  return out;
}

bool is_sharp_symmetric_series(const ComplexSeries& f, double tol) {
  if (f.rows() % 2 != 0 || f.cols() % 2 != 0) {
    throw DomainError(Errc::OddDimension, "sharp symmetry needs even dimensions");
  }
  return std::all_of(f.terms().begin(), f.terms().end(),
                     [tol](const auto& term) { return is_sharp_symmetric(term.second, tol); });
}

ChannelSeries coefficients_from_grid(const std::vector<CMatrix>& samples, int lo, int hi) {
  const std::size_t n = samples.size();
  if (n == 0) throw DomainError(Errc::InvalidArgument, "no samples");
  if (hi < lo || static_cast<std::size_t>(hi - lo) >= n) {
    throw DomainError(Errc::InvalidArgument, "coefficient window wider than the grid");
  }
  const Eigen::Index rows = samples.front().rows();
  const Eigen::Index cols = samples.front().cols();
  const auto entries = static_cast<std::size_t>(rows * cols);

  // One contiguous signal per matrix entry.
  std::vector<Complex> buf(entries * n);
  for (std::size_t m = 0; m < n; ++m) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      for (Eigen::Index r = 0; r < rows; ++r) {
        buf[static_cast<std::size_t>(c * rows + r) * n + m] = samples[m](r, c);
      }
    }
  }
  fourier::forward(buf, n, entries);

  ChannelSeries out(rows, cols);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (int k = lo; k <= hi; ++k) {
    const std::size_t b = fourier::bin(k, n);
    CMatrix coeff(rows, cols);
    for (Eigen::Index c = 0; c < cols; ++c) {
      for (Eigen::Index r = 0; r < rows; ++r) {
        coeff(r, c) = buf[static_cast<std::size_t>(c * rows + r) * n + b] * inv_n;
      }
    }
    out.set(k, std::move(coeff));
  }
  return out;
}

ChannelSeries coefficients_from_samples(const Sampler& sampler, int k, std::size_t n_points) {
  if (k < 0) throw DomainError(Errc::InvalidArgument, "K must be nonnegative");
  if (!fourier::is_power_of_two(n_points) || n_points < static_cast<std::size_t>(2 * k + 2)) {
    std::ostringstream msg;
    msg << "N = " << n_points << " must be a power of two >= 2K + 2 = " << 2 * k + 2;
    throw DomainError(Errc::InvalidArgument, msg.str());
  }
  return coefficients_from_grid(kernels::sample(sampler, n_points), -k, k);
}

std::size_t default_grid_size(int n_min, int n_max) {
  const auto span = static_cast<std::size_t>(std::max(0, n_max - n_min));
  return fourier::next_power_of_two(std::max<std::size_t>(256, 8 * span));
}

}  // namespace bcw
