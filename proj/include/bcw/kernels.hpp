#pragma once

// Grid kernels behind the transform-based algorithms. Each kernel exists in a
// `serial` reference form and an `omp` form parallel over grid points; the two
// produce bitwise-identical results because every reduction is done
// afterwards in fixed index order. Unqualified calls dispatch to `omp`.
//
// Worker count is capped by the BCW_THREADS environment variable.

#include <cstddef>
#include <vector>

#include "bcw/series.hpp"

namespace bcw::kernels {

/// min(omp_get_max_threads(), BCW_THREADS) when BCW_THREADS is a positive
/// integer, else omp_get_max_threads().
int worker_threads();

/// theta_m = 2 pi m / n.
double grid_angle(std::size_t m, std::size_t n);

struct PointwiseInverse {
  std::vector<CMatrix> values;
  double min_singular = 0.0;
  std::size_t argmin = 0;
};

namespace serial {

std::vector<CMatrix> sample(const ChannelSeries& f, std::size_t n);
std::vector<CMatrix> sample(const Sampler& sampler, std::size_t n);
PointwiseInverse invert(const std::vector<CMatrix>& values);
/// W^{-1} F W^{-*} at every point.
std::vector<CMatrix> whiten(const std::vector<CMatrix>& w, const std::vector<CMatrix>& f);
/// Pointwise products a_m * b_m.
std::vector<CMatrix> multiply(const std::vector<CMatrix>& a, const std::vector<CMatrix>& b);
/// Trapezoid rule for (1 / 2 pi i) * contour integral of (zI - A)^{-1} over
/// |z| = 1: (1 / n) sum_k z_k (z_k I - A)^{-1}.
CMatrix resolvent_contour(const CMatrix& a, std::size_t nodes);
/// max over t of |F_m(t, a) - e^{iat}|.
double superosc_sup_error(int m, double a, const std::vector<double>& ts);

}  // namespace serial

namespace omp {

std::vector<CMatrix> sample(const ChannelSeries& f, std::size_t n);
std::vector<CMatrix> sample(const Sampler& sampler, std::size_t n);
PointwiseInverse invert(const std::vector<CMatrix>& values);
std::vector<CMatrix> whiten(const std::vector<CMatrix>& w, const std::vector<CMatrix>& f);
std::vector<CMatrix> multiply(const std::vector<CMatrix>& a, const std::vector<CMatrix>& b);
CMatrix resolvent_contour(const CMatrix& a, std::size_t nodes);
double superosc_sup_error(int m, double a, const std::vector<double>& ts);

}  // namespace omp

using omp::invert;
using omp::multiply;
using omp::resolvent_contour;
using omp::sample;
using omp::superosc_sup_error;
using omp::whiten;

}  // namespace bcw::kernels
