#include "bcw/kernels.hpp"

#include <omp.h>

#include <cstdlib>
#include <limits>
#include <numbers>
#include <string>

#include "bcw/superosc.hpp"

namespace bcw::kernels {

int worker_threads() {
  int threads = omp_get_max_threads();
  if (const char* env = std::getenv("BCW_THREADS")) {
    try {
      const int cap = std::stoi(env);
      if (cap > 0 && cap < threads) threads = cap;
    } catch (const std::exception&) {
      // Unparseable values leave the OpenMP default in place.
    }
  }
  return threads;
}

double grid_angle(std::size_t m, std::size_t n) {
  return 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(n);
}

namespace {

CMatrix invert_one(const CMatrix& v, double& smin) {
  Eigen::JacobiSVD<CMatrix> svd(v, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  smin = sv.size() == 0 ? 0.0 : sv(sv.size() - 1);
  if (smin == 0.0) return CMatrix::Zero(v.cols(), v.rows());
  return svd.matrixV() * sv.cwiseInverse().asDiagonal() * svd.matrixU().adjoint();
}

CMatrix whiten_one(const CMatrix& w, const CMatrix& f) {
  Eigen::PartialPivLU<CMatrix> lu(w);
  const CMatrix left = lu.solve(f);                        // W^{-1} F
  return lu.solve(left.adjoint()).adjoint();               // (W^{-1} (W^{-1} F)^*)^*
}

CMatrix resolvent_term(const CMatrix& a, std::size_t k, std::size_t nodes) {
  const Complex z = std::polar(1.0, grid_angle(k, nodes));
  CMatrix shifted = -a;
  shifted.diagonal().array() += z;
  return z * shifted.partialPivLu().inverse();
}

double superosc_term_error(int m, double a, double t) {
  return std::abs(superosc_eval(m, a, t) - std::polar(1.0, a * t));
}

PointwiseInverse reduce_min(std::vector<CMatrix> values, const std::vector<double>& smins) {
  PointwiseInverse out{std::move(values), std::numeric_limits<double>::infinity(), 0};
  for (std::size_t m = 0; m < smins.size(); ++m) {
    if (smins[m] < out.min_singular) {
      out.min_singular = smins[m];
      out.argmin = m;
    }
  }
  return out;
}

CMatrix sum_in_order(const std::vector<CMatrix>& terms, Eigen::Index n) {
  CMatrix acc = CMatrix::Zero(n, n);
  for (const auto& t : terms) acc += t;
  return acc;
}

}  // namespace

namespace serial {

std::vector<CMatrix> sample(const ChannelSeries& f, std::size_t n) {
  std::vector<CMatrix> out(n);
  for (std::size_t m = 0; m < n; ++m) out[m] = eval_angle(f, grid_angle(m, n));
  return out;
}

std::vector<CMatrix> sample(const Sampler& sampler, std::size_t n) {
  std::vector<CMatrix> out(n);
  for (std::size_t m = 0; m < n; ++m) out[m] = sampler(grid_angle(m, n));
  return out;
}

PointwiseInverse invert(const std::vector<CMatrix>& values) {
  std::vector<CMatrix> inv(values.size());
  std::vector<double> smins(values.size());
  for (std::size_t m = 0; m < values.size(); ++m) inv[m] = invert_one(values[m], smins[m]);
  return reduce_min(std::move(inv), smins);
}

std::vector<CMatrix> whiten(const std::vector<CMatrix>& w, const std::vector<CMatrix>& f) {
  std::vector<CMatrix> out(w.size());
  for (std::size_t m = 0; m < w.size(); ++m) out[m] = whiten_one(w[m], f[m]);
  return out;
}

std::vector<CMatrix> multiply(const std::vector<CMatrix>& a, const std::vector<CMatrix>& b) {
  std::vector<CMatrix> out(a.size());
  for (std::size_t m = 0; m < a.size(); ++m) out[m] = a[m] * b[m];
  return out;
}

CMatrix resolvent_contour(const CMatrix& a, std::size_t nodes) {
  std::vector<CMatrix> terms(nodes);
  for (std::size_t k = 0; k < nodes; ++k) terms[k] = resolvent_term(a, k, nodes);
  return sum_in_order(terms, a.rows()) / static_cast<double>(nodes);
}

double superosc_sup_error(int m, double a, const std::vector<double>& ts) {
  double worst = 0.0;
  for (double t : ts) worst = std::max(worst, superosc_term_error(m, a, t));
  return worst;
}

}  // namespace serial

namespace omp {

namespace {
long long count(std::size_t n) { return static_cast<long long>(n); }
}  // namespace

std::vector<CMatrix> sample(const ChannelSeries& f, std::size_t n) {
  std::vector<CMatrix> out(n);
#pragma omp parallel for num_threads(worker_threads()) schedule(static)
  for (long long m = 0; m < count(n); ++m) {
    out[m] = eval_angle(f, grid_angle(static_cast<std::size_t>(m), n));
  }
  return out;
}

std::vector<CMatrix> sample(const Sampler& sampler, std::size_t n) {
  std::vector<CMatrix> out(n);
#pragma omp parallel for num_threads(worker_threads()) schedule(static)
  for (long long m = 0; m < count(n); ++m) {
    out[m] = sampler(grid_angle(static_cast<std::size_t>(m), n));
  }
  return out;
}

PointwiseInverse invert(const std::vector<CMatrix>& values) {
  std::vector<CMatrix> inv(values.size());
  std::vector<double> smins(values.size());
#pragma omp parallel for num_threads(worker_threads()) schedule(static)
  for (long long m = 0; m < count(values.size()); ++m) inv[m] = invert_one(values[m], smins[m]);
  return reduce_min(std::move(inv), smins);
}

std::vector<CMatrix> whiten(const std::vector<CMatrix>& w, const std::vector<CMatrix>& f) {
  std::vector<CMatrix> out(w.size());
#pragma omp parallel for num_threads(worker_threads()) schedule(static)
  for (long long m = 0; m < count(w.size()); ++m) out[m] = whiten_one(w[m], f[m]);
  return out;
}

std::vector<CMatrix> multiply(const std::vector<CMatrix>& a, const std::vector<CMatrix>& b) {
  std::vector<CMatrix> out(a.size());
#pragma omp parallel for num_threads(worker_threads()) schedule(static)
  for (long long m = 0; m < count(a.size()); ++m) out[m] = a[m] * b[m];
  return out;
}

CMatrix resolvent_contour(const CMatrix& a, std::size_t nodes) {
  std::vector<CMatrix> terms(nodes);
#pragma omp parallel for num_threads(worker_threads()) schedule(static)
  for (long long k = 0; k < count(nodes); ++k) {
    terms[k] = resolvent_term(a, static_cast<std::size_t>(k), nodes);
  }
  return sum_in_order(terms, a.rows()) / static_cast<double>(nodes);
}

double superosc_sup_error(int m, double a, const std::vector<double>& ts) {
  std::vector<double> errs(ts.size());
#pragma omp parallel for num_threads(worker_threads()) schedule(static)
  for (long long k = 0; k < count(ts.size()); ++k) errs[k] = superosc_term_error(m, a, ts[k]);
  double worst = 0.0;
  for (double e : errs) worst = std::max(worst, e);
  return worst;
}

}  // namespace omp

}  // namespace bcw::kernels
