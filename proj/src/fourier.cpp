#include "bcw/fourier.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

namespace bcw::fourier {

namespace {

// FFTW's planner is not thread-safe; execution of an existing plan on new
// arrays is. Plans are created once per (n, howmany, sign) under a lock.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(std::size_t n, std::size_t howmany, int sign) {
    const auto key = std::make_tuple(n, howmany, sign);
    std::lock_guard lock(mutex_);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    std::vector<Complex> scratch(n * howmany);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    const int len = static_cast<int>(n);
    fftw_plan plan = fftw_plan_many_dft(1, &len, static_cast<int>(howmany), buf, nullptr, 1, len,
                                        buf, nullptr, 1, len, sign,
                                        FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<std::size_t, std::size_t, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

void run(std::span<Complex> data, std::size_t n, std::size_t howmany, int sign) {
  if (n == 0 || howmany == 0) return;
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(cache().get(n, howmany, sign), buf, buf);
}

}  // namespace

bool is_power_of_two(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_power_of_two(std::size_t n) noexcept {
  std::size_t p = 1;
  while (p < n) p <<= 1U;
  return p;
}

void forward(std::span<Complex> data, std::size_t n, std::size_t howmany) {
  run(data, n, howmany, FFTW_FORWARD);
}

void backward(std::span<Complex> data, std::size_t n, std::size_t howmany) {
  run(data, n, howmany, FFTW_BACKWARD);
}

}  // namespace bcw::fourier
