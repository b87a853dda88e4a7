#pragma once

#include <cstddef>
#include <span>

#include "bcw/bicomplex.hpp"

namespace bcw::fourier {

bool is_power_of_two(std::size_t n) noexcept;
std::size_t next_power_of_two(std::size_t n) noexcept;

/// In-place unnormalized DFT X_k = sum_m x_m e^{-2 pi i k m / N}, applied to
/// `howmany` contiguous signals of length n stored back to back.
void forward(std::span<Complex> data, std::size_t n, std::size_t howmany = 1);

/// In-place unnormalized inverse DFT x_m = sum_k X_k e^{+2 pi i k m / N}.
void backward(std::span<Complex> data, std::size_t n, std::size_t howmany = 1);

/// Maps a Laurent index n to its DFT bin for an N-point transform.
inline std::size_t bin(int index, std::size_t n) {
  const auto sn = static_cast<long long>(n);
  return static_cast<std::size_t>(((index % sn) + sn) % sn);
}

}  // namespace bcw::fourier
