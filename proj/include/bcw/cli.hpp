#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace bcw::cli {

enum class Command { decompose, invert, factorize, realize, fourier, stein, superosc, approx };

struct RunConfig {
  Command command = Command::decompose;
  std::string input_path;
  std::string output_path;
  std::optional<int> K;
  std::optional<int> N;
  /// Points per axis for boundary sweeps.
  int grid = 16;
  std::optional<double> tol;
  std::optional<std::string> normalization;
  std::string method = "schur";
  std::uint64_t seed = 0;
  /// Optional sampler CSV of the result series.
  std::string samples_path;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 2;
inline constexpr int kExitIo = 3;

/// Executes one subcommand; never throws. Diagnostics go to stderr.
int run(const RunConfig& config);

/// Parses argv and runs. Usage errors exit with kExitIo.
int main(int argc, char** argv);

}  // namespace bcw::cli
