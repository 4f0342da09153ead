#pragma once

// Amplitude kernels behind apply_local/project. Each kernel has a serial
// reference version, kept for tests and the benchmark, and an OpenMP version
// used by the library.

#include <cstddef>
#include <span>

#include "rio/qstate.hpp"

namespace rio::kernels {

/// `bits[t]` is the global bit index of the t-th target; target 0 is the most
/// significant bit of the operator's row/column index.
void apply_reference(std::span<Complex> amps, const Matrix& op, std::span<const unsigned> bits);
void apply_parallel(std::span<Complex> amps, const Matrix& op, std::span<const unsigned> bits);

/// Zeroes every amplitude whose `bit` differs from `outcome`; returns the
/// squared norm of what is left.
double project_reference(std::span<Complex> amps, unsigned bit, int outcome);
double project_parallel(std::span<Complex> amps, unsigned bit, int outcome);

/// Below this many amplitude groups the OpenMP kernels stay on one thread.
inline constexpr std::size_t kParallelThreshold = std::size_t{1} << 12;

}  // namespace rio::kernels
