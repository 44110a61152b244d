#pragma once

// Per-sample DSP kernels. Every kernel has a plain serial reference in
// kernels::serial and an OpenMP version in kernels::parallel; the unqualified
// kernels::* entry points dispatch to the parallel one. Parallel reductions
// sum fixed-size blocks and combine them in block order, so the result is
// independent of the thread count.

#include <cstddef>
#include <span>

#include "phasecal/types.hpp"

namespace phasecal::kernels {

inline constexpr std::size_t kReductionBlock = 256;
inline constexpr std::size_t kParallelThreshold = 1 << 14;

namespace serial {

void rotate(std::span<cplx> x, std::span<const double> phase_rad);
void rotate_constant(std::span<cplx> x, double phase_rad);
void dechirp(std::span<const cplx> slot, std::span<const cplx> reference, std::span<cplx> out);
void accumulate(std::span<cplx> acc, std::span<const cplx> x);
void accumulate_scaled(std::span<cplx> acc, std::span<const cplx> x, cplx scale);
/// Mean of the sample-wise unwrapped argument (not re-wrapped).
double unwrapped_mean_arg(std::span<const cplx> h);
double circular_mean_arg(std::span<const cplx> h);
void kde_evaluate(std::span<const double> grid, std::span<const double> samples, double bandwidth,
                  std::span<double> density);

}  // namespace serial

namespace parallel {

void rotate(std::span<cplx> x, std::span<const double> phase_rad);
void rotate_constant(std::span<cplx> x, double phase_rad);
void dechirp(std::span<const cplx> slot, std::span<const cplx> reference, std::span<cplx> out);
void accumulate(std::span<cplx> acc, std::span<const cplx> x);
void accumulate_scaled(std::span<cplx> acc, std::span<const cplx> x, cplx scale);
/// Same quantity as the serial version, computed without materializing the
/// unwrapped array: mean = a0 + sum_k (N - k) / N * wrap(a_k - a_{k-1}).
double unwrapped_mean_arg(std::span<const cplx> h);
double circular_mean_arg(std::span<const cplx> h);
void kde_evaluate(std::span<const double> grid, std::span<const double> samples, double bandwidth,
                  std::span<double> density);

}  // namespace parallel

using parallel::accumulate;
using parallel::accumulate_scaled;
using parallel::circular_mean_arg;
using parallel::dechirp;
using parallel::kde_evaluate;
using parallel::rotate;
using parallel::rotate_constant;
using parallel::unwrapped_mean_arg;

}  // namespace phasecal::kernels
