#include "phasecal/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace phasecal::kernels {

namespace {

void check_same(std::size_t a, std::size_t b, const char* what) {
    if (a != b) throw ShapeError(std::string(what) + ": length mismatch");
}

constexpr double kInvSqrt2Pi = 0.3989422804014327;

std::size_t block_count(std::size_t n) { return (n + kReductionBlock - 1) / kReductionBlock; }

}  // namespace

// ---------------------------------------------------------------- serial

namespace serial {

void rotate(std::span<cplx> x, std::span<const double> phase_rad) {
    check_same(x.size(), phase_rad.size(), "rotate");
    for (std::size_t n = 0; n < x.size(); ++n) x[n] *= std::polar(1.0, phase_rad[n]);
}

void rotate_constant(std::span<cplx> x, double phase_rad) {
    const cplx r = std::polar(1.0, phase_rad);
    for (auto& v : x) v *= r;
}

void dechirp(std::span<const cplx> slot, std::span<const cplx> reference, std::span<cplx> out) {
    check_same(slot.size(), reference.size(), "dechirp");
    check_same(slot.size(), out.size(), "dechirp");
    for (std::size_t n = 0; n < slot.size(); ++n) out[n] = slot[n] * std::conj(reference[n]);
}

void accumulate(std::span<cplx> acc, std::span<const cplx> x) {
    check_same(acc.size(), x.size(), "accumulate");
    for (std::size_t n = 0; n < x.size(); ++n) acc[n] += x[n];
}

void accumulate_scaled(std::span<cplx> acc, std::span<const cplx> x, cplx scale) {
    check_same(acc.size(), x.size(), "accumulate_scaled");
    for (std::size_t n = 0; n < x.size(); ++n) acc[n] += scale * x[n];
}

double unwrapped_mean_arg(std::span<const cplx> h) {
    if (h.empty()) throw ShapeError("unwrapped_mean_arg: empty input");
    std::vector<double> unwrapped(h.size());
    double prev = std::arg(h[0]);
    unwrapped[0] = prev;
    for (std::size_t n = 1; n < h.size(); ++n) {
        const double a = std::arg(h[n]);
        unwrapped[n] = unwrapped[n - 1] + wrap_phase(a - prev);
        prev = a;
    }
    double sum = 0.0;
    for (double u : unwrapped) sum += u;
    return sum / static_cast<double>(h.size());
}

double circular_mean_arg(std::span<const cplx> h) {
    if (h.empty()) throw ShapeError("circular_mean_arg: empty input");
    cplx sum{0.0, 0.0};
    for (const auto& v : h) sum += v;
    return std::arg(sum);
}

void kde_evaluate(std::span<const double> grid, std::span<const double> samples, double bandwidth,
                  std::span<double> density) {
    check_same(grid.size(), density.size(), "kde_evaluate");
    const double norm = kInvSqrt2Pi / (static_cast<double>(samples.size()) * bandwidth);
    for (std::size_t g = 0; g < grid.size(); ++g) {
        double acc = 0.0;
        for (double s : samples) {
            const double u = (grid[g] - s) / bandwidth;
            acc += std::exp(-0.5 * u * u);
        }
        density[g] = acc * norm;
    }
}

}  // namespace serial

// ---------------------------------------------------------------- OpenMP

namespace parallel {

void rotate(std::span<cplx> x, std::span<const double> phase_rad) {
    check_same(x.size(), phase_rad.size(), "rotate");
    const auto n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static) if (n >= static_cast<std::ptrdiff_t>(kParallelThreshold))
    for (std::ptrdiff_t i = 0; i < n; ++i) x[i] *= std::polar(1.0, phase_rad[i]);
}

void rotate_constant(std::span<cplx> x, double phase_rad) {
    const cplx r = std::polar(1.0, phase_rad);
    const auto n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static) if (n >= static_cast<std::ptrdiff_t>(kParallelThreshold))
    for (std::ptrdiff_t i = 0; i < n; ++i) x[i] *= r;
}

void dechirp(std::span<const cplx> slot, std::span<const cplx> reference, std::span<cplx> out) {
    check_same(slot.size(), reference.size(), "dechirp");
    check_same(slot.size(), out.size(), "dechirp");
    const auto n = static_cast<std::ptrdiff_t>(slot.size());
#pragma omp parallel for schedule(static) if (n >= static_cast<std::ptrdiff_t>(kParallelThreshold))
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = slot[i] * std::conj(reference[i]);
}

void accumulate(std::span<cplx> acc, std::span<const cplx> x) {
    check_same(acc.size(), x.size(), "accumulate");
    const auto n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static) if (n >= static_cast<std::ptrdiff_t>(kParallelThreshold))
    for (std::ptrdiff_t i = 0; i < n; ++i) acc[i] += x[i];
}

void accumulate_scaled(std::span<cplx> acc, std::span<const cplx> x, cplx scale) {
    check_same(acc.size(), x.size(), "accumulate_scaled");
    const auto n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static) if (n >= static_cast<std::ptrdiff_t>(kParallelThreshold))
    for (std::ptrdiff_t i = 0; i < n; ++i) acc[i] += scale * x[i];
}

double unwrapped_mean_arg(std::span<const cplx> h) {
    if (h.empty()) throw ShapeError("unwrapped_mean_arg: empty input");
    const std::size_t n = h.size();
    const double inv_n = 1.0 / static_cast<double>(n);
    const auto blocks = static_cast<std::ptrdiff_t>(block_count(n));
    std::vector<double> partial(static_cast<std::size_t>(blocks), 0.0);

#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
    for (std::ptrdiff_t b = 0; b < blocks; ++b) {
        const std::size_t begin = std::max<std::size_t>(1, static_cast<std::size_t>(b) * kReductionBlock);
        const std::size_t end = std::min(n, (static_cast<std::size_t>(b) + 1) * kReductionBlock);
        double acc = 0.0;
        double prev = std::arg(h[begin - 1]);
        for (std::size_t k = begin; k < end; ++k) {
            const double a = std::arg(h[k]);
            acc += static_cast<double>(n - k) * wrap_phase(a - prev);
            prev = a;
        }
        partial[static_cast<std::size_t>(b)] = acc;
    }

    double sum = 0.0;
    for (double p : partial) sum += p;
    return std::arg(h[0]) + sum * inv_n;
}

double circular_mean_arg(std::span<const cplx> h) {
    if (h.empty()) throw ShapeError("circular_mean_arg: empty input");
    const std::size_t n = h.size();
    const auto blocks = static_cast<std::ptrdiff_t>(block_count(n));
    std::vector<cplx> partial(static_cast<std::size_t>(blocks));

#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
    for (std::ptrdiff_t b = 0; b < blocks; ++b) {
        const std::size_t begin = static_cast<std::size_t>(b) * kReductionBlock;
        const std::size_t end = std::min(n, begin + kReductionBlock);
        cplx acc{0.0, 0.0};
        for (std::size_t k = begin; k < end; ++k) acc += h[k];
        partial[static_cast<std::size_t>(b)] = acc;
    }

    cplx sum{0.0, 0.0};
    for (const auto& p : partial) sum += p;
    return std::arg(sum);
}

void kde_evaluate(std::span<const double> grid, std::span<const double> samples, double bandwidth,
                  std::span<double> density) {
    check_same(grid.size(), density.size(), "kde_evaluate");
    const double norm = kInvSqrt2Pi / (static_cast<double>(samples.size()) * bandwidth);
    const auto g_count = static_cast<std::ptrdiff_t>(grid.size());
    const bool big = grid.size() * samples.size() >= kParallelThreshold;
#pragma omp parallel for schedule(static) if (big)
    for (std::ptrdiff_t g = 0; g < g_count; ++g) {
        double acc = 0.0;
        for (double s : samples) {
            const double u = (grid[g] - s) / bandwidth;
            acc += std::exp(-0.5 * u * u);
        }
        density[g] = acc * norm;
    }
}

}  // namespace parallel

}  // namespace phasecal::kernels
