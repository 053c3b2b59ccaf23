#pragma once

// Data-parallel inner loops used by the closed-form step integrals and the
// quadrature rules. Each kernel has a scalar reference implementation and,
// on x86-64, an AVX2 variant; the variant is picked once at runtime.
//
// Set XLAB_SIMD=scalar in the environment to force the reference path.

#include <span>
#include <string_view>

namespace xlab::kernels {

enum class Isa { scalar, avx2 };

/// Instruction set the dispatched kernels run on in this process.
Isa active_isa();
std::string_view isa_name(Isa isa);

/// sum_i w[i] * max(0, min(hi[i], x_hi) - max(lo[i], x_lo))
///
/// Length of the overlap of each interval [lo, hi] with [x_lo, x_hi],
/// weighted. With monotone coordinates (powers, logs) this is the exact
/// integral of a step function against a power or 1/s weight.
double overlap_sum(std::span<const double> lo, std::span<const double> hi,
                   std::span<const double> w, double x_lo, double x_hi);

double dot(std::span<const double> a, std::span<const double> b);

/// max_i a[i] * b[i]; 0 for empty input. Inputs are expected nonnegative.
double max_product(std::span<const double> a, std::span<const double> b);

namespace scalar {
double overlap_sum(std::span<const double> lo, std::span<const double> hi,
                   std::span<const double> w, double x_lo, double x_hi);
double dot(std::span<const double> a, std::span<const double> b);
double max_product(std::span<const double> a, std::span<const double> b);
}  // namespace scalar

namespace avx2 {
/// True when the AVX2 variants were compiled in and the CPU supports them.
bool available();
double overlap_sum(std::span<const double> lo, std::span<const double> hi,
                   std::span<const double> w, double x_lo, double x_hi);
double dot(std::span<const double> a, std::span<const double> b);
double max_product(std::span<const double> a, std::span<const double> b);
}  // namespace avx2

}  // namespace xlab::kernels
