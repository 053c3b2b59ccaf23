// Compiled with -mavx2 only; entry points are reached through dispatch.cpp
// after a runtime CPU check.

#include "xlab/kernels.hpp"

#include <immintrin.h>

#include <algorithm>
#include <cassert>

namespace xlab::kernels::avx2 {

namespace {

// Lanes are combined as (l0 + l1) + (l2 + l3) so the result does not depend
// on anything but the input.
inline double hsum(__m256d v) {
  alignas(32) double lane[4];
  _mm256_store_pd(lane, v);
  return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

inline double hmax(__m256d v) {
  alignas(32) double lane[4];
  _mm256_store_pd(lane, v);
  return std::max(std::max(lane[0], lane[1]), std::max(lane[2], lane[3]));
}

}  // namespace

double overlap_sum(std::span<const double> lo, std::span<const double> hi,
                   std::span<const double> w, double x_lo, double x_hi) {
  assert(lo.size() == hi.size() && lo.size() == w.size());
  const std::size_t n = lo.size();
  const __m256d vlo = _mm256_set1_pd(x_lo);
  const __m256d vhi = _mm256_set1_pd(x_hi);
  const __m256d zero = _mm256_setzero_pd();
  __m256d acc = zero;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d a = _mm256_max_pd(_mm256_loadu_pd(lo.data() + i), vlo);
    const __m256d b = _mm256_min_pd(_mm256_loadu_pd(hi.data() + i), vhi);
    const __m256d len = _mm256_max_pd(_mm256_sub_pd(b, a), zero);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(w.data() + i), len));
  }
  double tail = 0.0;
  for (; i < n; ++i) {
    const double len = std::min(hi[i], x_hi) - std::max(lo[i], x_lo);
    tail += w[i] * (len > 0.0 ? len : 0.0);
  }
  return hsum(acc) + tail;
}

double dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  const std::size_t n = a.size();
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(a.data() + i),
                                           _mm256_loadu_pd(b.data() + i)));
  }
  double tail = 0.0;
  for (; i < n; ++i) tail += a[i] * b[i];
  return hsum(acc) + tail;
}

double max_product(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  const std::size_t n = a.size();
  __m256d best = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    best = _mm256_max_pd(best, _mm256_mul_pd(_mm256_loadu_pd(a.data() + i),
                                             _mm256_loadu_pd(b.data() + i)));
  }
  double out = hmax(best);
  for (; i < n; ++i) out = std::max(out, a[i] * b[i]);
  return out;
}

}  // namespace xlab::kernels::avx2
