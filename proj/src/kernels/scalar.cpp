#include "xlab/kernels.hpp"

#include <algorithm>
#include <cassert>

namespace xlab::kernels::scalar {

double overlap_sum(std::span<const double> lo, std::span<const double> hi,
                   std::span<const double> w, double x_lo, double x_hi) {
  assert(lo.size() == hi.size() && lo.size() == w.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < lo.size(); ++i) {
    const double a = std::max(lo[i], x_lo);
    const double b = std::min(hi[i], x_hi);
    const double len = b - a;
    acc += w[i] * (len > 0.0 ? len : 0.0);
  }
  return acc;
}

double dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double max_product(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  double best = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) best = std::max(best, a[i] * b[i]);
  return best;
}

}  // namespace xlab::kernels::scalar
