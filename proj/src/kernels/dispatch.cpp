#include "xlab/kernels.hpp"

#include <cstdlib>
#include <string_view>

namespace xlab::kernels {

#ifndef XLAB_HAVE_AVX2
namespace avx2 {
bool available() { return false; }
// Never selected when unavailable; forward to the reference so the symbols exist.
double overlap_sum(std::span<const double> lo, std::span<const double> hi,
                   std::span<const double> w, double x_lo, double x_hi) {
  return scalar::overlap_sum(lo, hi, w, x_lo, x_hi);
}
double dot(std::span<const double> a, std::span<const double> b) { return scalar::dot(a, b); }
double max_product(std::span<const double> a, std::span<const double> b) {
  return scalar::max_product(a, b);
}
}  // namespace avx2
#else
namespace avx2 {
bool available() {
#if defined(__GNUC__) || defined(__clang__)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}
}  // namespace avx2
#endif

namespace {

struct Table {
  Isa isa;
  double (*overlap_sum)(std::span<const double>, std::span<const double>,
                        std::span<const double>, double, double);
  double (*dot)(std::span<const double>, std::span<const double>);
  double (*max_product)(std::span<const double>, std::span<const double>);
};

Table select() {
  const char* forced = std::getenv("XLAB_SIMD");
  const bool want_scalar = forced != nullptr && std::string_view(forced) == "scalar";
  if (!want_scalar && avx2::available()) {
    return {Isa::avx2, &avx2::overlap_sum, &avx2::dot, &avx2::max_product};
  }
  return {Isa::scalar, &scalar::overlap_sum, &scalar::dot, &scalar::max_product};
}

const Table& table() {
  static const Table t = select();
  return t;
}

}  // namespace

Isa active_isa() { return table().isa; }

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::avx2:
      return "avx2";
    case Isa::scalar:
      break;
  }
  return "scalar";
}

double overlap_sum(std::span<const double> lo, std::span<const double> hi,
                   std::span<const double> w, double x_lo, double x_hi) {
  return table().overlap_sum(lo, hi, w, x_lo, x_hi);
}

double dot(std::span<const double> a, std::span<const double> b) { return table().dot(a, b); }

double max_product(std::span<const double> a, std::span<const double> b) {
  return table().max_product(a, b);
}

}  // namespace xlab::kernels
