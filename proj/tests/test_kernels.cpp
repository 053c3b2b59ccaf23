#include <doctest.h>

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <random>
#include <stdexcept>

#include "xlab/families.hpp"
#include "xlab/kernels.hpp"
#include "xlab/parallel.hpp"

using namespace xlab;

namespace {

std::vector<double> draw(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
  std::vector<double> v(n);
  for (double& x : v) x = lo + (hi - lo) * uniform01(rng());
  return v;
}

constexpr double kU = std::numeric_limits<double>::epsilon() / 2;

}  // namespace

TEST_CASE("scalar reference kernels") {
  const std::vector<double> lo{0.0, 1.0, 2.0, 5.0};
  const std::vector<double> hi{1.0, 3.0, 4.0, 6.0};
  const std::vector<double> w{1.0, 2.0, 3.0, 4.0};
  CHECK(kernels::scalar::overlap_sum(lo, hi, w, 0.5, 2.5) == 0.5 + 2.0 * 1.5 + 3.0 * 0.5);
  CHECK(kernels::scalar::overlap_sum(lo, hi, w, 10.0, 20.0) == 0.0);
  CHECK(kernels::scalar::dot(lo, w) == 0.0 + 2.0 + 6.0 + 20.0);
  CHECK(kernels::scalar::max_product(hi, w) == 24.0);
  CHECK(kernels::scalar::max_product({}, {}) == 0.0);
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(kernels::scalar::overlap_sum(lo, hi, w, 3.5, inf) == 3.0 * 0.5 + 4.0);
}

TEST_CASE("AVX2 kernels agree with the scalar reference") {
  if (!kernels::avx2::available()) {
    MESSAGE("AVX2 not available; scalar path only");
    return;
  }
  std::mt19937_64 rng(17);
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 7u, 8u, 13u, 64u, 67u, 1000u, 4099u}) {
    for (int rep = 0; rep < 20; ++rep) {
      std::vector<double> lo = draw(rng, n, 0.0, 10.0);
      std::vector<double> len = draw(rng, n, 0.0, 5.0);
      std::vector<double> hi(n);
      for (std::size_t i = 0; i < n; ++i) hi[i] = lo[i] + len[i];
      const std::vector<double> w = draw(rng, n, 0.0, 3.0);
      const double xl = 10.0 * uniform01(rng());
      const double xh = xl + 8.0 * uniform01(rng());

      // Different summation order: bounded by n u sum |terms|.
      double mag = 0.0;
      for (std::size_t i = 0; i < n; ++i) mag += w[i] * std::max(0.0, std::min(hi[i], xh) - std::max(lo[i], xl));
      const double s = kernels::scalar::overlap_sum(lo, hi, w, xl, xh);
      const double v = kernels::avx2::overlap_sum(lo, hi, w, xl, xh);
      CHECK(std::fabs(s - v) <= 2.0 * (n + 4) * kU * mag);

      const std::vector<double> a = draw(rng, n, -2.0, 2.0);
      double amag = 0.0;
      for (std::size_t i = 0; i < n; ++i) amag += std::fabs(a[i] * w[i]);
      CHECK(std::fabs(kernels::scalar::dot(a, w) - kernels::avx2::dot(a, w)) <= 2.0 * (n + 4) * kU * amag);

      // max is exact, so the variants must agree bit for bit.
      CHECK(kernels::scalar::max_product(hi, w) == kernels::avx2::max_product(hi, w));
    }
  }
  // Small integers sum exactly in any order.
  std::vector<double> ones(1001, 1.0);
  std::vector<double> twos(1001, 2.0);
  CHECK(kernels::avx2::dot(ones, twos) == 2002.0);
}

TEST_CASE("dispatch") {
  const char* forced = std::getenv("XLAB_SIMD");
  if (forced && std::string_view(forced) == "scalar") {
    CHECK(kernels::active_isa() == kernels::Isa::scalar);
  } else {
    CHECK((kernels::active_isa() == kernels::Isa::avx2) == kernels::avx2::available());
  }
  CHECK(kernels::isa_name(kernels::Isa::scalar) == "scalar");
  CHECK(kernels::isa_name(kernels::Isa::avx2) == "avx2");
}

TEST_CASE("parallel_for") {
  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) CHECK(h == 1);

  std::atomic<int> inner{0};
  parallel_for(8, [&](std::size_t) { parallel_for(10, [&](std::size_t) { inner++; }); });
  CHECK(inner == 80);

  CHECK_THROWS_AS(parallel_for(50, [](std::size_t i) {
                    if (i == 37) throw std::runtime_error("boom");
                  }),
                  std::runtime_error);
  parallel_for(0, [](std::size_t) { FAIL("no calls expected"); });
  CHECK(thread_count() >= 1);
}
