#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "xlab/admissible.hpp"
#include "xlab/iterated_log.hpp"

using namespace xlab;

namespace {

const double e = std::exp(1.0);

// inf_{q >= q0} phi(q) e^{-x/q} by a dense scan in log q.
double grid_infimum(const AdmissibleFunction& phi, double q0, double x) {
  double best = phi(q0) * std::exp(-x / q0);
  const double hi = std::log(1000.0 * q0);
  for (int k = 0; k <= 200000; ++k) {
    const double q = q0 * std::exp(hi * k / 200000.0);
    best = std::min(best, phi(q) * std::exp(-x / q));
  }
  return best;
}

}  // namespace

TEST_CASE("phi evaluation") {
  const AdmissibleFunction id = AdmissibleFunction::identity();
  CHECK(id(1.0) == 1.0);
  CHECK(id(3.5) == 3.5);
  const AdmissibleFunction xlog = AdmissibleFunction::example(1.0, {1.0});
  CHECK(xlog(e) == doctest::Approx(2.0 * e).epsilon(1e-15));
  const AdmissibleFunction one = AdmissibleFunction::constant_one();
  CHECK(one.is_constant_one());
  CHECK(one(1e9) == 1.0);
  CHECK(one.degenerate());
  const AdmissibleFunction loglog = AdmissibleFunction::example(0.5, {0.0, 2.0});
  CHECK(loglog(50.0) == doctest::Approx(std::sqrt(50.0) * std::pow(logk(2, 50.0), 2.0)).epsilon(1e-14));
  CHECK(loglog.beta_cert() == 2.5);
  CHECK_THROWS_AS(id(0.5), std::domain_error);
  CHECK_THROWS_AS(AdmissibleFunction::example(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(AdmissibleFunction::custom([](double x) { return 2.0 * x; }, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("phi_check") {
  const auto grid = phi_check_grid();
  SUBCASE("identity passes with gamma = beta = 1") {
    const PhiCheckReport r = phi_check(AdmissibleFunction::identity(), grid);
    CHECK(r.all_passed());
    CHECK(!r.degenerate);
  }
  SUBCASE("constant one is degenerate but passes") {
    const PhiCheckReport r = phi_check(AdmissibleFunction::constant_one(), grid);
    CHECK(r.all_passed());
    CHECK(r.degenerate);
  }
  SUBCASE("x^2 is submultiplicative with equality") {
    const PhiCheckReport r = phi_check(AdmissibleFunction::example(2.0), grid);
    CHECK(r.all_passed());
    CHECK(std::fabs(r.submultiplicative_margin) < 1e-9);
  }
  SUBCASE("model family members pass") {
    for (const auto& phi : {AdmissibleFunction::example(1.0, {1.0}), AdmissibleFunction::example(0.5, {1.0, 1.0}),
                            AdmissibleFunction::example(2.0, {0.0, 0.0, 3.0})}) {
      CHECK(phi_check(phi, grid).all_passed());
    }
  }
  SUBCASE("e^x is rejected") {
    // log e^x is linear, so log-concavity holds with equality; normalization,
    // the envelope and submultiplicativity are what fail. exp overflows past 709.
    const PhiCheckReport r = phi_check([](double x) { return std::exp(x); }, 1.0, 1.0, phi_check_grid(500.0, 60));
    CHECK(!r.all_passed());
    CHECK(!r.normalization);
    CHECK(!r.envelope);
    CHECK(!r.submultiplicative);
    CHECK(std::fabs(r.log_concavity_margin) < 1e-9);
  }
  SUBCASE("a log-convex map fails log-concavity") {
    const PhiCheckReport r = phi_check([](double x) { return std::exp((x - 1) * (x - 1)); }, 0.0, 1.0, grid);
    CHECK(!r.log_concavity);
  }
}

TEST_CASE("lemma infimum bound and numeric minimum") {
  const AdmissibleFunction id = AdmissibleFunction::identity();
  CHECK(lemma_infimum_bound(id, 2.0, 1.0) == doctest::Approx(2.0 * std::exp(-0.5)).epsilon(1e-14));
  CHECK(lemma_infimum_bound(id, 2.0, -3.0) == doctest::Approx(8.0 * std::exp(0.5)).epsilon(1e-14));
  CHECK(lemma_infimum_bound(AdmissibleFunction::example(1.0, {2.0}), 1.0, 0.0) == doctest::Approx(1.0));

  CHECK(lemma_infimum_numeric(id, 2.0, -3.0) == doctest::Approx(3.0 * e).epsilon(1e-10));
  CHECK(lemma_infimum_numeric(id, 2.0, -3.0) == doctest::Approx(grid_infimum(id, 2.0, -3.0)).epsilon(1e-8));
  CHECK(lemma_infimum_numeric(id, 2.0, 1.0) == doctest::Approx(2.0 * std::exp(-0.5)).epsilon(1e-12));
  const AdmissibleFunction phi = AdmissibleFunction::example(1.5, {1.0});
  CHECK(lemma_infimum_numeric(phi, 3.0, 0.0) == doctest::Approx(phi(3.0)).epsilon(1e-14));
  for (double x : {-20.0, -5.0, -0.5, 0.7, 4.0}) {
    for (double q0 : {1.0, 1.7, 4.0}) {
      const double num = lemma_infimum_numeric(phi, q0, x);
      CHECK(num == doctest::Approx(grid_infimum(phi, q0, x)).epsilon(1e-7));
      CHECK(num <= lemma_infimum_bound(phi, q0, x) * (1 + 1e-12));
    }
  }
}
