#include <doctest.h>

#include <cmath>

#include "oracle.hpp"
#include "xlab/families.hpp"
#include "xlab/iterated_log.hpp"
#include "xlab/norms.hpp"

using namespace xlab;

namespace {

const double e = std::exp(1.0);

// int_0^inf weight(t) f*(t) dt piece by piece.
double weighted_integral(const DecreasingStep& f, const auto& weight) {
  double acc = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double lo = f.lower(i), hi = f.breakpoints()[i];
    // split at 1 where log^+ switches off
    if (lo < 1.0 && hi > 1.0) {
      acc += f.values()[i] * (oracle::integrate(weight, lo, 1.0) + oracle::integrate(weight, 1.0, hi));
    } else {
      acc += f.values()[i] * oracle::integrate(weight, lo, hi);
    }
  }
  return acc;
}

DecreasingStep member(std::uint64_t seed) { return rearrange(staircase_family(1, seed)[0].f); }

}  // namespace

TEST_CASE("Lorentz norms") {
  CHECK(lorentz_norm(DecreasingStep::indicator(4.0), {2.0, 1.0}) == doctest::Approx(4.0).epsilon(1e-15));
  for (double a : {0.3, 2.0, 7.0}) {
    for (double p : {1.0, 1.5, 3.0}) {
      CHECK(lorentz_norm(DecreasingStep::indicator(a), {p, p}) == doctest::Approx(std::pow(a, 1.0 / p)).epsilon(1e-14));
    }
  }
  CHECK(lorentz_norm(DecreasingStep(), {2.0, 1.0}) == 0.0);
  const DecreasingStep f = member(4);
  for (double p : {1.5, 2.0, 4.0}) {
    for (double q : {0.5, 1.0, 3.0}) {
      std::vector<double> fq;
      for (double x : f.values()) fq.push_back(std::pow(x, q));
      const DecreasingStep g(std::vector<double>(f.breakpoints().begin(), f.breakpoints().end()), fq);
      const double ref = std::pow(weighted_integral(g, [&](double t) { return std::pow(t, q / p - 1.0); }), 1.0 / q);
      CHECK(lorentz_norm(f, {p, q}) == doctest::Approx(ref).epsilon(1e-10));
    }
  }
  CHECK_THROWS_AS(lorentz_norm(f, {0.5, 1.0}), std::invalid_argument);
}

TEST_CASE("weak Lorentz norm") {
  CHECK(weak_lorentz_norm(DecreasingStep::indicator(1.0), 2.0) == 1.0);
  const DecreasingStep f({1.0, 4.0}, {2.0, 1.0});
  CHECK(weak_lorentz_norm(f, 2.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(weak_lorentz_norm(f.scaled(3.0), 2.0) == doctest::Approx(6.0).epsilon(1e-15));
  CHECK(lorentz_norm(f, {2.0, INFINITY}) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("L log L norms") {
  CHECK(llogl_norm(DecreasingStep::indicator(1.0), 1.0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(llogl_norm(DecreasingStep::indicator(e), 1.0) == doctest::Approx(e + 1.0).epsilon(1e-12));
  const DecreasingStep f = member(8);
  CHECK(llogl_norm(f, 0.0) == doctest::Approx(f.integral()).epsilon(1e-13));
  for (double alpha : {0.5, 1.0, 2.0, 2.7, 3.0}) {
    const double ref = weighted_integral(f, [&](double t) { return std::pow(1.0 + std::max(0.0, -std::log(t)), alpha); });
    CHECK(llogl_norm(f, alpha) == doctest::Approx(ref).epsilon(1e-8));
  }

  CHECK(llogl_log3_norm(DecreasingStep()) == 0.0);
  const double ind = llogl_log3_norm(DecreasingStep::indicator(1.0));
  CHECK(ind > 2.0);
  CHECK(ind == doctest::Approx(oracle::integrate([](double t) { return logk(1, 1 / t) * logk(3, 1 / t); }, 0.0, 1.0))
                   .epsilon(1e-8));
  const DecreasingStep past_one = DecreasingStep({1.0, 5.0}, {2.0, 1.0});
  CHECK(llogl_log3_norm(past_one) == doctest::Approx(weighted_integral(past_one, [](double t) {
                                                        return logk(1, 1 / t) * logk(3, 1 / t);
                                                      }))
                                          .epsilon(1e-8));
}

TEST_CASE("Marcinkiewicz and exponential norms") {
  CHECK(mphi_norm(double_star(DecreasingStep::indicator(1.0))) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(mphi_norm(double_star(DecreasingStep())) == 0.0);
  CHECK(lexp_norm(double_star(DecreasingStep::indicator(1.0))) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(lexp_norm(double_star(DecreasingStep())) == 0.0);
  const DecreasingStep f = member(9);
  CHECK(lexp_norm(double_star(f.scaled(2.5))) == doctest::Approx(2.5 * lexp_norm(double_star(f))).epsilon(1e-14));
  // dense-scan oracles, resolution ~1e-4 relative
  const PiecewiseHyperbolic fss = double_star(f);
  double m = 0.0, l = 0.0;
  for (double t = 1e-8; t < 1e8; t *= 1.0001) {
    m = std::max(m, fss(t) * t / (1.0 + std::max(0.0, std::log(t))));
    if (t < 1.0) l = std::max(l, fss(t) / (1.0 - std::log(t)));
  }
  CHECK(mphi_norm(fss) >= m * (1 - 1e-12));
  CHECK(mphi_norm(fss) == doctest::Approx(m).epsilon(2e-4));
  CHECK(lexp_norm(fss) >= l * (1 - 1e-12));
  CHECK(lexp_norm(fss) == doctest::Approx(l).epsilon(2e-4));
}

TEST_CASE("L^{p,1} phi(log L) norm") {
  CHECK(philog_norm(DecreasingStep::indicator(1.0), 2.0, AdmissibleFunction::identity()) ==
        doctest::Approx(6.0).epsilon(1e-10));
  CHECK(philog_norm(DecreasingStep(), 2.0, AdmissibleFunction::identity()) == 0.0);
  const DecreasingStep f = member(12);
  CHECK(philog_norm(f, 3.0, AdmissibleFunction::constant_one()) ==
        doctest::Approx(lorentz_norm(f, {3.0, 1.0})).epsilon(1e-12));
  for (const auto& phi : {AdmissibleFunction::identity(), AdmissibleFunction::example(1.0, {1.0}),
                          AdmissibleFunction::example(2.0, {0.0, 1.5})}) {
    for (double p : {1.0, 2.0, 5.0}) {
      const double ref = weighted_integral(f, [&](double r) {
        return phi(1.0 + std::max(0.0, -std::log(r))) * std::pow(r, 1.0 / p - 1.0);
      });
      CHECK(philog_norm(f, p, phi) == doctest::Approx(ref).epsilon(1e-8));
    }
  }
}
