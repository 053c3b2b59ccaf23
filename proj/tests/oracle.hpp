#pragma once

// Independent reference values for the tests: Boost tanh-sinh quadrature of
// the defining integrals, piece by piece, with no use of the library's own
// tables or coordinate tricks.

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>

#include "xlab/calderon.hpp"
#include "xlab/rearrangement.hpp"

namespace oracle {

inline double integrate(const auto& f, double a, double b) {
  static thread_local boost::math::quadrature::tanh_sinh<double> ts;
  if (!(b > a)) return 0.0;
  return ts.integrate(f, a, b, 1e-13);
}

// t^{-1/p0} int_0^t w(1 - log(s/t)) f(s) s^{1/p0 - 1} ds
inline double P(const xlab::KernelSpec& spec, const xlab::StepFunction& f, double t) {
  const double a0 = 1.0 / spec.p0;
  double acc = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double lo = f.lower(i);
    const double hi = std::min(f.breakpoints()[i], t);
    if (f.values()[i] == 0.0 || !(hi > lo)) continue;
    acc += f.values()[i] * integrate([&](double s) {
      const double u = 1.0 - std::log(s / t);
      return spec.weight(u) * std::pow(s, a0 - 1.0);
    }, lo, hi);
  }
  return acc * std::pow(t, -a0);
}

// t^{-1/p1} int_t^inf f(s) s^{1/p1 - 1} ds
inline double Q(const xlab::KernelSpec& spec, const xlab::StepFunction& f, double t) {
  const double a1 = std::isinf(spec.p1) ? 0.0 : 1.0 / spec.p1;
  double acc = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double lo = std::max(f.lower(i), t);
    const double hi = f.breakpoints()[i];
    if (f.values()[i] == 0.0 || !(hi > lo)) continue;
    acc += f.values()[i] * integrate([&](double s) { return std::pow(s, a1 - 1.0); }, lo, hi);
  }
  return acc * std::pow(t, -a1);
}

inline double R(const xlab::KernelSpec& spec, const xlab::StepFunction& f, double t) {
  return P(spec, f, t) + Q(spec, f, t);
}

}  // namespace oracle
