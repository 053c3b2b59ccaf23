#pragma once

// Rearrangement-invariant norms evaluated on f* (a DecreasingStep) or f**
// (a PiecewiseHyperbolic). Power integrals are done in closed form; the
// logarithmic weights near t = 0 go through the substitution t = e^{1-u}.

#include <limits>

#include "xlab/admissible.hpp"
#include "xlab/quadrature.hpp"
#include "xlab/rearrangement.hpp"

namespace xlab {

struct LorentzParams {
  double p = 1.0;
  double q = 1.0;  // may be +inf
  /// Throws std::invalid_argument unless p >= 1 (finite) and q > 0.
  void validate() const;
};

/// (int_0^inf t^{q/p - 1} f*(t)^q dt)^{1/q}; q = inf gives the weak norm.
/// Integrals are over pieces of the form int t^{q/p-1} dt, so the result is
/// exact up to rounding.
double lorentz_norm(const DecreasingStep& fstar, LorentzParams params);

/// sup_t t^{1/p} f*(t), attained as t approaches a breakpoint from the left.
double weak_lorentz_norm(const DecreasingStep& fstar, double p);

/// int_0^inf f*(t) (1 + log^+(1/t))^alpha dt. Integer alpha uses the
/// recursion I_n(t) = t (1 - log t)^n + n I_{n-1}(t); other alpha use
/// quadrature.
double llogl_norm(const DecreasingStep& fstar, double alpha, Tolerance tol = {});

/// int_0^inf f*(t) log_1(1/t) log_3(1/t) dt.
double llogl_log3_norm(const DecreasingStep& fstar, Tolerance tol = {});

/// sup_t f**(t) t / (1 + log^+ t).
double mphi_norm(const PiecewiseHyperbolic& fss);

/// sup_{0<t<1} f**(t) / (1 + log(1/t)).
double lexp_norm(const PiecewiseHyperbolic& fss);

/// int_0^inf phi(1 + log^+(1/r)) f*(r) r^{1/p - 1} dr.
double philog_norm(const DecreasingStep& fstar, double p, const AdmissibleFunction& phi);

}  // namespace xlab
