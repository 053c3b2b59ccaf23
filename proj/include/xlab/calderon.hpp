#pragma once

// The operators
//
//   P f(t) = t^{-1/p0} int_0^t w(1 - log(s/t)) f(s) s^{1/p0 - 1} ds,
//   Q f(t) = t^{-1/p1} int_t^inf f(s) s^{1/p1 - 1} ds,   R = P + Q,
//
// with w(u) = u^delta phi(u). After s = t e^{1-u} the P integral over a
// piece of f becomes int w(u) e^{(1-u)/p0} du over a u-interval, which is
// read off a LogWeightTable. Q over a piece is a power (or log) difference.

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "xlab/admissible.hpp"
#include "xlab/quadrature.hpp"
#include "xlab/rearrangement.hpp"

namespace xlab {

struct KernelSpec {
  double p0 = 2.0;
  double p1 = 4.0;  // may be +inf
  AdmissibleFunction phi = AdmissibleFunction::constant_one();
  int delta = 0;

  /// Throws std::invalid_argument unless 1 <= p0 < p1 <= inf, delta in
  /// {0, 1}, and delta = 1 only with p0 = 1.
  void validate() const;
  double a0() const { return 1.0 / p0; }
  /// 1/p1, zero for p1 = inf.
  double a1() const;
  bool p1_infinite() const;
  /// u^delta phi(u).
  double weight(double u) const;
  /// Envelope exponent of the weight: beta_cert + delta.
  double weight_beta() const { return phi.beta_cert() + delta; }
  std::string describe() const;
};

/// A step or hyperbolic input flattened for repeated evaluation:
/// f(s) = v on [lo, hi) plus a / s on [lo, hi) for the hyperbolic part.
struct OperatorInput {
  std::vector<double> lo, hi, v;     // constant part, v > 0 only
  std::vector<double> alo, ahi, a;   // a / s part, a > 0 only
  double support_end = 0.0;          // end of the constant part
  std::vector<double> kinks;         // every finite piece boundary

  static OperatorInput from(const StepFunction& f);
  static OperatorInput from(const DecreasingStep& f);
  static OperatorInput from(const PiecewiseHyperbolic& f);
};

struct OperatorValues {
  double p = 0.0;
  double q = 0.0;
  double r = 0.0;
};

/// R f sampled on a grid.
struct OperatorProfile {
  std::vector<double> t;
  std::vector<double> values;
};

struct OperatorCoords;
class CalderonOperator;

/// An input bound to an operator, with the spec-dependent coordinates
/// computed once. Cheap to call at many t (for instance inside quadrature).
class BoundOperator {
 public:
  OperatorValues operator()(double t) const;

 private:
  friend class CalderonOperator;
  BoundOperator(const CalderonOperator* op, OperatorInput input);

  const CalderonOperator* op_;
  OperatorInput input_;
  std::shared_ptr<const OperatorCoords> coords_;
};

class CalderonOperator {
 public:
  explicit CalderonOperator(KernelSpec spec);

  const KernelSpec& spec() const { return spec_; }

  /// The returned object refers to this operator, which must outlive it.
  BoundOperator bind(OperatorInput f) const;

  OperatorValues apply(const OperatorInput& f, double t) const;
  /// One entry per t, computed in parallel; identical to calling apply().
  std::vector<OperatorValues> apply(const OperatorInput& f, std::span<const double> ts) const;

  double p(const OperatorInput& f, double t) const;
  double q(const OperatorInput& f, double t) const;
  double r(const OperatorInput& f, double t) const { return apply(f, t).r; }

  /// k(t, r): w(1 - log(r/t)) (r/t)^{1/p0} / r for r < t, (r/t)^{1/p1} / r
  /// otherwise.
  double kernel(double t, double r) const;
  /// int_0^s k(t, r) dr, which is R(chi_(0,s))(t).
  double kernel_cumulative(double t, double s) const;
  /// int_1^inf w(u) e^{(1-u)/p0} du = t^{-1/p0} int_0^t w(1 - log(s/t)) s^{1/p0-1} ds.
  double c_phi() const;

  /// sup_{t,s} (t/s)^{1/p} int_0^s k(t, r) dr for p0 < p <= p1 < inf. The
  /// objective depends on x = s/t only: x <= 1 is searched numerically,
  /// x > 1 is handled in closed form.
  double ak_norm(double p) const;

  /// R f on a grid (nonnegative, any order).
  OperatorProfile profile(const StepFunction& f, std::span<const double> grid) const;
  /// (R f)* from R f sampled on a sorted grid with at least 512 points per
  /// decade: cell [t_{k-1}, t_k) takes the value at t_{k-1}, the first cell
  /// (0, t_0) the value at t_0. Accurate to the grid resolution only.
  DecreasingStep profile_and_rearrange(const StepFunction& f, std::span<const double> grid) const;

 private:
  friend class BoundOperator;
  OperatorValues evaluate(const OperatorInput& f, const OperatorCoords& c, double t) const;
  // int_u^inf w e^{a0(1-u)}, computed with relative accuracy.
  double p_tail(double u) const;

  KernelSpec spec_;
  bool closed_form_p_ = false;  // phi == 1, delta == 0
  std::shared_ptr<const LogWeightTable> step_table_;   // kappa = a0
  std::shared_ptr<const LogWeightTable> hyper_table_;  // kappa = a0 - 1
};

/// Log-spaced grid with `per_decade` points per decade covering [lo, hi].
std::vector<double> log_grid(double lo, double hi, std::size_t per_decade);
/// n log-spaced points on [lo, hi], endpoints included.
std::vector<double> log_points(double lo, double hi, std::size_t n);

// Convenience wrappers for single evaluations.
double p_op(const KernelSpec& spec, const DecreasingStep& f, double t);
double q_op(const KernelSpec& spec, const DecreasingStep& f, double t);
double r_op(const KernelSpec& spec, const DecreasingStep& f, double t);
double kernel_eval(const KernelSpec& spec, double t, double r);
double kernel_cumulative(const KernelSpec& spec, double t, double s);
double ak_norm(const KernelSpec& spec, double p);
/// Computed independently of the tables through integrate_log_singular.
double c_phi(const KernelSpec& spec, Tolerance tol = {});

struct DilationPair {
  double dilated_input;  // R(f(lambda .))(t)
  double dilated_output; // (R f)(lambda t)
};
DilationPair dilation_check(const KernelSpec& spec, const StepFunction& f, double lambda, double t);

/// 2 p1 beta0^beta0 phi(1 / (1/p0 - 1/p)).
double ak_bound(const KernelSpec& spec, double p);

}  // namespace xlab
