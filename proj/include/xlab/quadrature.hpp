#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace xlab {

using Integrand = std::function<double(double)>;

/// Stop when the estimated error is below max(abs, rel * |value|).
struct Tolerance {
  double abs = 1e-10;
  double rel = 1e-8;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
  bool converged = true;

  /// value, or QuadratureError carrying this partial result.
  double checked_value() const;
};

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const char* what, QuadratureResult partial)
      : std::runtime_error(what), partial_(partial) {}
  const QuadratureResult& partial() const { return partial_; }

 private:
  QuadratureResult partial_;
};

/// Adaptive Gauss-Kronrod (7/15) with bisection of the interval carrying the
/// largest error. Integrand values are never requested at a or b. The
/// returned value is summed over the final partition in left-to-right
/// order, so results are bitwise reproducible.
QuadratureResult integrate(const Integrand& f, double a, double b, Tolerance tol = {},
                           std::size_t max_subdivisions = 2000);

/// Same, starting from the partition given by `points` (sorted, >= 2).
QuadratureResult integrate(const Integrand& f, std::span<const double> points, Tolerance tol = {},
                           std::size_t max_subdivisions = 2000);

/// Upper bound for int_U^inf u^beta e^{kappa(1-u)} du, valid when
/// kappa * U >= 2 beta: 2 U^beta e^{kappa(1-U)} / kappa.
double log_weight_tail_bound(double beta, double kappa, double u);

/// int_0^inf w(u0 + v) e^{-kappa v} dv for kappa > 0 and w(u) <= u^beta.
/// The truncation point is chosen so the dropped tail is below tol.rel of
/// the (>= w(u0)/kappa) value.
QuadratureResult integrate_shifted_tail(const Integrand& w, double beta, double kappa, double u0,
                                        Tolerance tol = {});

/// int_{u_lo}^{u_hi} w(u) e^{kappa(1-u)} du with 1 <= u_lo <= u_hi. u_hi may
/// be +inf when kappa > 0; the tail is then cut where the envelope
/// w(u) <= u^beta bounds it by tol.abs / 10.
QuadratureResult integrate_log_weight(const Integrand& w, double beta, double kappa, double u_lo,
                                      double u_hi, Tolerance tol = {});

/// int_0^t w(1 - log(s/t)) s^{1/p0 - 1} ds, computed as
/// t^{1/p0} int_1^inf w(u) e^{(1-u)/p0} du (s = t e^{1-u}).
QuadratureResult integrate_log_singular(const Integrand& w, double t_upper, double p0, double beta,
                                        Tolerance tol = {});

/// int_0^b f(s) ds for f = O(s^{-sigma} |log s|^k) at 0, sigma < 1, through
/// s = b e^{-v}. The v-range is cut where e^{-(1-sigma)v} is below 1e-17.
QuadratureResult integrate_from_zero(const Integrand& f, double b, double sigma, Tolerance tol = {});

/// Antiderivative table for g(u) = w(u) e^{kappa(1-u)} on [1, U].
///
/// The range is covered by panels on which g is represented by a degree-23
/// Chebyshev series (panels are halved until the trailing coefficients are
/// negligible), and the series is integrated term by term. Each lookup costs
/// one Clenshaw sum and no evaluations of w. For kappa > 0 the table stores
/// tails int_u^inf and U is set by the envelope w(u) <= u^beta; for
/// kappa <= 0 it stores int_1^u up to u_max and falls back to adaptive
/// quadrature past it.
class LogWeightTable {
 public:
  LogWeightTable(Integrand w, double beta, double kappa, double u_max = 64.0);

  double kappa() const { return kappa_; }
  double upper() const { return upper_; }

  /// int_{u_lo}^{u_hi} g, 1 <= u_lo <= u_hi; u_hi = inf needs kappa > 0.
  double integral(double u_lo, double u_hi) const;
  /// int_u^inf g (kappa > 0).
  double tail(double u) const;
  /// e^{kappa(u-1)} int_u^inf g = int_0^inf w(u + v) e^{-kappa v} dv (kappa > 0).
  double tail_scaled(double u) const;
  /// int_1^inf g (kappa > 0).
  double total() const;
  std::size_t panel_count() const { return starts_.size(); }

 private:
  static constexpr std::size_t kNodes = 24;

  struct Panel {
    double start;
    double end;
    double total;
    std::vector<double> antideriv;  // Chebyshev coefficients, zero at start
  };

  void build();
  void fit_panel(double a, double b, int depth);
  std::size_t locate(double u) const;
  double partial(std::size_t p, double u) const;  // int_{start_p}^u g
  double prefix(double u) const;                  // int_1^u g
  double g(double u) const { return w_(u) * std::exp(kappa_ * (1.0 - u)); }

  Integrand w_;
  double beta_;
  double kappa_;
  double upper_ = 1.0;
  std::vector<Panel> panels_;
  std::vector<double> starts_;
  std::vector<double> prefix_;  // int_1^{start_p}
  std::vector<double> suffix_;  // int_{start_p}^{upper}
};

}  // namespace xlab
