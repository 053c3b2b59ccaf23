#pragma once

// Admissible growth functions phi : [1, inf) -> [1, inf): phi(1) = 1,
// log-concave, and gamma/x <= phi'(x)/phi(x) <= beta/x.

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace xlab {

class AdmissibleFunction {
 public:
  using Map = std::function<double(double)>;

  /// phi(x) = x^gamma * prod_k (log_k x)^{beta_k}, k = 1..m.
  ///
  /// The certified upper exponent is gamma + sum(beta_k): each iterated-log
  /// factor has logarithmic derivative at most 1/x on [1, inf). gamma = 0 is
  /// accepted as the degenerate case (phi == 1 when there are no logs).
  static AdmissibleFunction example(double gamma, std::vector<double> log_exponents = {});
  static AdmissibleFunction constant_one() { return example(0.0); }
  static AdmissibleFunction identity() { return example(1.0); }

  /// A user-supplied map with user-certified exponents. Throws
  /// std::invalid_argument unless phi(1) == 1 (to 1e-12) and
  /// 0 <= gamma <= beta.
  static AdmissibleFunction custom(Map map, double gamma, double beta, std::string label = "custom");

  /// Throws std::domain_error for x < 1. phi(inf) is inf unless phi == 1.
  double operator()(double x) const;

  bool is_example_family() const { return !map_; }
  double gamma() const { return gamma_; }
  std::span<const double> log_exponents() const { return log_exponents_; }
  double beta_cert() const { return beta_; }
  /// max(1, beta_cert)
  double beta0() const { return beta_ > 1.0 ? beta_ : 1.0; }
  bool degenerate() const { return gamma_ == 0.0; }
  /// phi == 1 identically.
  bool is_constant_one() const;
  std::string describe() const;

 private:
  AdmissibleFunction() = default;

  double gamma_ = 0.0;
  double beta_ = 0.0;
  std::vector<double> log_exponents_;
  Map map_;
  std::string label_;
};

/// Result of sampling the admissibility conditions. Margins are signed:
/// negative means the condition was violated by that much.
struct PhiCheckReport {
  bool normalization = false;
  bool log_concavity = false;
  bool envelope = false;
  bool submultiplicative = false;
  double normalization_error = 0.0;    // |phi(1) - 1|
  double log_concavity_margin = 0.0;   // min log phi(mix) - mix of log phi
  double envelope_margin = 0.0;        // min over x of the x*phi'/phi gaps
  double submultiplicative_margin = 0.0;  // min log(x^beta phi(y)) - log phi(xy)
  bool degenerate = false;             // gamma == 0
  bool all_passed() const { return normalization && log_concavity && envelope && submultiplicative; }
};

/// Log-spaced check grid on [1, x_max].
std::vector<double> phi_check_grid(double x_max = 1e4, std::size_t points = 120);

/// Samples normalization, log-concavity over grid pairs (theta in
/// {1/4, 1/2, 3/4}), the envelope via finite differences (relative step
/// 1e-6, tolerance 1e-4; lower side only when gamma > 0) and
/// phi(xy) <= x^beta phi(y) over grid pairs.
PhiCheckReport phi_check(const AdmissibleFunction& phi, std::span<const double> grid);
/// Same checks on a raw map, for candidates that are not admissible.
PhiCheckReport phi_check(const AdmissibleFunction::Map& phi, double gamma, double beta,
                         std::span<const double> grid);

/// Closed-form upper bound on inf_{q >= q0} phi(q) e^{-x/q}:
/// phi(q0) e^{-x/q0} for x >= 0, q0^beta e^{1/q0} phi(1 - x) for x < 0.
double lemma_infimum_bound(const AdmissibleFunction& phi, double q0, double x);

/// Numerical minimum of q -> phi(q) e^{-x/q} on [q0, max(q0, 10(1 + |x|))]:
/// log-spaced scan followed by golden-section refinement in log q.
double lemma_infimum_numeric(const AdmissibleFunction& phi, double q0, double x);

}  // namespace xlab
