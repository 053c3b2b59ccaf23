#pragma once

// Simple functions, step functions on the half-line, decreasing
// rearrangements and the running average f**.
//
// Step functions are right-continuous: value v[i] holds on
// [b[i-1], b[i]) with b[-1] = 0, and the function vanishes on [b[n-1], inf).
// This matches f*(t) = inf{y : lambda_f(y) <= t}. Every quantity computed
// downstream is an integral or a supremum, so the convention at the
// breakpoints themselves never changes a result.

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace xlab {

/// A nonnegative simple function, stored as (value, mass) atoms: value
/// taken on a set of that measure. Atom order is irrelevant for anything
/// rearrangement-invariant; lay_out() uses it to build a concrete
/// non-monotone function on the half-line.
class SimpleFunction {
 public:
  struct Atom {
    double value;
    double mass;
  };

  SimpleFunction() = default;
  /// Throws std::invalid_argument unless every value is finite and >= 0
  /// and every mass finite and > 0.
  explicit SimpleFunction(std::vector<Atom> atoms);

  /// c * chi_E with mu(E) = mass.
  static SimpleFunction indicator(double mass, double c = 1.0);

  std::span<const Atom> atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  bool empty() const { return atoms_.empty(); }
  double total_mass() const;
  double max_value() const;
  SimpleFunction scaled(double c) const;

 private:
  std::vector<Atom> atoms_;
};

/// Finite-support nonnegative step function on (0, inf), kept in canonical
/// form: adjacent equal values merged, no trailing zero pieces.
class StepFunction {
 public:
  StepFunction() = default;
  /// breakpoints strictly increasing, positive and finite; values finite and
  /// >= 0; same length. Throws std::invalid_argument otherwise.
  StepFunction(std::vector<double> breakpoints, std::vector<double> values);

  double operator()(double t) const;

  std::span<const double> breakpoints() const { return breakpoints_; }
  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  /// Left end of piece i.
  double lower(std::size_t i) const { return i == 0 ? 0.0 : breakpoints_[i - 1]; }
  double support_end() const { return empty() ? 0.0 : breakpoints_.back(); }
  double max_value() const;

  /// Integral over (0, inf).
  double integral() const;
  bool is_nonincreasing() const;
  StepFunction scaled(double c) const;
  /// s -> f(lambda * s).
  StepFunction dilated(double lambda) const;

 private:
  std::vector<double> breakpoints_;
  std::vector<double> values_;
};

/// A step function with strictly decreasing positive values: the
/// canonical representation of a decreasing rearrangement f*.
class DecreasingStep {
 public:
  DecreasingStep() = default;
  /// Values must be nonincreasing (they are merged to strictly decreasing);
  /// otherwise the StepFunction rules apply.
  DecreasingStep(std::vector<double> breakpoints, std::vector<double> values);

  /// c * chi_(0, m).
  static DecreasingStep indicator(double m, double c = 1.0);

  double operator()(double t) const;
  /// |{s : f*(s) > y}|.
  double distribution(double y) const;

  std::span<const double> breakpoints() const { return breakpoints_; }
  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  double lower(std::size_t i) const { return i == 0 ? 0.0 : breakpoints_[i - 1]; }
  double support_end() const { return empty() ? 0.0 : breakpoints_.back(); }
  /// f*(0+), i.e. the L-infinity norm.
  double sup() const { return empty() ? 0.0 : values_.front(); }

  double integral() const;
  DecreasingStep scaled(double c) const;
  StepFunction as_step() const;

 private:
  std::vector<double> breakpoints_;
  std::vector<double> values_;
};

/// f** as pieces t -> a/t + b on (lower, upper]; the last piece runs to
/// infinity. Continuous and nonincreasing when built by double_star().
class PiecewiseHyperbolic {
 public:
  struct Piece {
    double lower;
    double upper;
    double a;
    double b;
  };

  PiecewiseHyperbolic() = default;
  explicit PiecewiseHyperbolic(std::vector<Piece> pieces);

  double operator()(double t) const;
  std::span<const Piece> pieces() const { return pieces_; }

 private:
  std::vector<Piece> pieces_;
};

/// mu({f > y}) for y >= 0, summed exactly.
double distribution(const SimpleFunction& f, double y);

/// Decreasing rearrangement of a simple function. Atoms are sorted by value
/// (ties merged) and breakpoints are exact sums of masses, so
/// distribution(f, y) == rearrange(f).distribution(y) bit for bit.
DecreasingStep rearrange(const SimpleFunction& f);

/// Rearrangement with respect to Lebesgue measure on the half-line.
/// A step function that is already nonincreasing is returned unchanged.
DecreasingStep rearrange_step(const StepFunction& g);

/// Places the atoms side by side on (0, inf) in their stored order.
StepFunction lay_out(const SimpleFunction& f);

/// Exact f**(t) = (1/t) int_0^t f*.
PiecewiseHyperbolic double_star(const DecreasingStep& fstar);

struct GhSplit {
  DecreasingStep gstar;  // (f* - f*(t))^+ on (0, t)
  DecreasingStep hstar;  // min(f*, f*(t))
};

/// Splits f* at level f*(t) into the rearrangements of
/// g = (f - f*(t)) chi_E and h = f*(t) chi_E + f chi_{E^c}, E = {f > f*(t)}.
GhSplit gh_split(const DecreasingStep& fstar, double t);

}  // namespace xlab
