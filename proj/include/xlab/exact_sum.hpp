#pragma once

#include <span>
#include <vector>

namespace xlab {

/// Correctly rounded floating-point summation (Shewchuk's partials).
///
/// value() is the exact sum of every add()ed term rounded once to double,
/// so it does not depend on the order in which terms were added. The
/// rearrangement code relies on this: breakpoints computed from the same
/// multiset of masses along different routes compare equal bit for bit.
/// Terms must be finite.
class ExactSum {
 public:
  void add(double x);
  double value() const;

 private:
  std::vector<double> partials_;
};

double exact_sum(std::span<const double> terms);

}  // namespace xlab
