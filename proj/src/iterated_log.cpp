#include "xlab/iterated_log.hpp"

#include <cmath>
#include <stdexcept>

namespace xlab {

double logk(int k, double t) {
  if (k < 1) throw std::invalid_argument("logk: k must be >= 1");
  if (!(t > 0.0)) throw std::invalid_argument("logk: t must be > 0");
  double x = t;
  for (int i = 0; i < k; ++i) x = x > 1.0 ? 1.0 + std::log(x) : 1.0;
  return x;
}

}  // namespace xlab
