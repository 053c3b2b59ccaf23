#pragma once

namespace xlab {

/// Iterated logarithm: log_1 t = 1 + log^+ t, log_k t = log_1(log_{k-1} t).
/// Always >= 1, and identically 1 on (0, 1]. Throws std::invalid_argument
/// for k < 1 or t <= 0.
double logk(int k, double t);

}  // namespace xlab
