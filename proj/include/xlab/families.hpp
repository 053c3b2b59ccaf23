#pragma once

// Test-function families used by the verification suites.

#include <cstdint>
#include <string>
#include <vector>

#include "xlab/rearrangement.hpp"

namespace xlab {

struct FamilyMember {
  std::string id;
  SimpleFunction f;
};

/// Seeded staircases: 4 to 32 atoms, values uniform in (0, 10], masses
/// log-uniform in [1e-2, 1e2], stored in random (non-monotone) order.
std::vector<FamilyMember> staircase_family(std::size_t count, std::uint64_t seed);

/// chi_(0, m) for each m.
std::vector<FamilyMember> indicator_family(const std::vector<double>& masses = {0.1, 1.0, 10.0});

/// 2^{-k} on a set of measure 2^k, k = -3..3, in shuffled order; plus the
/// same levels in increasing order.
std::vector<FamilyMember> dyadic_family();

/// Uniform double in [0, 1) from the top 53 bits of a 64-bit draw.
double uniform01(std::uint64_t bits);

/// 400 log-spaced points on [1e-4 b_1, 1e4 b_n] for f* with breakpoints
/// b_1 < ... < b_n; `points` and `decades` override the defaults.
std::vector<double> default_t_grid(const DecreasingStep& fstar, std::size_t points = 400, double decades = 4.0);

}  // namespace xlab
