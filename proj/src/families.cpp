#include "xlab/families.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

#include "xlab/calderon.hpp"

namespace xlab {

double uniform01(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

std::vector<FamilyMember> staircase_family(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<FamilyMember> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t pieces = 4 + static_cast<std::size_t>(rng() % 29);
    std::vector<SimpleFunction::Atom> atoms(pieces);
    for (auto& a : atoms) {
      a.value = 10.0 * (1.0 - uniform01(rng()));
      a.mass = std::pow(10.0, -2.0 + 4.0 * uniform01(rng()));
    }
    out.push_back({"staircase-" + std::to_string(seed) + "-" + std::to_string(i), SimpleFunction(std::move(atoms))});
  }
  return out;
}

std::vector<FamilyMember> indicator_family(const std::vector<double>& masses) {
  std::vector<FamilyMember> out;
  for (double m : masses) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "indicator-%g", m);
    out.push_back({buf, SimpleFunction::indicator(m)});
  }
  return out;
}

std::vector<FamilyMember> dyadic_family() {
  std::vector<SimpleFunction::Atom> shuffled;
  for (int k : {0, 3, -2, 1, -3, 2, -1}) shuffled.push_back({std::ldexp(1.0, -k), std::ldexp(1.0, k)});
  std::vector<SimpleFunction::Atom> rising = shuffled;
  std::sort(rising.begin(), rising.end(), [](const auto& a, const auto& b) { return a.value < b.value; });
  return {{"dyadic-shuffled", SimpleFunction(shuffled)}, {"dyadic-rising", SimpleFunction(rising)}};
}

std::vector<double> default_t_grid(const DecreasingStep& fstar, std::size_t points, double decades) {
  if (points < 2 || !(decades >= 0.0)) throw std::invalid_argument("bad grid parameters");
  if (fstar.empty()) return log_points(std::pow(10.0, -decades), std::pow(10.0, decades), points);
  const double scale = std::pow(10.0, decades);
  return log_points(fstar.breakpoints().front() / scale, fstar.support_end() * scale, points);
}

}  // namespace xlab
