#pragma once

// Verification suites. Each one sweeps an inequality or identity over
// functions and grid points and reports the worst ratio against its
// threshold; passed == (worst_ratio <= threshold).

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "xlab/calderon.hpp"
#include "xlab/families.hpp"

namespace xlab {

struct WorstLocation {
  std::string function_id;
  double t = 0.0;
};

struct VerificationReport {
  std::string suite;
  std::string spec;  // KernelSpec::describe(), empty when not applicable
  std::vector<std::pair<std::string, double>> params;
  double worst_ratio = 0.0;
  WorstLocation worst_location;
  double threshold = 1.0;
  bool passed = false;
  std::vector<std::pair<std::string, double>> details;
  std::optional<std::uint64_t> seed;

  double detail(const std::string& key) const;  // throws if absent
};

/// t-grid choice for suites that sweep t around each function's support.
struct GridSpec {
  std::size_t points = 400;
  double decades = 4.0;
  std::vector<double> values;  // explicit grid, used when nonempty
  std::vector<double> for_function(const DecreasingStep& fstar) const;
};

/// R(chi_(0,m))(t) >= p0 [(m/t)^{1/p1} 1_{t<m} + phi(1 - log(m/t)) (m/t)^{1/p0} 1_{t>m}];
/// worst_ratio = max RHS / LHS, t = m skipped; threshold 1 + 1e-12 (phi == 1 is an equality case).
VerificationReport verify_char_lower_bound(const KernelSpec& spec, double m, const GridSpec& grid = {});

/// g* and h* built at the atom level and rearranged, compared bit for bit
/// with gh_split(f*, t). worst_ratio is 0 on agreement, inf otherwise.
VerificationReport verify_gh_formulas(std::span<const FamilyMember> family, const GridSpec& grid = {});

/// P(g**)(t) <= p0/(p0-1) P(f*)(t), Q(g**)(t) <= p1/(p1-1) f**(t),
/// p1/(p1-1) f**(t) <= p0/(p0-1) P(f*)(t) and f**(t) <= P(f*)(t), with g split at t.
/// The second holds with equality past the support, so the threshold is 1 + 1e-12.
VerificationReport verify_pg_qg_bounds(const KernelSpec& spec, std::span<const FamilyMember> family,
                                       const GridSpec& grid = {});

/// Fits C_f = sup_t (p0 - 1) (R f)*(t) / R(f*)(t) per function, (R f)* from
/// profile_and_rearrange, and reports fitted_constant = max C_f. The fit is
/// repeated on the even and odd members and on a grid with twice the points;
/// worst_ratio is the max / min of those four constants, threshold 2.
VerificationReport verify_forward(const KernelSpec& spec, std::span<const FamilyMember> family,
                                  const GridSpec& grid = {}, std::size_t profile_per_decade = 512);

/// sup_t t^{1/p} R(f*)(t) <= A_k ||f||_{p,1} for each member, and
/// A_k <= 2 p1 beta0^beta0 phi(1/(1/p0 - 1/p)).
VerificationReport verify_converse(const KernelSpec& spec, double p, std::span<const FamilyMember> family,
                                   const GridSpec& grid = {});

/// Ratio bounds of the corollary on an (s, t) sweep, and the end-to-end
/// sup_{t<V} t^{1/p0} R(f*)(t) / ||f||_{L^{p0,1} phi(log L)} on the family.
VerificationReport verify_corollary(const KernelSpec& spec, double V, std::span<const FamilyMember> family,
                                    std::size_t sweep_points = 200);

/// (T f)* <= C [(1/t) int_0^t (1 - log(r/t)) phi(1 - log(r/t)) f*(r) dr + Q_{p1}(f*)(t)]
/// with T = R_{1, p1, phi}; fitted C reported, stability as for verify_forward.
VerificationReport verify_remark_p0_1(const AdmissibleFunction& phi, double p1, std::span<const FamilyMember> family,
                                      const GridSpec& grid = {}, std::size_t profile_per_decade = 512);

/// sup_{t<1} S f(t) / (1 + log(1/t)) <= C (||f||_inf + int_1^inf f*(s) ds/s)
/// with S f = P_{1,inf,1}(f**) + Q_inf(f*); fitted C must be <= 4.
VerificationReport verify_zygmund_recovery(std::span<const FamilyMember> family, const GridSpec& grid = {});

/// R(f*)**(t) = R(f**)(t); worst_ratio = max |lhs - rhs| / (1e-6 (1 + |rhs|)).
VerificationReport verify_lemma_identity(const KernelSpec& spec, std::span<const FamilyMember> family,
                                         const GridSpec& grid = {});

/// lemma_infimum_numeric <= lemma_infimum_bound (1 + 1e-8) on random
/// (phi, q0, x).
VerificationReport verify_lemma_infimum(std::size_t count, std::uint64_t seed);

/// R(f(lambda .))(t) = R f(lambda t) on random (f, lambda, t); relative
/// discrepancy must stay below 1e-6.
VerificationReport verify_dilation(const KernelSpec& spec, std::size_t count, std::uint64_t seed);

}  // namespace xlab
