#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "xlab/calderon.hpp"
#include "xlab/families.hpp"
#include "xlab/verify.hpp"

using namespace xlab;

namespace {

KernelSpec spec(double p0, double p1, AdmissibleFunction phi = AdmissibleFunction::constant_one()) {
  return KernelSpec{p0, p1, std::move(phi), 0};
}

std::vector<FamilyMember> single(SimpleFunction f, std::string id = "f") { return {FamilyMember{std::move(id), std::move(f)}}; }

void same_report(const VerificationReport& a, const VerificationReport& b) {
  CHECK(a.worst_ratio == b.worst_ratio);
  CHECK(a.worst_location.function_id == b.worst_location.function_id);
  CHECK(a.worst_location.t == b.worst_location.t);
  CHECK(a.passed == b.passed);
  REQUIRE(a.details.size() == b.details.size());
  for (std::size_t i = 0; i < a.details.size(); ++i) CHECK(a.details[i] == b.details[i]);
}

}  // namespace

TEST_CASE("characteristic lower bound") {
  const KernelSpec s = spec(2, 4, AdmissibleFunction::identity());
  const double lhs = r_op(s, DecreasingStep::indicator(1.0), 2.0);
  const double l2 = std::log(2.0);
  CHECK(lhs == doctest::Approx(std::pow(2.0, -0.5) * (2.0 * (1.0 + l2) + 4.0)).epsilon(1e-10));
  CHECK(lhs == doctest::Approx(5.2229).epsilon(1e-4));
  const double rhs = 2.0 * (1.0 + l2) * std::pow(2.0, -0.5);
  CHECK(rhs == doctest::Approx(2.3945).epsilon(1e-4));
  for (double m : {0.1, 1.0, 10.0}) {
    const VerificationReport r = verify_char_lower_bound(s, m);
    CHECK(r.passed);
    CHECK(r.detail("min_margin") >= 1.0);
  }
  CHECK_THROWS_AS(verify_char_lower_bound(spec(1, 4), 1.0), std::invalid_argument);
}

TEST_CASE("g and h formulas") {
  GridSpec g;
  g.values = {1.5};
  const VerificationReport r = verify_gh_formulas(single(SimpleFunction({{2.0, 1.0}, {1.0, 1.0}})), g);
  CHECK(r.passed);
  CHECK(r.worst_ratio == 0.0);
  CHECK(verify_gh_formulas(staircase_family(30, 2)).passed);
  CHECK(verify_gh_formulas(dyadic_family()).passed);
  CHECK(verify_gh_formulas(indicator_family()).passed);
}

TEST_CASE("P(g**) and Q(g**) bounds") {
  const KernelSpec s = spec(2, 4);
  GridSpec at1;
  at1.values = {1.0};
  CHECK(verify_pg_qg_bounds(s, single(SimpleFunction::indicator(1.0)), at1).passed);
  GridSpec at2;
  at2.values = {2.0};
  const VerificationReport stairs =
      verify_pg_qg_bounds(s, single(SimpleFunction({{4, 1}, {3, 1}, {2, 1}, {1, 1}})), at2);
  CHECK(stairs.passed);
  CHECK(stairs.detail("pg_ratio") < 1.0);
  CHECK(stairs.detail("qg_ratio") < 1.0);
  CHECK(stairs.detail("fss_ratio") <= 1.0);
  CHECK(verify_pg_qg_bounds(spec(1.5, 8, AdmissibleFunction::example(1.0, {1.0})), staircase_family(10, 4)).passed);
}

TEST_CASE("forward fit") {
  // Monotone inputs: (R f)* = R f, so the fitted constant is p0 - 1 up to
  // the profile resolution.
  const KernelSpec s = spec(2, 4, AdmissibleFunction::identity());
  std::vector<FamilyMember> mono;
  for (const auto& m : staircase_family(4, 8)) {
    const DecreasingStep r = rearrange(m.f);
    std::vector<SimpleFunction::Atom> atoms;
    for (std::size_t i = 0; i < r.size(); ++i) atoms.push_back({r.values()[i], r.breakpoints()[i] - r.lower(i)});
    mono.push_back({m.id, SimpleFunction(atoms)});
  }
  const VerificationReport r = verify_forward(s, mono);
  CHECK(r.passed);
  CHECK(r.detail("fitted_constant") == doctest::Approx(1.0).epsilon(0.01));

  const VerificationReport perm = verify_forward(s, staircase_family(10, 3));
  CHECK(perm.passed);
  CHECK(std::isfinite(perm.detail("fitted_constant")));
  CHECK(perm.detail("fitted_constant") <= 1.0 + 0.01);
}

TEST_CASE("converse bound") {
  const KernelSpec s = spec(2, 4);
  const VerificationReport r = verify_converse(s, 4.0, single(SimpleFunction::indicator(1.0)));
  CHECK(r.passed);
  CHECK(r.detail("A_k") == doctest::Approx(4.0).epsilon(1e-3));
  CHECK(r.detail("A_k_bound") == doctest::Approx(8.0));
  CHECK(r.detail("function_ratio") <= 1.0);
  // Homogeneity.
  const VerificationReport scaled = verify_converse(s, 4.0, single(SimpleFunction::indicator(1.0, 7.0)));
  CHECK(scaled.detail("function_ratio") == doctest::Approx(r.detail("function_ratio")).epsilon(1e-12));
  CHECK(verify_converse(s, 4.0, single(SimpleFunction())).passed);
}

TEST_CASE("corollary") {
  const KernelSpec s = spec(2, 4, AdmissibleFunction::identity());
  const VerificationReport r = verify_corollary(s, 1.0, single(SimpleFunction::indicator(1.0)), 60);
  CHECK(r.passed);
  CHECK(r.detail("c_phi") == doctest::Approx(6.0).epsilon(1e-10));
  CHECK(r.detail("threshold_s_gt_t") == doctest::Approx(5.0).epsilon(1e-10));
  CHECK(r.detail("end_to_end_constant") <= 5.0);
  CHECK(verify_corollary(s, 3.0, staircase_family(5, 1), 60).passed);
  CHECK_THROWS_AS(verify_corollary(spec(2, 4), 1.0, staircase_family(2, 1), 20), std::invalid_argument);
}

TEST_CASE("remark at p0 = 1") {
  const VerificationReport r = verify_remark_p0_1(AdmissibleFunction::identity(), 4.0, staircase_family(6, 5));
  CHECK(r.passed);
  CHECK(r.detail("fitted_constant") > 0.0);
  CHECK(r.detail("fitted_constant") <= 1.0);
  const VerificationReport zero = verify_remark_p0_1(AdmissibleFunction::constant_one(), 4.0, single(SimpleFunction()));
  CHECK(zero.passed);
  CHECK(zero.detail("fitted_constant") == 0.0);
}

TEST_CASE("Zygmund recovery") {
  const double e = std::exp(1.0);
  for (double m : {1.0, e}) {
    const VerificationReport r = verify_zygmund_recovery(single(SimpleFunction::indicator(m)));
    CHECK(r.passed);
    CHECK(std::isfinite(r.detail("fitted_constant")));
  }
  CHECK(verify_zygmund_recovery(staircase_family(10, 2)).passed);
  CHECK(verify_zygmund_recovery(single(SimpleFunction())).passed);
}

TEST_CASE("lemma identity") {
  GridSpec at1;
  at1.values = {1.0};
  const VerificationReport r = verify_lemma_identity(spec(2, 4), single(SimpleFunction::indicator(1.0)), at1);
  CHECK(r.passed);
  CHECK(r.detail("lhs_at_worst") == doctest::Approx(10.0 / 3.0).epsilon(1e-8));
  CHECK(r.detail("rhs_at_worst") == doctest::Approx(10.0 / 3.0).epsilon(1e-12));
  GridSpec g;
  g.points = 40;
  CHECK(verify_lemma_identity(spec(2, 8, AdmissibleFunction::example(1.0, {1.0})), staircase_family(3, 6), g).passed);
}

TEST_CASE("lemma infimum and dilation") {
  const VerificationReport li = verify_lemma_infimum(200, 4);
  CHECK(li.passed);
  CHECK(li.seed == 4u);
  const VerificationReport d = verify_dilation(spec(2, 4, AdmissibleFunction::identity()), 20, 9);
  CHECK(d.passed);
  CHECK(d.worst_ratio <= 1e-6);
}

TEST_CASE("reports do not depend on the thread count") {
  const KernelSpec s = spec(2, 4, AdmissibleFunction::identity());
  const auto fam = staircase_family(12, 77);
  ::setenv("XLAB_THREADS", "1", 1);
  const VerificationReport f1 = verify_forward(s, fam);
  const VerificationReport p1 = verify_pg_qg_bounds(s, fam);
  ::setenv("XLAB_THREADS", "4", 1);
  const VerificationReport f4 = verify_forward(s, fam);
  const VerificationReport p4 = verify_pg_qg_bounds(s, fam);
  ::unsetenv("XLAB_THREADS");
  same_report(f1, f4);
  same_report(p1, p4);
}
