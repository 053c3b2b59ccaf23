#include "xlab/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "xlab/admissible.hpp"
#include "xlab/norms.hpp"
#include "xlab/parallel.hpp"
#include "xlab/quadrature.hpp"

namespace xlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double ratio(double num, double den) {
  if (den == 0.0) return num == 0.0 ? 0.0 : kInf;
  return num / den;
}

// Worst ratio seen so far; NaN counts as a failure. Ties keep the first.
struct Worst {
  double value = 0.0;
  std::string id;
  double t = 0.0;
  double lhs = 0.0;  // optional payload: both sides at the worst point
  double rhs = 0.0;

  void offer(double r, const std::string& where, double at, double l = 0.0, double g = 0.0) {
    if (std::isnan(r)) r = kInf;
    if (id.empty() || r > value) {
      value = r;
      id = where;
      t = at;
      lhs = l;
      rhs = g;
    }
  }
  void merge(const Worst& other) {
    if (other.id.empty()) return;
    if (id.empty() || other.value > value) *this = other;
  }
};

VerificationReport finish(VerificationReport rep, const Worst& w) {
  rep.worst_ratio = w.value;
  rep.worst_location = {w.id, w.t};
  rep.passed = rep.worst_ratio <= rep.threshold;
  return rep;
}

void require_bounded_spec(const KernelSpec& spec) {
  spec.validate();
  if (!(spec.p0 > 1.0) || spec.p1_infinite() || spec.delta != 0) {
    throw std::invalid_argument("this suite needs 1 < p0 < p1 < inf and delta = 0");
  }
}

// sup over t in ts of t^e g(t), refined by golden-section search in log t
// next to the best grid point.
template <class G>
std::pair<double, double> weighted_sup(G g, double e, std::span<const double> ts) {
  if (ts.empty()) return {0.0, 0.0};
  std::vector<double> vals(ts.size());
  for (std::size_t k = 0; k < ts.size(); ++k) vals[k] = std::pow(ts[k], e) * g(ts[k]);
  const std::size_t k = static_cast<std::size_t>(std::max_element(vals.begin(), vals.end()) - vals.begin());
  double best = vals[k];
  double best_t = ts[k];
  double lo = std::log(ts[k > 0 ? k - 1 : k]);
  double hi = std::log(ts[k + 1 < ts.size() ? k + 1 : k]);
  if (hi > lo) {
    auto h = [&](double x) { const double t = std::exp(x); return std::pow(t, e) * g(t); };
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = h(x1), f2 = h(x2);
    for (int it = 0; it < 60; ++it) {
      if (f1 > f2) {
        hi = x2; x2 = x1; f2 = f1; x1 = hi - gr * (hi - lo); f1 = h(x1);
      } else {
        lo = x1; x1 = x2; f1 = f2; x2 = lo + gr * (hi - lo); f2 = h(x2);
      }
    }
    if (f1 > best) { best = f1; best_t = std::exp(x1); }
    if (f2 > best) { best = f2; best_t = std::exp(x2); }
  }
  return {best, best_t};
}

struct Fit {
  double c = 0.0;
  double t = 0.0;
  bool empty = true;
};

// sup_t factor * (T f)*(t) / B(f*)(t) over the grid, with (T f)* from the
// rearranged profile of the laid-out (non-monotone) f.
Fit fit_constant(const CalderonOperator& T, const CalderonOperator& B, double factor, const FamilyMember& m,
                 const GridSpec& grid, std::size_t per_decade) {
  Fit fit;
  const DecreasingStep fstar = rearrange(m.f);
  if (fstar.empty()) return fit;
  const StepFunction layout = lay_out(m.f);
  const std::vector<double> ts = grid.for_function(fstar);
  const double lo = std::min(ts.front(), fstar.breakpoints().front()) * 1e-4;
  const double hi = std::max(ts.back(), fstar.support_end()) * 1e2;
  const std::vector<double> pgrid = log_grid(lo, hi, per_decade);
  const DecreasingStep rstar = T.profile_and_rearrange(layout, pgrid);
  const double tail_level = T.apply(OperatorInput::from(layout), pgrid.back()).r;
  const auto rhs = B.apply(OperatorInput::from(fstar), ts);
  fit.empty = false;
  for (std::size_t k = 0; k < ts.size(); ++k) {
    const double lhs = rstar(ts[k]);
    // Levels below the value at the end of the profile are not resolved.
    if (!(lhs > 2.0 * tail_level)) continue;
    const double c = factor * ratio(lhs, rhs[k].r);
    if (c > fit.c) {
      fit.c = c;
      fit.t = ts[k];
    }
  }
  return fit;
}

double fitted_max(const std::vector<Fit>& fits, std::size_t start, std::size_t stride) {
  double c = 0.0;
  for (std::size_t i = start; i < fits.size(); i += stride) {
    if (!fits[i].empty) c = std::max(c, fits[i].c);
  }
  return c;
}

// The family is split into even and odd members and each half is fitted on
// the given grid and on one with twice the points. worst_ratio is the spread
// max / min of the nonzero fitted constants among these four.
VerificationReport stability_report(VerificationReport rep, std::span<const FamilyMember> family,
                                    const std::vector<Fit>& fits, const std::vector<Fit>& fine) {
  Worst where;
  for (std::size_t i = 0; i < fits.size(); ++i) {
    if (!fits[i].empty) where.offer(fits[i].c, family[i].id, fits[i].t);
  }
  const std::array<double, 4> cs{fitted_max(fits, 0, 2), fitted_max(fits, 1, 2), fitted_max(fine, 0, 2),
                                 fitted_max(fine, 1, 2)};
  double hi = 0.0;
  double lo = kInf;
  for (double c : cs) {
    if (!(c > 0.0)) continue;
    hi = std::max(hi, c);
    lo = std::min(lo, c);
  }
  rep.details = {{"fitted_constant", fitted_max(fits, 0, 1)},
                 {"fitted_constant_refined", fitted_max(fine, 0, 1)},
                 {"fitted_constant_even", cs[0]},
                 {"fitted_constant_odd", cs[1]}};
  rep.threshold = 2.0;
  Worst w = where;
  w.value = hi == 0.0 ? 0.0 : ratio(hi, lo);
  return finish(std::move(rep), w);
}

GridSpec refined(const GridSpec& grid) {
  GridSpec g = grid;
  if (g.values.empty()) g.points = 2 * g.points;
  return g;
}

}  // namespace

double VerificationReport::detail(const std::string& key) const {
  for (const auto& [k, v] : details) {
    if (k == key) return v;
  }
  throw std::out_of_range("no detail named " + key);
}

std::vector<double> GridSpec::for_function(const DecreasingStep& fstar) const {
  if (!values.empty()) {
    std::vector<double> v = values;
    std::sort(v.begin(), v.end());
    for (double t : v) {
      if (!(t > 0.0) || !std::isfinite(t)) throw std::invalid_argument("grid values must be finite and > 0");
    }
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  }
  return default_t_grid(fstar, points, decades);
}

// ------------------------------------------------------------------ char bound

VerificationReport verify_char_lower_bound(const KernelSpec& spec, double m, const GridSpec& grid) {
  require_bounded_spec(spec);
  if (!(spec.phi.gamma() > 0.0 || spec.phi.is_constant_one())) {
    throw std::invalid_argument("characteristic bound needs gamma > 0 or phi == 1");
  }
  if (!(m > 0.0) || !std::isfinite(m)) throw std::invalid_argument("m must be finite and > 0");
  const CalderonOperator op(spec);
  const DecreasingStep f = DecreasingStep::indicator(m);
  const std::vector<double> ts = grid.for_function(f);
  const auto lhs = op.apply(OperatorInput::from(f), ts);
  VerificationReport rep;
  rep.suite = "char-bound";
  rep.spec = spec.describe();
  rep.params = {{"m", m}};
  // Equality for t > m when phi == 1.
  rep.threshold = 1.0 + 1e-12;
  Worst w;
  const std::string id = "indicator";
  for (std::size_t k = 0; k < ts.size(); ++k) {
    const double t = ts[k];
    if (t == m) continue;
    const double x = m / t;
    const double rhs = t < m ? spec.p0 * std::pow(x, spec.a1())
                             : spec.p0 * spec.phi(1.0 - std::log(x)) * std::pow(x, spec.a0());
    w.offer(ratio(rhs, lhs[k].r), id, t);
  }
  rep.details = {{"min_margin", w.value > 0.0 ? 1.0 / w.value : kInf}};
  return finish(std::move(rep), w);
}

// ------------------------------------------------------------------------ g/h

VerificationReport verify_gh_formulas(std::span<const FamilyMember> family, const GridSpec& grid) {
  std::vector<Worst> slots(family.size());
  std::vector<double> checks(family.size(), 0.0);
  parallel_for(family.size(), [&](std::size_t i) {
    const FamilyMember& m = family[i];
    const DecreasingStep fstar = rearrange(m.f);
    for (double t : grid.for_function(fstar)) {
      const double level = fstar(t);
      std::vector<SimpleFunction::Atom> g, h;
      for (const auto& a : m.f.atoms()) {
        if (a.value > level) g.push_back({a.value - level, a.mass});
        h.push_back({std::min(a.value, level), a.mass});
      }
      const DecreasingStep gstar = rearrange(SimpleFunction(std::move(g)));
      const DecreasingStep hstar = rearrange(SimpleFunction(std::move(h)));
      const GhSplit split = gh_split(fstar, t);
      auto same = [](const DecreasingStep& a, const DecreasingStep& b) {
        return std::ranges::equal(a.breakpoints(), b.breakpoints()) && std::ranges::equal(a.values(), b.values());
      };
      const bool ok = same(gstar, split.gstar) && same(hstar, split.hstar);
      slots[i].offer(ok ? 0.0 : kInf, m.id, t);
      checks[i] += 1.0;
    }
  });
  VerificationReport rep;
  rep.suite = "gh";
  rep.threshold = 0.0;
  Worst w;
  double total = 0.0;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    w.merge(slots[i]);
    total += checks[i];
  }
  rep.params = {{"functions", static_cast<double>(family.size())}};
  rep.details = {{"checks", total}};
  return finish(std::move(rep), w);
}

// ------------------------------------------------------------------ P/Q of g**

VerificationReport verify_pg_qg_bounds(const KernelSpec& spec, std::span<const FamilyMember> family,
                                       const GridSpec& grid) {
  require_bounded_spec(spec);
  const CalderonOperator op(spec);
  const double c0 = spec.p0 / (spec.p0 - 1.0);
  const double c1 = spec.p1 / (spec.p1 - 1.0);
  struct Slot {
    Worst pg, qg, chain, fss;
  };
  std::vector<Slot> slots(family.size());
  parallel_for(family.size(), [&](std::size_t i) {
    const FamilyMember& m = family[i];
    const DecreasingStep fstar = rearrange(m.f);
    const PiecewiseHyperbolic fss = double_star(fstar);
    const std::vector<double> ts = grid.for_function(fstar);
    const auto pf = op.apply(OperatorInput::from(fstar), ts);
    for (std::size_t k = 0; k < ts.size(); ++k) {
      const double t = ts[k];
      const GhSplit split = gh_split(fstar, t);
      const OperatorValues g = op.apply(OperatorInput::from(double_star(split.gstar)), t);
      const double favg = fss(t);
      slots[i].pg.offer(ratio(g.p, c0 * pf[k].p), m.id, t);
      slots[i].qg.offer(ratio(g.q, c1 * favg), m.id, t);
      slots[i].chain.offer(ratio(c1 * favg, c0 * pf[k].p), m.id, t);
      slots[i].fss.offer(ratio(favg, pf[k].p), m.id, t);
    }
  });
  Worst pg, qg, chain, fs;
  for (const Slot& s : slots) {
    pg.merge(s.pg);
    qg.merge(s.qg);
    chain.merge(s.chain);
    fs.merge(s.fss);
  }
  VerificationReport rep;
  rep.suite = "pgqg";
  rep.spec = spec.describe();
  rep.params = {{"functions", static_cast<double>(family.size())}};
  rep.details = {{"pg_ratio", pg.value}, {"qg_ratio", qg.value}, {"chain_ratio", chain.value}, {"fss_ratio", fs.value}};
  // Q(g**) = p1/(p1-1) f** exactly once t is past the support.
  rep.threshold = 1.0 + 1e-12;
  Worst w;
  w.merge(pg);
  w.merge(qg);
  w.merge(chain);
  w.merge(fs);
  return finish(std::move(rep), w);
}

// -------------------------------------------------------------------- forward

VerificationReport verify_forward(const KernelSpec& spec, std::span<const FamilyMember> family, const GridSpec& grid,
                                  std::size_t profile_per_decade) {
  require_bounded_spec(spec);
  const CalderonOperator op(spec);
  const GridSpec fine_grid = refined(grid);
  std::vector<Fit> fits(family.size());
  std::vector<Fit> fine(family.size());
  parallel_for(family.size(), [&](std::size_t i) {
    fits[i] = fit_constant(op, op, spec.p0 - 1.0, family[i], grid, profile_per_decade);
    fine[i] = fit_constant(op, op, spec.p0 - 1.0, family[i], fine_grid, profile_per_decade);
  });
  VerificationReport rep;
  rep.suite = "forward";
  rep.spec = spec.describe();
  rep.params = {{"functions", static_cast<double>(family.size())},
                {"t_points", static_cast<double>(grid.points)},
                {"profile_per_decade", static_cast<double>(profile_per_decade)}};
  return stability_report(std::move(rep), family, fits, fine);
}

// ------------------------------------------------------------------- converse

VerificationReport verify_converse(const KernelSpec& spec, double p, std::span<const FamilyMember> family,
                                   const GridSpec& grid) {
  require_bounded_spec(spec);
  const CalderonOperator op(spec);
  const double ak = op.ak_norm(p);
  const double bound = ak_bound(spec, p);
  std::vector<Worst> slots(family.size());
  parallel_for(family.size(), [&](std::size_t i) {
    const FamilyMember& m = family[i];
    const DecreasingStep fstar = rearrange(m.f);
    if (fstar.empty()) {
      slots[i].offer(0.0, m.id, 0.0);
      return;
    }
    const BoundOperator r = op.bind(OperatorInput::from(fstar));
    const std::vector<double> ts = grid.for_function(fstar);
    auto [weak, at] = weighted_sup([&](double t) { return r(t).r; }, 1.0 / p, ts);
    if (p == spec.p1) {
      // t -> 0: t^{1/p1} Q f*(t) -> ||f||_{p1,1}.
      const double limit = lorentz_norm(fstar, {spec.p1, 1.0});
      if (limit > weak) {
        weak = limit;
        at = 0.0;
      }
    }
    slots[i].offer(ratio(weak, ak * lorentz_norm(fstar, {p, 1.0})), m.id, at);
  });
  Worst w;
  for (const Worst& s : slots) w.merge(s);
  const double function_ratio = w.value;
  w.offer(ak / bound, "A_k-bound", 0.0);
  VerificationReport rep;
  rep.suite = "converse";
  rep.spec = spec.describe();
  rep.params = {{"p", p}, {"functions", static_cast<double>(family.size())}};
  rep.details = {{"A_k", ak}, {"A_k_bound", bound}, {"bound_margin", bound / ak}, {"function_ratio", function_ratio}};
  return finish(std::move(rep), w);
}

// ------------------------------------------------------------------ corollary

VerificationReport verify_corollary(const KernelSpec& spec, double V, std::span<const FamilyMember> family,
                                    std::size_t sweep_points) {
  require_bounded_spec(spec);
  if (!(spec.phi.gamma() > 0.0)) throw std::invalid_argument("corollary needs gamma > 0");
  if (!(V > 0.0) || !std::isfinite(V)) throw std::invalid_argument("V must be finite and > 0");
  if (sweep_points < 2) throw std::invalid_argument("sweep needs at least two points");
  const CalderonOperator op(spec);
  const double a0 = spec.a0();
  const double c = op.c_phi();
  const double th_le = std::max(1.0, std::pow(V, a0));
  const double th_gt = (c + spec.p1) / spec.p0;

  // int_0^s phi(1 + log^+(1/r)) r^{1/p0 - 1} dr
  auto denom = [&](double s) {
    if (s <= 1.0) return op.kernel_cumulative(1.0, s);
    return c + spec.p0 * std::expm1(a0 * std::log(s));
  };

  const std::vector<double> ts = log_points(V * 1e-4, V, sweep_points);
  const std::vector<double> ss = log_points(V * 1e-6, V * 1e4, sweep_points);
  struct Row {
    Worst w;
    double le = 0.0;
    double gt = 0.0;
  };
  std::vector<Row> rows(ts.size());
  parallel_for(ts.size(), [&](std::size_t k) {
    const double t = ts[k];
    for (double s : ss) {
      const double r = std::pow(t, a0) * op.kernel_cumulative(t, s) / denom(s);
      if (s <= t) {
        rows[k].le = std::max(rows[k].le, r);
        rows[k].w.offer(r / th_le, "sweep-s=" + std::to_string(s), t);
      } else {
        rows[k].gt = std::max(rows[k].gt, r);
        rows[k].w.offer(r / th_gt, "sweep-s=" + std::to_string(s), t);
      }
    }
  });
  Worst w;
  double le = 0.0, gt = 0.0;
  for (const Row& row : rows) {
    w.merge(row.w);
    le = std::max(le, row.le);
    gt = std::max(gt, row.gt);
  }

  const double th_e2e = std::max(th_le, th_gt);
  std::vector<Worst> slots(family.size());
  std::vector<double> e2e(family.size(), 0.0);
  parallel_for(family.size(), [&](std::size_t i) {
    const FamilyMember& m = family[i];
    const DecreasingStep fstar = rearrange(m.f);
    if (fstar.empty()) return;
    const BoundOperator r = op.bind(OperatorInput::from(fstar));
    const double lo = std::min(fstar.breakpoints().front(), V) * 1e-4;
    const std::vector<double> grid = log_points(lo, V, 400);
    const auto [sup, at] = weighted_sup([&](double t) { return r(t).r; }, a0, grid);
    e2e[i] = sup / philog_norm(fstar, spec.p0, spec.phi);
    slots[i].offer(e2e[i] / th_e2e, m.id, at);
  });
  double e2e_max = 0.0;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    w.merge(slots[i]);
    e2e_max = std::max(e2e_max, e2e[i]);
  }

  VerificationReport rep;
  rep.suite = "corollary";
  rep.spec = spec.describe();
  rep.params = {{"V", V}, {"sweep_points", static_cast<double>(sweep_points)}};
  rep.details = {{"c_phi", c},
                 {"threshold_s_le_t", th_le},
                 {"threshold_s_gt_t", th_gt},
                 {"max_ratio_s_le_t", le},
                 {"max_ratio_s_gt_t", gt},
                 {"end_to_end_constant", e2e_max}};
  return finish(std::move(rep), w);
}

// --------------------------------------------------------------------- remark

VerificationReport verify_remark_p0_1(const AdmissibleFunction& phi, double p1, std::span<const FamilyMember> family,
                                      const GridSpec& grid, std::size_t profile_per_decade) {
  const KernelSpec t_spec{1.0, p1, phi, 0};
  const KernelSpec b_spec{1.0, p1, phi, 1};
  t_spec.validate();
  if (std::isinf(p1)) throw std::invalid_argument("remark suite needs finite p1");
  const CalderonOperator T(t_spec);
  const CalderonOperator B(b_spec);
  const GridSpec fine_grid = refined(grid);
  std::vector<Fit> fits(family.size());
  std::vector<Fit> fine(family.size());
  parallel_for(family.size(), [&](std::size_t i) {
    fits[i] = fit_constant(T, B, 1.0, family[i], grid, profile_per_decade);
    fine[i] = fit_constant(T, B, 1.0, family[i], fine_grid, profile_per_decade);
  });
  VerificationReport rep;
  rep.suite = "remark";
  rep.spec = b_spec.describe();
  rep.params = {{"p1", p1},
                {"functions", static_cast<double>(family.size())},
                {"t_points", static_cast<double>(grid.points)},
                {"profile_per_decade", static_cast<double>(profile_per_decade)}};
  return stability_report(std::move(rep), family, fits, fine);
}

// -------------------------------------------------------------------- zygmund

VerificationReport verify_zygmund_recovery(std::span<const FamilyMember> family, const GridSpec& grid) {
  const KernelSpec spec{1.0, kInf, AdmissibleFunction::constant_one(), 0};
  const CalderonOperator op(spec);
  std::vector<Fit> fits(family.size());
  parallel_for(family.size(), [&](std::size_t i) {
    const FamilyMember& m = family[i];
    const DecreasingStep fstar = rearrange(m.f);
    if (fstar.empty()) return;
    std::vector<double> ts;
    if (!grid.values.empty()) {
      for (double t : grid.for_function(fstar)) {
        if (t < 1.0) ts.push_back(t);
      }
    } else {
      const double lo = std::min(1.0, fstar.breakpoints().front()) * std::pow(10.0, -grid.decades);
      ts = log_points(lo, 1.0, grid.points + 1);
      ts.pop_back();
    }
    const auto pss = op.apply(OperatorInput::from(double_star(fstar)), ts);
    const auto qs = op.apply(OperatorInput::from(fstar), ts);
    double lhs = 0.0;
    double at = 0.0;
    for (std::size_t k = 0; k < ts.size(); ++k) {
      const double v = (pss[k].p + qs[k].q) / (1.0 - std::log(ts[k]));
      if (v > lhs) {
        lhs = v;
        at = ts[k];
      }
    }
    // int_1^inf f*(s) ds / s is Q_inf f*(1).
    const double rhs = fstar.sup() + op.apply(OperatorInput::from(fstar), 1.0).q;
    fits[i] = {ratio(lhs, rhs), at, false};
  });
  VerificationReport rep;
  rep.suite = "zygmund";
  rep.params = {{"functions", static_cast<double>(family.size())}, {"t_points", static_cast<double>(grid.points)}};
  rep.threshold = 4.0;
  Worst w;
  double cmin = kInf;
  for (std::size_t i = 0; i < fits.size(); ++i) {
    if (fits[i].empty) continue;
    w.offer(fits[i].c, family[i].id, fits[i].t);
    cmin = std::min(cmin, fits[i].c);
  }
  rep.details = {{"fitted_constant", w.value}, {"min_constant", cmin < kInf ? cmin : 0.0}};
  return finish(std::move(rep), w);
}

// -------------------------------------------------------------- lemma identity

VerificationReport verify_lemma_identity(const KernelSpec& spec, std::span<const FamilyMember> family,
                                         const GridSpec& grid) {
  spec.validate();
  const CalderonOperator op(spec);
  const double sigma = spec.a1();
  const Tolerance tol{std::numeric_limits<double>::min(), 1e-10};
  std::vector<Worst> slots(family.size());
  std::vector<double> max_err(family.size(), 0.0);
  parallel_for(family.size(), [&](std::size_t i) {
    const FamilyMember& m = family[i];
    const DecreasingStep fstar = rearrange(m.f);
    const std::vector<double> ts = grid.for_function(fstar);
    const auto rhs = op.apply(OperatorInput::from(double_star(fstar)), ts);
    if (fstar.empty()) {
      for (std::size_t k = 0; k < ts.size(); ++k) {
        slots[i].offer(std::fabs(rhs[k].r) / 1e-6, m.id, ts[k], 0.0, rhs[k].r);
      }
      return;
    }
    const BoundOperator r = op.bind(OperatorInput::from(fstar));
    auto g = [&](double s) { return r(s).r; };

    std::vector<double> pts(ts.begin(), ts.end());
    pts.insert(pts.end(), fstar.breakpoints().begin(), fstar.breakpoints().end());
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    std::vector<double> cum(pts.size());
    QuadratureResult q = integrate_from_zero(g, pts[0], sigma, tol);
    double acc = q.value;
    double err = q.error_estimate;
    cum[0] = acc;
    for (std::size_t j = 1; j < pts.size(); ++j) {
      q = integrate(g, pts[j - 1], pts[j], tol);
      acc += q.value;
      err += q.error_estimate;
      cum[j] = acc;
    }
    max_err[i] = err;
    for (std::size_t k = 0; k < ts.size(); ++k) {
      const std::size_t j = static_cast<std::size_t>(std::lower_bound(pts.begin(), pts.end(), ts[k]) - pts.begin());
      const double lhs = cum[j] / ts[k];
      slots[i].offer(std::fabs(lhs - rhs[k].r) / (1e-6 * (1.0 + std::fabs(rhs[k].r))), m.id, ts[k], lhs, rhs[k].r);
    }
  });
  Worst w;
  double err = 0.0;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    w.merge(slots[i]);
    err = std::max(err, max_err[i]);
  }
  VerificationReport rep;
  rep.suite = "lemma-identity";
  rep.spec = spec.describe();
  rep.params = {{"functions", static_cast<double>(family.size())}};
  rep.details = {{"max_quadrature_error", err}, {"lhs_at_worst", w.lhs}, {"rhs_at_worst", w.rhs}};
  return finish(std::move(rep), w);
}

// -------------------------------------------------------------- lemma infimum

VerificationReport verify_lemma_infimum(std::size_t count, std::uint64_t seed) {
  struct Case {
    AdmissibleFunction phi;
    double q0;
    double x;
  };
  std::mt19937_64 rng(seed);
  std::vector<Case> cases;
  cases.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double gamma = 0.1 + 2.9 * uniform01(rng());
    const std::size_t logs = rng() % 3;
    std::vector<double> exps(logs);
    for (double& e : exps) e = 2.0 * uniform01(rng());
    const double q0 = 1.0 + 9.0 * uniform01(rng());
    const double x = -50.0 + 100.0 * uniform01(rng());
    cases.push_back({AdmissibleFunction::example(gamma, exps), q0, x});
  }
  std::vector<double> ratios(count);
  parallel_for(count, [&](std::size_t i) {
    const Case& c = cases[i];
    ratios[i] = lemma_infimum_numeric(c.phi, c.q0, c.x) / lemma_infimum_bound(c.phi, c.q0, c.x);
  });
  Worst w;
  for (std::size_t i = 0; i < count; ++i) w.offer(ratios[i], "case-" + std::to_string(i), cases[i].x);
  VerificationReport rep;
  rep.suite = "lemma-infimum";
  rep.params = {{"cases", static_cast<double>(count)}};
  rep.threshold = 1.0 + 1e-8;
  rep.seed = seed;
  return finish(std::move(rep), w);
}

// ------------------------------------------------------------------- dilation

VerificationReport verify_dilation(const KernelSpec& spec, std::size_t count, std::uint64_t seed) {
  spec.validate();
  const auto family = staircase_family(count, seed);
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<double> lambdas(count), ts(count);
  for (std::size_t i = 0; i < count; ++i) {
    const StepFunction f = lay_out(family[i].f);
    lambdas[i] = std::pow(10.0, -2.0 + 4.0 * uniform01(rng()));
    const double lo = std::log(f.breakpoints().front() * 1e-2);
    const double hi = std::log(f.support_end() * 1e2);
    ts[i] = std::exp(lo + (hi - lo) * uniform01(rng()));
  }
  std::vector<double> diffs(count);
  parallel_for(count, [&](std::size_t i) {
    const DilationPair d = dilation_check(spec, lay_out(family[i].f), lambdas[i], ts[i]);
    diffs[i] = ratio(std::fabs(d.dilated_input - d.dilated_output),
                     std::max(std::fabs(d.dilated_input), std::fabs(d.dilated_output)));
  });
  Worst w;
  for (std::size_t i = 0; i < count; ++i) w.offer(diffs[i], family[i].id, ts[i]);
  VerificationReport rep;
  rep.suite = "dilation";
  rep.spec = spec.describe();
  rep.params = {{"cases", static_cast<double>(count)}};
  rep.threshold = 1e-6;
  rep.seed = seed;
  return finish(std::move(rep), w);
}

}  // namespace xlab
