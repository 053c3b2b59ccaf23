#include "xlab/calderon.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "xlab/kernels.hpp"
#include "xlab/parallel.hpp"

namespace xlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

// Spec-dependent coordinates of an input, so that the closed-form pieces of
// P and Q become weighted interval overlaps.
struct OperatorCoords {
  // Q, constant part: p1 < inf uses s^{a1} (weight v p1), p1 = inf uses log s.
  std::vector<double> q_lo, q_hi, q_w;
  // Q, a/s part: X(s) = -s^{a1-1} / (1 - a1).
  std::vector<double> qa_lo, qa_hi, qa_w;
  // P when phi == 1 and delta == 0: s^{a0} (weight v p0), and for a/s
  // either log s (a0 = 1) or s^{a0-1} / (a0 - 1).
  std::vector<double> p_lo, p_hi, p_w;
  std::vector<double> pa_lo, pa_hi, pa_w;
};

namespace {

double q_coord(const KernelSpec& spec, double s) {
  if (spec.p1_infinite()) return s > 0.0 ? std::log(s) : -kInf;
  return std::pow(s, spec.a1());
}

double qa_coord(const KernelSpec& spec, double s) {
  const double a1 = spec.a1();
  if (s == 0.0) return -kInf;
  return -std::pow(s, a1 - 1.0) / (1.0 - a1);
}

double pa_coord(const KernelSpec& spec, double s) {
  const double a0 = spec.a0();
  if (s == 0.0) return -kInf;
  if (a0 == 1.0) return std::log(s);
  return std::pow(s, a0 - 1.0) / (a0 - 1.0);
}

OperatorCoords make_coords(const KernelSpec& spec, const OperatorInput& f, bool closed_p) {
  OperatorCoords c;
  const std::size_t n = f.v.size();
  const std::size_t m = f.a.size();
  const double q_scale = spec.p1_infinite() ? 1.0 : spec.p1;
  c.q_lo.resize(n);
  c.q_hi.resize(n);
  c.q_w.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    c.q_lo[i] = q_coord(spec, f.lo[i]);
    c.q_hi[i] = q_coord(spec, f.hi[i]);
    c.q_w[i] = f.v[i] * q_scale;
  }
  c.qa_lo.resize(m);
  c.qa_hi.resize(m);
  c.qa_w = f.a;
  for (std::size_t i = 0; i < m; ++i) {
    c.qa_lo[i] = qa_coord(spec, f.alo[i]);
    c.qa_hi[i] = std::isinf(f.ahi[i]) ? 0.0 : qa_coord(spec, f.ahi[i]);
  }
  if (closed_p) {
    const double a0 = spec.a0();
    c.p_lo.resize(n);
    c.p_hi.resize(n);
    c.p_w.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      c.p_lo[i] = std::pow(f.lo[i], a0);
      c.p_hi[i] = std::pow(f.hi[i], a0);
      c.p_w[i] = f.v[i] * spec.p0;
    }
    c.pa_lo.resize(m);
    c.pa_hi.resize(m);
    c.pa_w = f.a;
    for (std::size_t i = 0; i < m; ++i) {
      c.pa_lo[i] = pa_coord(spec, f.alo[i]);
      c.pa_hi[i] = std::isinf(f.ahi[i]) ? (a0 == 1.0 ? kInf : 0.0) : pa_coord(spec, f.ahi[i]);
    }
  }
  return c;
}

// u = 1 + log(t/x), u(0) = inf.
double u_at(double t, double x) { return x > 0.0 ? 1.0 + std::log(t / x) : kInf; }

double q_value(const KernelSpec& spec, const OperatorCoords& c, double t) {
  double q;
  if (spec.p1_infinite()) {
    q = kernels::overlap_sum(c.q_lo, c.q_hi, c.q_w, std::log(t), kInf);
    q += kernels::overlap_sum(c.qa_lo, c.qa_hi, c.qa_w, qa_coord(spec, t), kInf);
    return q;
  }
  const double ta = std::pow(t, spec.a1());
  q = kernels::overlap_sum(c.q_lo, c.q_hi, c.q_w, ta, kInf);
  q += kernels::overlap_sum(c.qa_lo, c.qa_hi, c.qa_w, qa_coord(spec, t), kInf);
  return q / ta;
}

void push_kink(std::vector<double>& k, double x) {
  if (x > 0.0 && std::isfinite(x)) k.push_back(x);
}

void finish_kinks(std::vector<double>& k) {
  std::sort(k.begin(), k.end());
  k.erase(std::unique(k.begin(), k.end()), k.end());
}

}  // namespace

// ------------------------------------------------------------------ KernelSpec

void KernelSpec::validate() const {
  if (!(p0 >= 1.0) || !std::isfinite(p0)) throw std::invalid_argument("p0 must be finite and >= 1");
  if (!(p1 > p0)) throw std::invalid_argument("p1 must be > p0 (or inf)");
  if (delta != 0 && delta != 1) throw std::invalid_argument("delta must be 0 or 1");
  if (delta == 1 && p0 != 1.0) throw std::invalid_argument("delta = 1 requires p0 = 1");
}

double KernelSpec::a1() const { return std::isinf(p1) ? 0.0 : 1.0 / p1; }
bool KernelSpec::p1_infinite() const { return std::isinf(p1); }

double KernelSpec::weight(double u) const {
  const double v = phi(u);
  return delta == 1 ? u * v : v;
}

std::string KernelSpec::describe() const {
  std::ostringstream os;
  os.precision(17);
  os << "p0=" << p0 << " p1=";
  if (p1_infinite()) os << "inf"; else os << p1;
  os << " phi=" << phi.describe() << " delta=" << delta;
  return os.str();
}

// --------------------------------------------------------------- OperatorInput

OperatorInput OperatorInput::from(const StepFunction& f) {
  OperatorInput in;
  for (std::size_t i = 0; i < f.size(); ++i) {
    push_kink(in.kinks, f.breakpoints()[i]);
    if (f.values()[i] <= 0.0) continue;
    in.lo.push_back(f.lower(i));
    in.hi.push_back(f.breakpoints()[i]);
    in.v.push_back(f.values()[i]);
  }
  in.support_end = f.support_end();
  finish_kinks(in.kinks);
  return in;
}

OperatorInput OperatorInput::from(const DecreasingStep& f) { return from(f.as_step()); }

OperatorInput OperatorInput::from(const PiecewiseHyperbolic& f) {
  OperatorInput in;
  for (const auto& pc : f.pieces()) {
    push_kink(in.kinks, pc.lower);
    push_kink(in.kinks, pc.upper);
    if (pc.b < 0.0 || pc.a < 0.0) throw std::invalid_argument("hyperbolic input must have a, b >= 0");
    if (pc.b > 0.0) {
      if (std::isinf(pc.upper)) throw std::invalid_argument("constant part must have finite support");
      in.lo.push_back(pc.lower);
      in.hi.push_back(pc.upper);
      in.v.push_back(pc.b);
      in.support_end = std::max(in.support_end, pc.upper);
    }
    if (pc.a > 0.0) {
      if (pc.lower == 0.0) throw std::invalid_argument("a / s part is not integrable at 0");
      in.alo.push_back(pc.lower);
      in.ahi.push_back(pc.upper);
      in.a.push_back(pc.a);
    }
  }
  finish_kinks(in.kinks);
  return in;
}

// ----------------------------------------------------------- CalderonOperator

CalderonOperator::CalderonOperator(KernelSpec spec) : spec_(std::move(spec)) {
  spec_.validate();
  closed_form_p_ = spec_.phi.is_constant_one() && spec_.delta == 0;
  if (!closed_form_p_) {
    auto w = [s = spec_](double u) { return s.weight(u); };
    step_table_ = std::make_shared<LogWeightTable>(w, spec_.weight_beta(), spec_.a0());
    hyper_table_ = std::make_shared<LogWeightTable>(w, spec_.weight_beta(), spec_.a0() - 1.0);
  }
}

double CalderonOperator::p(const OperatorInput& f, double t) const { return apply(f, t).p; }
double CalderonOperator::q(const OperatorInput& f, double t) const { return apply(f, t).q; }

BoundOperator::BoundOperator(const CalderonOperator* op, OperatorInput input)
    : op_(op),
      input_(std::move(input)),
      coords_(std::make_shared<OperatorCoords>(make_coords(op->spec_, input_, op->closed_form_p_))) {}

OperatorValues BoundOperator::operator()(double t) const {
  if (!(t > 0.0) || !std::isfinite(t)) throw std::invalid_argument("t must be finite and > 0");
  return op_->evaluate(input_, *coords_, t);
}

BoundOperator CalderonOperator::bind(OperatorInput f) const { return BoundOperator(this, std::move(f)); }

OperatorValues CalderonOperator::apply(const OperatorInput& f, double t) const { return bind(f)(t); }

std::vector<OperatorValues> CalderonOperator::apply(const OperatorInput& f, std::span<const double> ts) const {
  const BoundOperator bound = bind(f);
  std::vector<OperatorValues> out(ts.size());
  auto eval = [&](std::size_t k) { out[k] = bound(ts[k]); };
  if (ts.size() < 64) {
    for (std::size_t k = 0; k < ts.size(); ++k) eval(k);
  } else {
    parallel_for(ts.size(), eval);
  }
  return out;
}

OperatorValues CalderonOperator::evaluate(const OperatorInput& f, const OperatorCoords& c, double t) const {
  double p = 0.0;
  if (closed_form_p_) {
    const double ta = std::pow(t, spec_.a0());
    p = kernels::overlap_sum(c.p_lo, c.p_hi, c.p_w, 0.0, ta);
    p += kernels::overlap_sum(c.pa_lo, c.pa_hi, c.pa_w, -kInf, pa_coord(spec_, t));
    p /= ta;
  } else {
    for (std::size_t i = 0; i < f.v.size() && f.lo[i] < t; ++i) {
      p += f.v[i] * step_table_->integral(u_at(t, std::min(f.hi[i], t)), u_at(t, f.lo[i]));
    }
    double pa = 0.0;
    for (std::size_t i = 0; i < f.a.size() && f.alo[i] < t; ++i) {
      pa += f.a[i] * hyper_table_->integral(u_at(t, std::min(f.ahi[i], t)), u_at(t, f.alo[i]));
    }
    p += pa / t;
  }
  const double q = q_value(spec_, c, t);
  return {p, q, p + q};
}

double CalderonOperator::kernel(double t, double r) const {
  if (!(t > 0.0) || !(r > 0.0)) throw std::invalid_argument("kernel needs t, r > 0");
  const double x = r / t;
  if (r < t) return spec_.weight(1.0 - std::log(x)) * std::pow(x, spec_.a0()) / r;
  return std::pow(x, spec_.a1()) / r;
}

double CalderonOperator::p_tail(double u) const {
  const double decay = std::exp(spec_.a0() * (1.0 - u));
  if (closed_form_p_) return spec_.p0 * decay;
  return decay * step_table_->tail_scaled(u);
}

double CalderonOperator::c_phi() const {
  if (closed_form_p_) return spec_.p0;
  return step_table_->total();
}

double CalderonOperator::kernel_cumulative(double t, double s) const {
  if (!(t > 0.0) || !(s >= 0.0)) throw std::invalid_argument("kernel_cumulative needs t > 0, s >= 0");
  if (s == 0.0) return 0.0;
  if (s <= t) return p_tail(1.0 + std::log(t / s));
  const double l = std::log(s / t);
  if (spec_.p1_infinite()) return c_phi() + l;
  return c_phi() + spec_.p1 * std::expm1(spec_.a1() * l);
}

double CalderonOperator::ak_norm(double p) const {
  if (spec_.p1_infinite()) throw std::invalid_argument("A_k needs finite p1");
  if (!(p > spec_.p0) || !(p <= spec_.p1)) throw std::invalid_argument("A_k needs p0 < p <= p1");
  const double alpha = spec_.a0() - 1.0 / p;
  const double c = c_phi();

  // x = e^v <= 1: J = e^{alpha v} T(1 - v), T(u) = e^{a0(u-1)} int_u^inf.
  auto scaled = [&](double u) { return closed_form_p_ ? spec_.p0 : step_table_->tail_scaled(u); };
  auto j_left = [&](double v) { return std::exp(alpha * v) * scaled(1.0 - v); };
  const double beta = spec_.weight_beta();
  double span = 8.0;
  while (std::exp(-alpha * span) * 2.0 * std::pow(1.0 + span, beta) / spec_.a0() > 1e-10 * c) span *= 1.5;

  constexpr std::size_t kScan = 2048;
  std::vector<double> vals(kScan);
  parallel_for(kScan, [&](std::size_t i) {
    vals[i] = j_left(-span * static_cast<double>(i) / static_cast<double>(kScan - 1));
  });
  const std::size_t imax = static_cast<std::size_t>(std::max_element(vals.begin(), vals.end()) - vals.begin());
  double best = vals[imax];
  const double step = span / static_cast<double>(kScan - 1);
  double lo = -span * static_cast<double>(imax) / static_cast<double>(kScan - 1) - step;
  double hi = lo + 2.0 * step;
  lo = std::max(lo, -span);
  hi = std::min(hi, 0.0);
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - g * (hi - lo);
  double x2 = lo + g * (hi - lo);
  double f1 = j_left(x1);
  double f2 = j_left(x2);
  for (int it = 0; it < 100 && hi - lo > 1e-12 * (1.0 + std::fabs(lo)); ++it) {
    if (f1 > f2) {
      hi = x2; x2 = x1; f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = j_left(x1);
    } else {
      lo = x1; x1 = x2; f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = j_left(x2);
    }
  }
  best = std::max({best, f1, f2});

  // x > 1: J = p1 x^{a1 - 1/p} + (c - p1) x^{-1/p}.
  const double A = spec_.p1;
  const double B = c - A;
  best = std::max(best, c);
  if (p == spec_.p1) {
    if (B < 0.0) best = std::max(best, A);
  } else if (B < 0.0) {
    const double e1 = spec_.a1() - 1.0 / p;
    const double e2 = -1.0 / p;
    const double xa = (B / p) / (A * e1);  // x*^{a1}
    const double xs = std::pow(xa, 1.0 / spec_.a1());
    if (xs > 1.0 && std::isfinite(xs)) best = std::max(best, A * std::pow(xs, e1) + B * std::pow(xs, e2));
  }
  return best;
}

OperatorProfile CalderonOperator::profile(const StepFunction& f, std::span<const double> grid) const {
  OperatorProfile prof;
  prof.t.assign(grid.begin(), grid.end());
  const auto vals = apply(OperatorInput::from(f), grid);
  prof.values.resize(vals.size());
  for (std::size_t i = 0; i < vals.size(); ++i) prof.values[i] = vals[i].r;
  return prof;
}

DecreasingStep CalderonOperator::profile_and_rearrange(const StepFunction& f, std::span<const double> grid) const {
  if (grid.size() < 2) throw std::invalid_argument("profile grid needs at least two points");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw std::invalid_argument("profile grid must be strictly increasing");
  }
  const double decades = std::log10(grid.back() / grid.front());
  if (static_cast<double>(grid.size() - 1) < 512.0 * decades * (1.0 - 1e-9)) {
    throw std::invalid_argument("profile grid needs at least 512 points per decade");
  }
  const OperatorProfile prof = profile(f, grid);
  std::vector<double> breaks(grid.begin(), grid.end());
  std::vector<double> values(grid.size());
  values[0] = prof.values[0];
  for (std::size_t k = 1; k < grid.size(); ++k) values[k] = prof.values[k - 1];
  return rearrange_step(StepFunction(std::move(breaks), std::move(values)));
}

// ---------------------------------------------------------------------- grids

std::vector<double> log_points(double lo, double hi, std::size_t n) {
  if (!(lo > 0.0) || !(hi >= lo) || !std::isfinite(hi) || n < 1) throw std::invalid_argument("bad log grid");
  if (n == 1) return {lo};
  std::vector<double> g(n);
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (std::size_t i = 0; i < n; ++i) g[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
  g.front() = lo;
  g.back() = hi;
  return g;
}

std::vector<double> log_grid(double lo, double hi, std::size_t per_decade) {
  if (!(lo > 0.0) || !(hi > lo) || per_decade < 1) throw std::invalid_argument("bad log grid");
  const double decades = std::log10(hi / lo);
  const auto n = static_cast<std::size_t>(std::ceil(decades * static_cast<double>(per_decade))) + 1;
  return log_points(lo, hi, std::max<std::size_t>(n, 2));
}

// ------------------------------------------------------------------- wrappers

double p_op(const KernelSpec& spec, const DecreasingStep& f, double t) {
  return CalderonOperator(spec).p(OperatorInput::from(f), t);
}
double q_op(const KernelSpec& spec, const DecreasingStep& f, double t) {
  return CalderonOperator(spec).q(OperatorInput::from(f), t);
}
double r_op(const KernelSpec& spec, const DecreasingStep& f, double t) {
  return CalderonOperator(spec).r(OperatorInput::from(f), t);
}
double kernel_eval(const KernelSpec& spec, double t, double r) { return CalderonOperator(spec).kernel(t, r); }
double kernel_cumulative(const KernelSpec& spec, double t, double s) {
  return CalderonOperator(spec).kernel_cumulative(t, s);
}
double ak_norm(const KernelSpec& spec, double p) { return CalderonOperator(spec).ak_norm(p); }

double c_phi(const KernelSpec& spec, Tolerance tol) {
  spec.validate();
  auto w = [&spec](double u) { return spec.weight(u); };
  return integrate_log_singular(w, 1.0, spec.p0, spec.weight_beta(), tol).checked_value();
}

DilationPair dilation_check(const KernelSpec& spec, const StepFunction& f, double lambda, double t) {
  if (!(lambda > 0.0) || !(t > 0.0)) throw std::invalid_argument("dilation needs lambda, t > 0");
  const CalderonOperator op(spec);
  return {op.r(OperatorInput::from(f.dilated(lambda)), t), op.r(OperatorInput::from(f), lambda * t)};
}

double ak_bound(const KernelSpec& spec, double p) {
  const double b0 = spec.phi.beta0();
  return 2.0 * spec.p1 * std::pow(b0, b0) * spec.phi(1.0 / (spec.a0() - 1.0 / p));
}

}  // namespace xlab
