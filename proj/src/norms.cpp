#include "xlab/norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "xlab/iterated_log.hpp"
#include "xlab/kernels.hpp"

namespace xlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// u = 1 + log(1/t) for the substitution t = e^{1-u}; u(0) = inf.
double u_of(double t) { return t > 0.0 ? 1.0 - std::log(t) : kInf; }

void require_p(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw std::invalid_argument("p must be finite and >= 1");
}

// int over pieces clipped to [1, inf) of v * x^{e-1} dx, via coordinates x^e.
double power_part_beyond_one(const DecreasingStep& f, double e) {
  std::vector<double> lo, hi, w;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double b = f.breakpoints()[i];
    if (b <= 1.0) continue;
    lo.push_back(std::pow(std::max(f.lower(i), 1.0), e));
    hi.push_back(std::pow(b, e));
    w.push_back(f.values()[i] / e);
  }
  return kernels::overlap_sum(lo, hi, w, 1.0, kInf);
}

// int_0^x (1 - log s)^n ds for x in [0, 1].
double log_power_integral(int n, double x) {
  if (x <= 0.0) return 0.0;
  const double l = 1.0 - std::log(x);
  double acc = x;
  double lk = 1.0;
  for (int k = 1; k <= n; ++k) {
    lk *= l;
    acc = x * lk + k * acc;
  }
  return acc;
}

// Sup over [lo, hi] of an objective whose derivative has the sign of
// slope(t), which changes sign at most once. Endpoints may be 0 or inf, in
// which case `limit` supplies the value there.
template <class F, class S, class L>
double piece_sup(double lo, double hi, F objective, S slope, L limit) {
  auto value_at = [&](double t) { return (t == 0.0 || std::isinf(t)) ? limit(t) : objective(t); };
  double best = std::max(value_at(lo), value_at(hi));
  if (!(best < kInf)) return best;
  double a = lo == 0.0 ? std::min(hi, 1.0) * 1e-300 : lo;
  double b = std::isinf(hi) ? std::max(lo, 1.0) * 1e300 : hi;
  if (!(a < b)) return best;
  const double sa = slope(a);
  const double sb = slope(b);
  if (!(sa > 0.0 && sb < 0.0)) return best;  // interior point can only be a minimum
  for (int it = 0; it < 400 && a < b; ++it) {
    const double m = std::sqrt(a) * std::sqrt(b);
    if (!(m > a && m < b)) break;
    if (slope(m) > 0.0) a = m; else b = m;
  }
  return std::max(best, objective(a));
}

}  // namespace

void LorentzParams::validate() const {
  require_p(p);
  if (!(q > 0.0) || std::isnan(q)) throw std::invalid_argument("q must be > 0 or inf");
}

double lorentz_norm(const DecreasingStep& fstar, LorentzParams params) {
  params.validate();
  if (fstar.empty()) return 0.0;
  if (std::isinf(params.q)) return weak_lorentz_norm(fstar, params.p);
  const double e = params.q / params.p;
  std::vector<double> lo(fstar.size()), hi(fstar.size()), w(fstar.size());
  for (std::size_t i = 0; i < fstar.size(); ++i) {
    lo[i] = std::pow(fstar.lower(i), e);
    hi[i] = std::pow(fstar.breakpoints()[i], e);
    w[i] = std::pow(fstar.values()[i], params.q) / e;
  }
  const double integral = kernels::overlap_sum(lo, hi, w, 0.0, kInf);
  return params.q == 1.0 ? integral : std::pow(integral, 1.0 / params.q);
}

double weak_lorentz_norm(const DecreasingStep& fstar, double p) {
  require_p(p);
  std::vector<double> scale(fstar.size());
  for (std::size_t i = 0; i < fstar.size(); ++i) scale[i] = std::pow(fstar.breakpoints()[i], 1.0 / p);
  return kernels::max_product(scale, fstar.values());
}

double llogl_norm(const DecreasingStep& fstar, double alpha, Tolerance tol) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("alpha must be finite and >= 0");
  const bool integer = alpha == std::floor(alpha) && alpha <= 64.0;
  auto w = [alpha](double u) { return std::pow(u, alpha); };
  double near_zero = 0.0;
  for (std::size_t i = 0; i < fstar.size(); ++i) {
    const double lo = fstar.lower(i);
    if (lo >= 1.0) break;
    const double hi = std::min(fstar.breakpoints()[i], 1.0);
    double piece;
    if (integer) {
      const int n = static_cast<int>(alpha);
      piece = log_power_integral(n, hi) - log_power_integral(n, lo);
    } else {
      piece = integrate_log_weight(w, alpha, 1.0, u_of(hi), u_of(lo), tol).value;
    }
    near_zero += fstar.values()[i] * piece;
  }
  return near_zero + power_part_beyond_one(fstar, 1.0);
}

double llogl_log3_norm(const DecreasingStep& fstar, Tolerance tol) {
  auto w = [](double u) { return u * logk(2, u); };
  double near_zero = 0.0;
  for (std::size_t i = 0; i < fstar.size(); ++i) {
    const double lo = fstar.lower(i);
    if (lo >= 1.0) break;
    const double hi = std::min(fstar.breakpoints()[i], 1.0);
    near_zero += fstar.values()[i] * integrate_log_weight(w, 2.0, 1.0, u_of(hi), u_of(lo), tol).value;
  }
  return near_zero + power_part_beyond_one(fstar, 1.0);
}

double mphi_norm(const PiecewiseHyperbolic& fss) {
  double best = 0.0;
  for (const auto& pc : fss.pieces()) {
    const double a = pc.a;
    const double b = pc.b;
    // t <= 1: t f**(t) = a + b t.
    if (pc.lower < 1.0) best = std::max(best, a + b * std::min(pc.upper, 1.0));
    if (pc.upper <= 1.0) continue;
    const double lo = std::max(pc.lower, 1.0);
    auto objective = [&](double t) { return (a + b * t) / (1.0 + std::log(t)); };
    auto slope = [&](double t) { return b * std::log(t) - a / t; };
    auto limit = [&](double) { return b > 0.0 ? kInf : 0.0; };
    best = std::max(best, piece_sup(lo, pc.upper, objective, slope, limit));
  }
  return best;
}

double lexp_norm(const PiecewiseHyperbolic& fss) {
  double best = 0.0;
  for (const auto& pc : fss.pieces()) {
    if (pc.lower >= 1.0) break;
    const double a = pc.a;
    const double b = pc.b;
    const double hi = std::min(pc.upper, 1.0);
    auto objective = [&](double t) { return (a / t + b) / (1.0 - std::log(t)); };
    auto slope = [&](double t) { return b + a * std::log(t) / t; };
    auto limit = [&](double) { return a > 0.0 ? kInf : 0.0; };
    best = std::max(best, piece_sup(pc.lower, hi, objective, slope, limit));
  }
  return best;
}

double philog_norm(const DecreasingStep& fstar, double p, const AdmissibleFunction& phi) {
  require_p(p);
  if (fstar.empty()) return 0.0;
  const LogWeightTable table([phi](double u) { return phi(u); }, phi.beta_cert(), 1.0 / p);
  double near_zero = 0.0;
  for (std::size_t i = 0; i < fstar.size(); ++i) {
    const double lo = fstar.lower(i);
    if (lo >= 1.0) break;
    const double hi = std::min(fstar.breakpoints()[i], 1.0);
    near_zero += fstar.values()[i] * table.integral(u_of(hi), u_of(lo));
  }
  return near_zero + power_part_beyond_one(fstar, 1.0 / p);
}

}  // namespace xlab
