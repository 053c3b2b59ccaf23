#include "xlab/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

#include "xlab/kernels.hpp"

namespace xlab {

namespace {

// Kronrod abscissae on [0, 1] in decreasing order, then the 15-point
// Kronrod and 7-point Gauss weights (QUADPACK qk15).
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

// Nodes laid out left to right: -x0, -x1, ..., 0, ..., x1, x0.
struct Rule {
  std::array<double, 15> node{};
  std::array<double, 15> kronrod{};
  std::array<double, 15> gauss{};
};

constexpr Rule make_rule() {
  Rule r;
  for (std::size_t j = 0; j < 7; ++j) {
    r.node[j] = -kXgk[j];
    r.node[14 - j] = kXgk[j];
    r.kronrod[j] = kWgk[j];
    r.kronrod[14 - j] = kWgk[j];
    // Gauss nodes are the odd Kronrod indices.
    const double g = (j % 2 == 1) ? kWg[j / 2] : 0.0;
    r.gauss[j] = g;
    r.gauss[14 - j] = g;
  }
  r.node[7] = 0.0;
  r.kronrod[7] = kWgk[7];
  r.gauss[7] = kWg[3];
  return r;
}

constexpr Rule kRule = make_rule();

struct Segment {
  double a;
  double b;
  double value;
  double error;
};

Segment gk15(const Integrand& f, double a, double b) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::array<double, 15> fv{};
  std::array<double, 15> fabs_v{};
  for (std::size_t j = 0; j < 15; ++j) {
    const double y = f(centre + half * kRule.node[j]);
    if (!std::isfinite(y)) {
      throw std::domain_error("integrand is not finite inside the integration range");
    }
    fv[j] = y;
    fabs_v[j] = std::fabs(y);
  }
  const double resk = kernels::dot(kRule.kronrod, fv);
  const double resg = kernels::dot(kRule.gauss, fv);
  double resabs = kernels::dot(kRule.kronrod, fabs_v);
  const double mean = 0.5 * resk;
  std::array<double, 15> dev{};
  for (std::size_t j = 0; j < 15; ++j) dev[j] = std::fabs(fv[j] - mean);
  double resasc = kernels::dot(kRule.kronrod, dev);

  const double ahalf = std::fabs(half);
  resabs *= ahalf;
  resasc *= ahalf;
  double err = std::fabs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr double tiny = std::numeric_limits<double>::min();
  if (resabs > tiny / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
  return {a, b, resk * half, err};
}

struct ByError {
  bool operator()(const Segment& x, const Segment& y) const {
    if (x.error != y.error) return x.error < y.error;
    return x.a > y.a;
  }
};

}  // namespace

double QuadratureResult::checked_value() const {
  if (!converged) throw QuadratureError("quadrature did not reach the requested tolerance", *this);
  return value;
}

QuadratureResult integrate(const Integrand& f, double a, double b, Tolerance tol,
                           std::size_t max_subdivisions) {
  const std::array<double, 2> pts = {a, b};
  return integrate(f, pts, tol, max_subdivisions);
}

QuadratureResult integrate(const Integrand& f, std::span<const double> points, Tolerance tol,
                           std::size_t max_subdivisions) {
  if (points.size() < 2) throw std::invalid_argument("integrate needs at least two points");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!std::isfinite(points[i])) throw std::invalid_argument("integration limits must be finite");
    if (i > 0 && points[i] < points[i - 1]) throw std::invalid_argument("integration points must be sorted");
  }
  if (!(tol.abs > 0.0) || !(tol.rel > 0.0)) throw std::invalid_argument("tolerances must be > 0");

  QuadratureResult out;
  std::priority_queue<Segment, std::vector<Segment>, ByError> heap;
  double total = 0.0;
  double total_err = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (!(points[i] > points[i - 1])) continue;
    const Segment s = gk15(f, points[i - 1], points[i]);
    out.evaluations += 15;
    total += s.value;
    total_err += s.error;
    heap.push(s);
  }
  if (heap.empty()) return out;

  std::vector<Segment> done;
  std::size_t count = heap.size();
  while (total_err > std::max(tol.abs, tol.rel * std::fabs(total)) && count < max_subdivisions) {
    const Segment worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      // Cannot be split further in floating point.
      heap.pop();
      done.push_back(worst);
      if (heap.empty()) break;
      continue;
    }
    heap.pop();
    const Segment left = gk15(f, worst.a, mid);
    const Segment right = gk15(f, mid, worst.b);
    out.evaluations += 30;
    total += (left.value + right.value) - worst.value;
    total_err += (left.error + right.error) - worst.error;
    heap.push(left);
    heap.push(right);
    ++count;
  }

  while (!heap.empty()) {
    done.push_back(heap.top());
    heap.pop();
  }
  std::sort(done.begin(), done.end(), [](const Segment& x, const Segment& y) { return x.a < y.a; });
  double value = 0.0;
  double err = 0.0;
  for (const Segment& s : done) {
    value += s.value;
    err += s.error;
  }
  out.value = value;
  out.error_estimate = err;
  out.converged = err <= std::max(tol.abs, tol.rel * std::fabs(value));
  return out;
}

double log_weight_tail_bound(double beta, double kappa, double u) {
  return 2.0 * std::pow(u, beta) * std::exp(kappa * (1.0 - u)) / kappa;
}

QuadratureResult integrate_shifted_tail(const Integrand& w, double beta, double kappa, double u0,
                                        Tolerance tol) {
  if (!(kappa > 0.0)) throw std::invalid_argument("shifted tail needs kappa > 0");
  if (!(u0 >= 1.0) || !std::isfinite(u0)) throw std::invalid_argument("shifted tail needs finite u0 >= 1");
  // Dropped part <= 2 (u0 + V)^beta e^{-kappa V} / kappa, value >= 1 / kappa.
  const double target = std::max(1e-17, 1e-3 * tol.rel);
  double v_end = 1.0 / kappa;
  while (kappa * (u0 + v_end) < 2.0 * beta ||
         2.0 * std::pow(u0 + v_end, beta) * std::exp(-kappa * v_end) > target) {
    v_end *= 1.25;
  }
  std::vector<double> pts = {0.0};
  for (double v = 1.0 / kappa; v < v_end; v *= 2.0) pts.push_back(v);
  pts.push_back(v_end);
  auto h = [&](double v) { return w(u0 + v) * std::exp(-kappa * v); };
  Tolerance inner = tol;
  inner.abs = std::min(tol.abs, tol.rel * 1e-3 / kappa);
  QuadratureResult r = integrate(h, pts, inner);
  r.error_estimate += 2.0 * std::pow(u0 + v_end, beta) * std::exp(-kappa * v_end) / kappa;
  return r;
}

QuadratureResult integrate_log_weight(const Integrand& w, double beta, double kappa, double u_lo,
                                      double u_hi, Tolerance tol) {
  if (!(u_lo >= 1.0) || !(u_hi >= u_lo)) throw std::invalid_argument("need 1 <= u_lo <= u_hi");
  if (std::isinf(u_hi)) {
    if (!(kappa > 0.0)) throw std::invalid_argument("infinite log-weight range needs kappa > 0");
    QuadratureResult r = integrate_shifted_tail(w, beta, kappa, u_lo, tol);
    const double scale = std::exp(kappa * (1.0 - u_lo));
    r.value *= scale;
    r.error_estimate *= scale;
    return r;
  }
  auto g = [&](double u) { return w(u) * std::exp(kappa * (1.0 - u)); };
  std::vector<double> pts = {u_lo};
  const double step = kappa != 0.0 ? std::max(1.0, 1.0 / std::fabs(kappa)) : 4.0;
  for (double u = u_lo + step; u < u_hi; u += step) pts.push_back(u);
  pts.push_back(u_hi);
  return integrate(g, pts, tol);
}

QuadratureResult integrate_log_singular(const Integrand& w, double t_upper, double p0, double beta,
                                        Tolerance tol) {
  if (!(t_upper > 0.0) || !std::isfinite(t_upper)) throw std::invalid_argument("t must be finite and > 0");
  if (!(p0 >= 1.0) || !std::isfinite(p0)) throw std::invalid_argument("p0 must be finite and >= 1");
  const double kappa = 1.0 / p0;
  QuadratureResult r = integrate_log_weight(w, beta, kappa, 1.0, std::numeric_limits<double>::infinity(), tol);
  const double scale = std::pow(t_upper, kappa);
  r.value *= scale;
  r.error_estimate *= scale;
  return r;
}

QuadratureResult integrate_from_zero(const Integrand& f, double b, double sigma, Tolerance tol) {
  if (!(b > 0.0) || !std::isfinite(b)) throw std::invalid_argument("upper limit must be finite and > 0");
  if (!(sigma < 1.0)) throw std::invalid_argument("singularity exponent must be < 1");
  const double decay = 1.0 - std::max(0.0, sigma);
  const double v_end = (39.2 + 3.0 * std::log1p(40.0 / decay)) / decay;
  std::vector<double> pts = {0.0};
  for (double v = 1.0; v < v_end; v *= 2.0) pts.push_back(v);
  pts.push_back(v_end);
  auto h = [&](double v) {
    const double s = b * std::exp(-v);
    return f(s) * s;
  };
  return integrate(h, pts, tol);
}

}  // namespace xlab
