#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "xlab/quadrature.hpp"

namespace xlab {

namespace {

constexpr std::size_t N = 24;

struct ChebyshevBasis {
  std::array<double, N> node{};
  std::array<std::array<double, N>, N> cosines{};  // cos(pi k (j + 1/2) / N)
};

const ChebyshevBasis& basis() {
  static const ChebyshevBasis b = [] {
    ChebyshevBasis out;
    for (std::size_t j = 0; j < N; ++j) {
      const double angle = std::numbers::pi * (static_cast<double>(j) + 0.5) / static_cast<double>(N);
      out.node[j] = std::cos(angle);
      for (std::size_t k = 0; k < N; ++k) out.cosines[k][j] = std::cos(static_cast<double>(k) * angle);
    }
    return out;
  }();
  return b;
}

double clenshaw(const std::vector<double>& c, double x) {
  double b1 = 0.0;
  double b2 = 0.0;
  for (std::size_t k = c.size() - 1; k >= 1; --k) {
    const double b0 = 2.0 * x * b1 - b2 + c[k];
    b2 = b1;
    b1 = b0;
  }
  return c[0] + x * b1 - b2;
}

}  // namespace

LogWeightTable::LogWeightTable(Integrand w, double beta, double kappa, double u_max)
    : w_(std::move(w)), beta_(beta), kappa_(kappa) {
  if (!w_) throw std::invalid_argument("log-weight table needs a weight");
  if (!(beta >= 0.0) || !std::isfinite(kappa)) throw std::invalid_argument("bad log-weight parameters");
  if (kappa_ > 0.0) {
    double u = std::max(2.0, 2.0 * beta_ / kappa_);
    while (2.0 * std::pow(u, beta_) * std::exp(kappa_ * (1.0 - u)) > 1e-17) u += 0.5 / kappa_;
    upper_ = std::ceil(u);
  } else {
    upper_ = std::max(2.0, std::ceil(u_max));
  }
  build();
}

void LogWeightTable::build() {
  for (double a = 1.0; a < upper_; a += 1.0) fit_panel(a, std::min(a + 1.0, upper_), 0);

  const std::size_t n = panels_.size();
  starts_.resize(n);
  prefix_.assign(n + 1, 0.0);
  suffix_.assign(n + 1, 0.0);
  for (std::size_t p = 0; p < n; ++p) {
    starts_[p] = panels_[p].start;
    prefix_[p + 1] = prefix_[p] + panels_[p].total;
  }
  for (std::size_t p = n; p-- > 0;) suffix_[p] = suffix_[p + 1] + panels_[p].total;
}

void LogWeightTable::fit_panel(double a, double b, int depth) {
  const ChebyshevBasis& cb = basis();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  std::array<double, N> samples{};
  double smax = 0.0;
  for (std::size_t j = 0; j < N; ++j) {
    samples[j] = g(mid + half * cb.node[j]);
    if (!std::isfinite(samples[j])) throw std::domain_error("log-weight integrand is not finite");
    smax = std::max(smax, std::fabs(samples[j]));
  }
  std::array<double, N> c{};
  double scale = 0.0;
  for (std::size_t k = 0; k < N; ++k) {
    double s = 0.0;
    for (std::size_t j = 0; j < N; ++j) s += samples[j] * cb.cosines[k][j];
    c[k] = 2.0 * s / static_cast<double>(N);
    scale = std::max(scale, std::fabs(c[k]));
  }
  c[0] *= 0.5;

  const double trailing = std::fabs(c[N - 1]) + std::fabs(c[N - 2]) + std::fabs(c[N - 3]);
  // Below the sampling noise floor bisection no longer helps.
  const double floor = 16.0 * std::numeric_limits<double>::epsilon() * smax;
  if (trailing > std::max(1e-15 * scale, floor) && depth < 40) {
    fit_panel(a, mid, depth + 1);
    fit_panel(mid, b, depth + 1);
    return;
  }

  // Term-by-term antiderivative on [-1, 1]:
  // int T0 = T1, int T1 = T2 / 4, int Tk = T{k+1}/(2(k+1)) - T{k-1}/(2(k-1)).
  std::vector<double> C(N + 1, 0.0);
  C[1] += c[0];
  C[2] += c[1] / 4.0;
  for (std::size_t k = 2; k < N; ++k) {
    C[k + 1] += c[k] / (2.0 * static_cast<double>(k + 1));
    C[k - 1] -= c[k] / (2.0 * static_cast<double>(k - 1));
  }
  double at_minus_one = 0.0;
  for (std::size_t k = 1; k <= N; ++k) at_minus_one += (k % 2 == 0 ? 1.0 : -1.0) * C[k];
  C[0] = -at_minus_one;
  double total = 0.0;
  for (double& x : C) {
    x *= half;
    total += x;
  }
  panels_.push_back({a, b, total, std::move(C)});
}

std::size_t LogWeightTable::locate(double u) const {
  const auto it = std::upper_bound(starts_.begin(), starts_.end(), u);
  if (it == starts_.begin()) return 0;
  return static_cast<std::size_t>(it - starts_.begin()) - 1;
}

double LogWeightTable::partial(std::size_t p, double u) const {
  const Panel& pn = panels_[p];
  if (u <= pn.start) return 0.0;
  if (u >= pn.end) return pn.total;
  const double x = (2.0 * u - pn.start - pn.end) / (pn.end - pn.start);
  return clenshaw(pn.antideriv, x);
}

double LogWeightTable::prefix(double u) const {
  if (u <= 1.0) return 0.0;
  if (u < upper_) {
    const std::size_t p = locate(u);
    return prefix_[p] + partial(p, u);
  }
  double v = prefix_.back();
  if (u > upper_) {
    Tolerance tol{1e-300, 1e-13};
    v += integrate([this](double x) { return g(x); }, upper_, u, tol).value;
  }
  return v;
}

double LogWeightTable::tail(double u) const {
  if (!(kappa_ > 0.0)) throw std::logic_error("tail integrals need kappa > 0");
  if (std::isinf(u)) return 0.0;
  if (u < upper_) {
    const std::size_t p = std::max<std::size_t>(locate(std::max(u, 1.0)), 0);
    return suffix_[p + 1] + (panels_[p].total - partial(p, std::max(u, 1.0)));
  }
  return std::exp(kappa_ * (1.0 - u)) * tail_scaled(u);
}

double LogWeightTable::tail_scaled(double u) const {
  if (!(kappa_ > 0.0)) throw std::logic_error("tail integrals need kappa > 0");
  if (u < upper_) {
    const double t = tail(u);
    // Near the truncation point the table has no relative accuracy left.
    if (t > 1e-6 * suffix_.front()) return std::exp(kappa_ * (u - 1.0)) * t;
  }
  Tolerance tol{1e-300, 1e-13};
  return integrate_shifted_tail(w_, beta_, kappa_, std::max(u, 1.0), tol).value;
}

double LogWeightTable::integral(double u_lo, double u_hi) const {
  if (!(u_lo >= 1.0) || !(u_hi >= u_lo)) throw std::invalid_argument("need 1 <= u_lo <= u_hi");
  if (u_lo == u_hi) return 0.0;
  if (kappa_ > 0.0) return tail(u_lo) - tail(u_hi);
  if (std::isinf(u_hi)) throw std::invalid_argument("infinite range needs kappa > 0");
  return prefix(u_hi) - prefix(u_lo);
}

double LogWeightTable::total() const {
  if (!(kappa_ > 0.0)) throw std::logic_error("total needs kappa > 0");
  return suffix_.front();
}

}  // namespace xlab
