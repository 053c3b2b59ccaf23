#include "xlab/admissible.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace xlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_exponent(double e, const char* what) {
  if (!std::isfinite(e) || e < 0.0) {
    throw std::invalid_argument(std::string(what) + " must be finite and >= 0");
  }
}

double safe_log(double v) { return v > 0.0 ? std::log(v) : -kInf; }

}  // namespace

AdmissibleFunction AdmissibleFunction::example(double gamma, std::vector<double> log_exponents) {
  require_exponent(gamma, "gamma");
  AdmissibleFunction phi;
  phi.gamma_ = gamma;
  double beta = gamma;
  for (double b : log_exponents) {
    require_exponent(b, "log exponent");
    beta += b;
  }
  // Trailing zero exponents carry no information.
  while (!log_exponents.empty() && log_exponents.back() == 0.0) log_exponents.pop_back();
  phi.log_exponents_ = std::move(log_exponents);
  phi.beta_ = beta;
  return phi;
}

AdmissibleFunction AdmissibleFunction::custom(Map map, double gamma, double beta, std::string label) {
  if (!map) throw std::invalid_argument("custom phi needs a map");
  require_exponent(gamma, "gamma");
  require_exponent(beta, "beta");
  if (beta < gamma) throw std::invalid_argument("custom phi needs gamma <= beta");
  const double at_one = map(1.0);
  if (!(std::fabs(at_one - 1.0) <= 1e-12)) {
    throw std::invalid_argument("custom phi must satisfy phi(1) = 1");
  }
  AdmissibleFunction phi;
  phi.gamma_ = gamma;
  phi.beta_ = beta;
  phi.map_ = std::move(map);
  phi.label_ = std::move(label);
  return phi;
}

double AdmissibleFunction::operator()(double x) const {
  if (std::isnan(x) || x < 1.0) {
    throw std::domain_error("phi is defined on [1, inf)");
  }
  if (map_) return map_(x);
  if (std::isinf(x)) return is_constant_one() ? 1.0 : kInf;

  double value = 1.0;
  if (gamma_ == 1.0) {
    value = x;
  } else if (gamma_ != 0.0) {
    value = std::pow(x, gamma_);
  }
  double l = x;
  for (double b : log_exponents_) {
    l = l > 1.0 ? 1.0 + std::log(l) : 1.0;
    if (b == 1.0) {
      value *= l;
    } else if (b != 0.0) {
      value *= std::pow(l, b);
    }
  }
  return value;
}

bool AdmissibleFunction::is_constant_one() const {
  return !map_ && gamma_ == 0.0 && log_exponents_.empty();
}

std::string AdmissibleFunction::describe() const {
  if (map_) return label_;
  std::ostringstream os;
  os.precision(17);
  if (is_constant_one()) return "1";
  os << "x^" << gamma_;
  for (std::size_t k = 0; k < log_exponents_.size(); ++k) {
    if (log_exponents_[k] != 0.0) os << " * log_" << (k + 1) << "(x)^" << log_exponents_[k];
  }
  return os.str();
}

// ---------------------------------------------------------------------- checks

std::vector<double> phi_check_grid(double x_max, std::size_t points) {
  if (!(x_max > 1.0) || points < 2) throw std::invalid_argument("phi grid needs x_max > 1 and >= 2 points");
  std::vector<double> g(points);
  const double span = std::log(x_max);
  for (std::size_t i = 0; i < points; ++i) {
    g[i] = std::exp(span * static_cast<double>(i) / static_cast<double>(points - 1));
  }
  g.front() = 1.0;
  g.back() = x_max;
  return g;
}

PhiCheckReport phi_check(const AdmissibleFunction& phi, std::span<const double> grid) {
  return phi_check([&phi](double x) { return phi(x); }, phi.gamma(), phi.beta_cert(), grid);
}

PhiCheckReport phi_check(const AdmissibleFunction::Map& phi, double gamma, double beta,
                         std::span<const double> grid) {
  for (double x : grid) {
    if (!(x >= 1.0) || !std::isfinite(x)) throw std::invalid_argument("phi grid must lie in [1, inf)");
  }
  PhiCheckReport rep;
  rep.degenerate = gamma == 0.0;

  rep.normalization_error = std::fabs(phi(1.0) - 1.0);
  rep.normalization = rep.normalization_error <= 1e-12;

  std::vector<double> logphi(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) logphi[i] = safe_log(phi(grid[i]));

  // Log-concavity on sampled (x, y, theta).
  double lc = kInf;
  bool lc_ok = true;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = i + 1; j < grid.size(); ++j) {
      for (double theta : {0.25, 0.5, 0.75}) {
        const double mid = theta * grid[i] + (1.0 - theta) * grid[j];
        const double chord = theta * logphi[i] + (1.0 - theta) * logphi[j];
        const double m = safe_log(phi(mid)) - chord;
        lc = std::min(lc, m);
        if (!(m >= -1e-12 * (1.0 + std::fabs(chord)))) lc_ok = false;
      }
    }
  }
  rep.log_concavity_margin = grid.size() < 2 ? 0.0 : lc;
  rep.log_concavity = lc_ok;

  // Envelope gamma <= x phi'(x)/phi(x) <= beta via finite differences of log phi.
  constexpr double kEnvelopeTol = 1e-4;
  double env = kInf;
  bool env_ok = true;
  for (double x : grid) {
    const double h = 1e-6 * x;
    double dlog;
    if (x - h < 1.0) {
      const double f0 = safe_log(phi(x));
      const double f1 = safe_log(phi(x + h));
      const double f2 = safe_log(phi(x + 2.0 * h));
      dlog = (-3.0 * f0 + 4.0 * f1 - f2) / (2.0 * h);
    } else {
      dlog = (safe_log(phi(x + h)) - safe_log(phi(x - h))) / (2.0 * h);
    }
    const double s = x * dlog;
    double m = beta - s;
    if (gamma > 0.0) m = std::min(m, s - gamma);
    env = std::min(env, m);
    if (!(m >= -kEnvelopeTol)) env_ok = false;
  }
  rep.envelope_margin = env;
  rep.envelope = env_ok;

  // phi(xy) <= x^beta phi(y).
  double sm = kInf;
  bool sm_ok = true;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const double rhs = beta * std::log(grid[i]) + logphi[j];
      const double m = rhs - safe_log(phi(grid[i] * grid[j]));
      sm = std::min(sm, m);
      if (!(m >= -1e-12 * (1.0 + std::fabs(rhs)))) sm_ok = false;
    }
  }
  rep.submultiplicative_margin = sm;
  rep.submultiplicative = sm_ok;
  return rep;
}

// ------------------------------------------------------------- infimum lemma

double lemma_infimum_bound(const AdmissibleFunction& phi, double q0, double x) {
  if (!(q0 >= 1.0) || !std::isfinite(q0)) throw std::invalid_argument("q0 must be finite and >= 1");
  if (!std::isfinite(x)) throw std::invalid_argument("x must be finite");
  if (x >= 0.0) return phi(q0) * std::exp(-x / q0);
  return std::pow(q0, phi.beta_cert()) * std::exp(1.0 / q0) * phi(1.0 - x);
}

double lemma_infimum_numeric(const AdmissibleFunction& phi, double q0, double x) {
  if (!(q0 >= 1.0) || !std::isfinite(q0)) throw std::invalid_argument("q0 must be finite and >= 1");
  if (!std::isfinite(x)) throw std::invalid_argument("x must be finite");
  const double q_max = std::max(q0, 10.0 * (1.0 + std::fabs(x)));
  auto objective = [&](double log_q) {
    const double q = std::exp(log_q);
    return phi(std::max(q, 1.0)) * std::exp(-x / q);
  };
  const double lo = std::log(q0);
  const double hi = std::log(q_max);
  double best = phi(q0) * std::exp(-x / q0);
  if (!(hi > lo)) return best;

  constexpr std::size_t kScan = 256;
  std::size_t best_i = 0;
  for (std::size_t i = 1; i < kScan; ++i) {
    const double s = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(kScan - 1);
    const double v = objective(s);
    if (v < best) {
      best = v;
      best_i = i;
    }
  }

  const double step = (hi - lo) / static_cast<double>(kScan - 1);
  double a = std::max(lo, lo + step * (static_cast<double>(best_i) - 1.0));
  double b = std::min(hi, lo + step * (static_cast<double>(best_i) + 1.0));
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = objective(c);
  double fd = objective(d);
  for (int it = 0; it < 200 && (b - a) > 1e-14 * (1.0 + std::fabs(a)); ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = objective(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = objective(d);
    }
  }
  return std::min({best, fc, fd});
}

}  // namespace xlab
