#include "xlab/rearrangement.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "xlab/exact_sum.hpp"

namespace xlab {

namespace {

void check_value(double v) {
  if (!std::isfinite(v) || v < 0.0) {
    throw std::invalid_argument("step/atom values must be finite and nonnegative, got " +
                                std::to_string(v));
  }
}

// Validates and canonicalizes (breakpoints, values) in place: merges equal
// neighbours and drops trailing zero pieces.
void canonicalize(std::vector<double>& bp, std::vector<double>& vals) {
  if (bp.size() != vals.size()) {
    throw std::invalid_argument("breakpoints and values differ in length");
  }
  double prev = 0.0;
  for (std::size_t i = 0; i < bp.size(); ++i) {
    if (!std::isfinite(bp[i]) || !(bp[i] > prev)) {
      throw std::invalid_argument("breakpoints must be positive, finite and strictly increasing");
    }
    prev = bp[i];
    check_value(vals[i]);
  }

  std::size_t out = 0;
  for (std::size_t i = 0; i < bp.size(); ++i) {
    if (out > 0 && vals[out - 1] == vals[i]) {
      bp[out - 1] = bp[i];
    } else {
      bp[out] = bp[i];
      vals[out] = vals[i];
      ++out;
    }
  }
  while (out > 0 && vals[out - 1] == 0.0) --out;
  bp.resize(out);
  vals.resize(out);
}

std::size_t piece_index(std::span<const double> bp, double t) {
  // First breakpoint strictly greater than t: t lies in [b[i-1], b[i]).
  return static_cast<std::size_t>(std::upper_bound(bp.begin(), bp.end(), t) - bp.begin());
}

double piecewise_integral(std::span<const double> bp, std::span<const double> vals) {
  double acc = 0.0;
  double lo = 0.0;
  for (std::size_t i = 0; i < bp.size(); ++i) {
    acc += vals[i] * (bp[i] - lo);
    lo = bp[i];
  }
  return acc;
}

}  // namespace

// ---------------------------------------------------------------- SimpleFunction

SimpleFunction::SimpleFunction(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  for (const Atom& a : atoms_) {
    check_value(a.value);
    if (!std::isfinite(a.mass) || !(a.mass > 0.0)) {
      throw std::invalid_argument("atom masses must be finite and positive, got " +
                                  std::to_string(a.mass));
    }
  }
}

SimpleFunction SimpleFunction::indicator(double mass, double c) {
  return SimpleFunction({{c, mass}});
}

double SimpleFunction::total_mass() const {
  ExactSum acc;
  for (const Atom& a : atoms_) acc.add(a.mass);
  return acc.value();
}

double SimpleFunction::max_value() const {
  double m = 0.0;
  for (const Atom& a : atoms_) m = std::max(m, a.value);
  return m;
}

SimpleFunction SimpleFunction::scaled(double c) const {
  if (!(c >= 0.0) || !std::isfinite(c)) throw std::invalid_argument("scale must be finite and >= 0");
  std::vector<Atom> out = atoms_;
  for (Atom& a : out) a.value *= c;
  return SimpleFunction(std::move(out));
}

// ------------------------------------------------------------------ StepFunction

StepFunction::StepFunction(std::vector<double> breakpoints, std::vector<double> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  canonicalize(breakpoints_, values_);
}

double StepFunction::operator()(double t) const {
  const std::size_t i = piece_index(breakpoints_, t);
  return i < values_.size() ? values_[i] : 0.0;
}

double StepFunction::max_value() const {
  return values_.empty() ? 0.0 : *std::max_element(values_.begin(), values_.end());
}

double StepFunction::integral() const { return piecewise_integral(breakpoints_, values_); }

bool StepFunction::is_nonincreasing() const {
  return std::is_sorted(values_.rbegin(), values_.rend());
}

StepFunction StepFunction::scaled(double c) const {
  if (!(c >= 0.0) || !std::isfinite(c)) throw std::invalid_argument("scale must be finite and >= 0");
  std::vector<double> v = values_;
  for (double& x : v) x *= c;
  return StepFunction(breakpoints_, std::move(v));
}

StepFunction StepFunction::dilated(double lambda) const {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw std::invalid_argument("dilation must be > 0");
  std::vector<double> b = breakpoints_;
  for (double& x : b) x /= lambda;
  return StepFunction(std::move(b), values_);
}

// ---------------------------------------------------------------- DecreasingStep

DecreasingStep::DecreasingStep(std::vector<double> breakpoints, std::vector<double> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  for (std::size_t i = 1; i < values_.size(); ++i) {
    if (values_[i] > values_[i - 1]) {
      throw std::invalid_argument("DecreasingStep values must be nonincreasing");
    }
  }
  canonicalize(breakpoints_, values_);
}

DecreasingStep DecreasingStep::indicator(double m, double c) {
  if (c == 0.0) return {};
  return DecreasingStep({m}, {c});
}

double DecreasingStep::operator()(double t) const {
  const std::size_t i = piece_index(breakpoints_, t);
  return i < values_.size() ? values_[i] : 0.0;
}

double DecreasingStep::distribution(double y) const {
  // values_ strictly decreasing: count how many exceed y.
  const auto it = std::partition_point(values_.begin(), values_.end(),
                                       [y](double v) { return v > y; });
  const auto k = static_cast<std::size_t>(it - values_.begin());
  return k == 0 ? 0.0 : breakpoints_[k - 1];
}

double DecreasingStep::integral() const { return piecewise_integral(breakpoints_, values_); }

DecreasingStep DecreasingStep::scaled(double c) const {
  if (!(c >= 0.0) || !std::isfinite(c)) throw std::invalid_argument("scale must be finite and >= 0");
  if (c == 0.0) return {};
  std::vector<double> v = values_;
  for (double& x : v) x *= c;
  return DecreasingStep(breakpoints_, std::move(v));
}

StepFunction DecreasingStep::as_step() const { return StepFunction(breakpoints_, values_); }

// ----------------------------------------------------------- PiecewiseHyperbolic

PiecewiseHyperbolic::PiecewiseHyperbolic(std::vector<Piece> pieces) : pieces_(std::move(pieces)) {
  double prev = 0.0;
  for (const Piece& p : pieces_) {
    if (p.lower != prev || !(p.upper > p.lower)) {
      throw std::invalid_argument("hyperbolic pieces must tile (0, inf) in order");
    }
    prev = p.upper;
  }
  if (!pieces_.empty() && !std::isinf(pieces_.back().upper)) {
    throw std::invalid_argument("last hyperbolic piece must extend to infinity");
  }
}

double PiecewiseHyperbolic::operator()(double t) const {
  if (pieces_.empty()) return 0.0;
  const auto it = std::lower_bound(pieces_.begin(), pieces_.end(), t,
                                   [](const Piece& p, double x) { return p.upper < x; });
  const Piece& p = it == pieces_.end() ? pieces_.back() : *it;
  return p.a / t + p.b;
}

// -------------------------------------------------------------------- operations

double distribution(const SimpleFunction& f, double y) {
  ExactSum acc;
  for (const auto& a : f.atoms()) {
    if (a.value > y) acc.add(a.mass);
  }
  return acc.value();
}

DecreasingStep rearrange(const SimpleFunction& f) {
  std::vector<std::size_t> order;
  order.reserve(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f.atoms()[i].value > 0.0) order.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return f.atoms()[a].value > f.atoms()[b].value;
  });

  std::vector<double> bp;
  std::vector<double> vals;
  ExactSum mass;
  for (std::size_t k = 0; k < order.size();) {
    const double v = f.atoms()[order[k]].value;
    while (k < order.size() && f.atoms()[order[k]].value == v) {
      mass.add(f.atoms()[order[k]].mass);
      ++k;
    }
    const double b = mass.value();
    // A level whose mass vanishes in rounding adds nothing measurable.
    if (!bp.empty() && b <= bp.back()) continue;
    bp.push_back(b);
    vals.push_back(v);
  }
  return DecreasingStep(std::move(bp), std::move(vals));
}

DecreasingStep rearrange_step(const StepFunction& g) {
  if (g.is_nonincreasing()) {
    return DecreasingStep(std::vector<double>(g.breakpoints().begin(), g.breakpoints().end()),
                          std::vector<double>(g.values().begin(), g.values().end()));
  }
  std::vector<SimpleFunction::Atom> atoms;
  atoms.reserve(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double len = g.breakpoints()[i] - g.lower(i);
    if (g.values()[i] > 0.0 && len > 0.0) atoms.push_back({g.values()[i], len});
  }
  return rearrange(SimpleFunction(std::move(atoms)));
}

StepFunction lay_out(const SimpleFunction& f) {
  std::vector<double> bp;
  std::vector<double> vals;
  ExactSum pos;
  for (const auto& a : f.atoms()) {
    pos.add(a.mass);
    const double b = pos.value();
    if (!bp.empty() && b <= bp.back()) continue;
    bp.push_back(b);
    vals.push_back(a.value);
  }
  return StepFunction(std::move(bp), std::move(vals));
}

PiecewiseHyperbolic double_star(const DecreasingStep& fstar) {
  using Piece = PiecewiseHyperbolic::Piece;
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<Piece> pieces;
  pieces.reserve(fstar.size() + 1);
  double cumulative = 0.0;  // int_0^{lower} f*
  for (std::size_t i = 0; i < fstar.size(); ++i) {
    const double lo = fstar.lower(i);
    const double hi = fstar.breakpoints()[i];
    const double v = fstar.values()[i];
    // (A + v (t - lo)) / t = (A - v lo) / t + v, and A >= v lo for decreasing f*.
    const double a = i == 0 ? 0.0 : std::max(0.0, cumulative - v * lo);
    pieces.push_back({lo, hi, a, v});
    cumulative += v * (hi - lo);
  }
  pieces.push_back({fstar.support_end(), inf, cumulative, 0.0});
  return PiecewiseHyperbolic(std::move(pieces));
}

GhSplit gh_split(const DecreasingStep& fstar, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("gh_split requires t > 0");
  const double level = fstar(t);
  std::vector<double> gb, gv, hb, hv;
  for (std::size_t i = 0; i < fstar.size(); ++i) {
    const double v = fstar.values()[i];
    const double b = fstar.breakpoints()[i];
    if (v > level) {
      // {f* > f*(t)} is an initial interval of length <= t.
      gb.push_back(b);
      gv.push_back(v - level);
    }
    hb.push_back(b);
    hv.push_back(std::min(v, level));
  }
  return {DecreasingStep(std::move(gb), std::move(gv)), DecreasingStep(std::move(hb), std::move(hv))};
}

}  // namespace xlab
