#include "sobolab/homeo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sobolab {

namespace {

void validate_list(const std::vector<double>& v, const char* which) {
  if (v.empty() || v.front() != 0.0) {
    throw std::invalid_argument(std::string("Homeomorphism: ") + which + " must start at 0");
  }
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i - 1] < v[i])) {
      throw std::invalid_argument(std::string("Homeomorphism: ") + which +
                                  " not strictly increasing at index " + std::to_string(i));
    }
  }
  if (!(v.back() < kTwoPi)) {
    throw std::invalid_argument(std::string("Homeomorphism: ") + which + " must stay below 2pi");
  }
}

// Piecewise-linear map through (from_i, to_i) and (2pi, 2pi).
double map_through(std::span<const double> from, std::span<const double> to, double t) {
  t = reduce_angle(t);
  const auto it = std::upper_bound(from.begin(), from.end(), t);
  const auto i = static_cast<std::size_t>(it - from.begin()) - 1;
  if (t == from[i]) return to[i];
  const double x1 = i + 1 < from.size() ? from[i + 1] : kTwoPi;
  const double y1 = i + 1 < to.size() ? to[i + 1] : kTwoPi;
  const double y = to[i] + (t - from[i]) * ((y1 - to[i]) / (x1 - from[i]));
  // Stay inside the piece even when rounding pushes past its end.
  return std::min(y, std::nextafter(y1, 0.0));
}

}  // namespace

double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Homeomorphism::Homeomorphism() : t_{0.0}, s_{0.0} {}

Homeomorphism::Homeomorphism(std::vector<double> t, std::vector<double> s)
    : t_(std::move(t)), s_(std::move(s)) {
  if (t_.size() != s_.size()) throw std::invalid_argument("Homeomorphism: knot list size mismatch");
  validate_list(t_, "input knots");
  validate_list(s_, "output knots");
}

Homeomorphism Homeomorphism::from_increments(std::span<const double> raw) {
  const std::size_t m = raw.size();
  if (m < 2) throw std::invalid_argument("from_increments: need at least 2 increments");
  for (double r : raw) {
    if (!std::isfinite(r)) throw std::invalid_argument("from_increments: non-finite increment");
  }
  const double top = *std::max_element(raw.begin(), raw.end());
  std::vector<double> weight(m);
  for (std::size_t i = 0; i < m; ++i) weight[i] = std::exp(std::max(raw[i] - top, -30.0));
  double total = 0.0;
  for (double w : weight) total += w;

  std::vector<double> t(m);
  std::vector<double> s(m);
  const double md = static_cast<double>(m);
  double cumulative = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    t[i] = kTwoPi * (static_cast<double>(i) / md);
    s[i] = kTwoPi * (cumulative / total);
    cumulative += weight[i];
  }
  return {std::move(t), std::move(s)};
}

Homeomorphism Homeomorphism::random(std::size_t m, double roughness, std::mt19937_64& rng) {
  if (!(roughness >= 0.0)) throw std::invalid_argument("Homeomorphism::random: negative roughness");
  std::vector<double> raw(m);
  for (double& r : raw) r = roughness * (2.0 * unit_uniform(rng) - 1.0);
  return from_increments(raw);
}

double Homeomorphism::operator()(double t) const { return map_through(t_, s_, t); }

bool Homeomorphism::is_identity(double tol) const {
  for (std::size_t i = 0; i < t_.size(); ++i) {
    if (std::fabs(t_[i] - s_[i]) > tol) return false;
  }
  return true;
}

Homeomorphism compose(const Homeomorphism& outer, const Homeomorphism& inner) {
  const Homeomorphism inner_inv = inner.inverse();
  std::vector<double> pre;
  pre.reserve(outer.size());
  for (double x : outer.knots_in()) pre.push_back(inner_inv(x));
  std::sort(pre.begin(), pre.end());
  std::vector<double> t = merge_knots(inner.knots_in(), pre);
  std::vector<double> s(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) s[i] = outer(inner(t[i]));
  // Rounding can collapse neighbouring images; keep strictly increasing pairs.
  std::vector<double> tt{t[0]};
  std::vector<double> ss{s[0]};
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (s[i] > ss.back()) {
      tt.push_back(t[i]);
      ss.push_back(s[i]);
    }
  }
  return {std::move(tt), std::move(ss)};
}

PiecewiseLinear superpose(const PiecewiseLinear& f, const Homeomorphism& h) {
  if (!f.periodic()) throw std::domain_error("superpose: f must be periodic");
  const Homeomorphism inv = h.inverse();
  const auto fx = f.knots();
  const auto fv = f.values();

  std::vector<double> pre(fx.size());
  for (std::size_t j = 0; j < fx.size(); ++j) pre[j] = inv(fx[j]);

  const auto ht = h.knots_in();
  const auto hs = h.knots_out();
  std::vector<double> knots;
  std::vector<cplx> values;
  knots.reserve(pre.size() + ht.size());
  values.reserve(pre.size() + ht.size());
  std::size_t i = 0;
  std::size_t j = 0;
  // Preimages are monotone in j; merge with h's knots, preferring the exact
  // f value when both land on the same angle.
  const auto push = [&](double t, cplx v, bool exact) {
    if (!knots.empty() && !(t > knots.back())) {
      if (exact) values.back() = v;
      return;
    }
    knots.push_back(t);
    values.push_back(v);
  };
  while (i < ht.size() || j < pre.size()) {
    if (j < pre.size() && (i == ht.size() || pre[j] <= ht[i])) {
      push(pre[j], fv[j], true);
      ++j;
    } else {
      push(ht[i], f(hs[i]), false);
      ++i;
    }
  }
  return {std::move(knots), std::move(values)};
}

}  // namespace sobolab
