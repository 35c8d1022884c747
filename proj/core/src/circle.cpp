#include "sobolab/circle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sobolab {

namespace {

cplx lerp(double t0, cplx v0, double t1, cplx v1, double t) {
  return v0 + (v1 - v0) * ((t - t0) / (t1 - t0));
}

bool collinear(double tp, cplx vp, double ti, cplx vi, double tn, cplx vn, double tol) {
  const cplx predicted = lerp(tp, vp, tn, vn, ti);
  return std::abs(vi - predicted) <= tol * std::max(1.0, std::abs(vi));
}

}  // namespace

double reduce_angle(double t) {
  if (!std::isfinite(t)) throw std::domain_error("reduce_angle: non-finite angle");
  while (t >= kTwoPi) t -= kTwoPi;
  while (t < 0.0) t += kTwoPi;
  // t slightly below zero can round up to exactly 2pi.
  return t >= kTwoPi ? 0.0 : t;
}

CircleInterval::CircleInterval(double a, double b) : a_(a), b_(b) {
  if (!(0.0 <= a && a < b && b <= kTwoPi)) {
    throw std::invalid_argument("CircleInterval: need 0 <= a < b <= 2pi, got [" +
                                std::to_string(a) + ", " + std::to_string(b) + "]");
  }
}

PiecewiseLinear::PiecewiseLinear(std::vector<double> knots, std::vector<cplx> values,
                                 bool periodic)
    : knots_(std::move(knots)), values_(std::move(values)), periodic_(periodic) {
  if (knots_.empty()) throw std::invalid_argument("PiecewiseLinear: no knots");
  if (knots_.size() != values_.size()) {
    throw std::invalid_argument("PiecewiseLinear: knots/values size mismatch");
  }
  if (!(knots_.front() >= 0.0) || !(knots_.back() < kTwoPi)) {
    throw std::invalid_argument("PiecewiseLinear: knots must lie in [0, 2pi)");
  }
  for (std::size_t i = 1; i < knots_.size(); ++i) {
    if (!(knots_[i - 1] < knots_[i])) {
      throw std::invalid_argument("PiecewiseLinear: knots not strictly increasing at index " +
                                  std::to_string(i));
    }
  }
  for (const cplx& v : values_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw std::invalid_argument("PiecewiseLinear: non-finite value");
    }
  }
}

PiecewiseLinear PiecewiseLinear::constant(cplx c) { return PiecewiseLinear({0.0}, {c}, true); }

PiecewiseLinear PiecewiseLinear::from_real(std::vector<double> knots,
                                           const std::vector<double>& values, bool periodic) {
  std::vector<cplx> v(values.begin(), values.end());
  return PiecewiseLinear(std::move(knots), std::move(v), periodic);
}

std::size_t PiecewiseLinear::segment_of(double t) const {
  const auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
  if (it == knots_.begin()) return knots_.size() - 1;
  return static_cast<std::size_t>(it - knots_.begin()) - 1;
}

cplx PiecewiseLinear::operator()(double t) const {
  t = reduce_angle(t);
  const std::size_t n = knots_.size();
  if (n == 1) return values_[0];
  if (t < knots_.front()) {
    if (!periodic_) return values_.front();
    return lerp(knots_.back() - kTwoPi, values_.back(), knots_.front(), values_.front(), t);
  }
  const std::size_t i = segment_of(t);
  if (i == n - 1) {
    if (!periodic_ || t == knots_.back()) return values_.back();
    return lerp(knots_.back(), values_.back(), knots_.front() + kTwoPi, values_.front(), t);
  }
  return lerp(knots_[i], values_[i], knots_[i + 1], values_[i + 1], t);
}

double PiecewiseLinear::real_at(double t) const {
  if (!is_real()) throw std::domain_error("PiecewiseLinear::real_at: function is complex-valued");
  return (*this)(t).real();
}

bool PiecewiseLinear::is_real() const {
  return std::all_of(values_.begin(), values_.end(), [](const cplx& v) { return v.imag() == 0.0; });
}

PiecewiseLinear PiecewiseLinear::real_part() const {
  std::vector<cplx> v(values_.size());
  std::transform(values_.begin(), values_.end(), v.begin(), [](cplx z) { return cplx(z.real()); });
  return PiecewiseLinear(knots_, std::move(v), periodic_);
}

PiecewiseLinear PiecewiseLinear::imag_part() const {
  std::vector<cplx> v(values_.size());
  std::transform(values_.begin(), values_.end(), v.begin(), [](cplx z) { return cplx(z.imag()); });
  return PiecewiseLinear(knots_, std::move(v), periodic_);
}

PiecewiseLinear PiecewiseLinear::simplify(double tol) const {
  const std::size_t n = knots_.size();
  if (n <= 2 && !periodic_) return *this;
  if (n == 1) return *this;

  std::vector<std::size_t> kept;
  kept.reserve(n);
  kept.push_back(0);
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t p = kept.back();
    double tn = 0.0;
    cplx vn;
    if (i + 1 < n) {
      tn = knots_[i + 1];
      vn = values_[i + 1];
    } else if (periodic_) {
      tn = knots_[0] + kTwoPi;
      vn = values_[0];
    } else {
      kept.push_back(i);
      break;
    }
    if (!collinear(knots_[p], values_[p], knots_[i], values_[i], tn, vn, tol)) kept.push_back(i);
  }

  if (periodic_ && kept.size() >= 2) {
    // The first knot was kept unconditionally; test it against its cyclic
    // neighbours now that the rest is settled.
    const std::size_t last = kept.back();
    const std::size_t second = kept[1];
    if (collinear(knots_[last] - kTwoPi, values_[last], knots_[0], values_[0], knots_[second],
                  values_[second], tol)) {
      kept.erase(kept.begin());
    }
  }
  if (periodic_ && kept.size() == 2) {
    const std::size_t i0 = kept[0];
    const std::size_t i1 = kept[1];
    if (std::abs(values_[i0] - values_[i1]) <= tol * std::max(1.0, std::abs(values_[i0]))) {
      kept.pop_back();
    }
  }

  std::vector<double> k;
  std::vector<cplx> v;
  k.reserve(kept.size());
  v.reserve(kept.size());
  for (std::size_t i : kept) {
    k.push_back(knots_[i]);
    v.push_back(values_[i]);
  }
  return PiecewiseLinear(std::move(k), std::move(v), periodic_);
}

cplx PiecewiseLinear::slope_after(std::size_t i) const {
  const std::size_t n = knots_.size();
  if (n == 1) return {};
  if (i + 1 < n) return (values_[i + 1] - values_[i]) / (knots_[i + 1] - knots_[i]);
  if (!periodic_) return {};
  return (values_[0] - values_[n - 1]) / (knots_[0] + kTwoPi - knots_[n - 1]);
}

std::vector<cplx> PiecewiseLinear::slope_jumps() const {
  if (!periodic_) throw std::domain_error("slope_jumps: function is not periodic");
  const std::size_t n = knots_.size();
  std::vector<cplx> jumps(n);
  if (n == 1) return jumps;
  cplx prev = slope_after(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    const cplx s = slope_after(i);
    jumps[i] = s - prev;
    prev = s;
  }
  return jumps;
}

double PiecewiseLinear::max_abs() const {
  double m = 0.0;
  for (const cplx& v : values_) m = std::max(m, std::abs(v));
  return m;
}

PiecewiseLinear& PiecewiseLinear::operator*=(cplx c) {
  for (cplx& v : values_) v *= c;
  return *this;
}

std::vector<double> merge_knots(std::span<const double> a, std::span<const double> b) {
  std::vector<double> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

template <class Op>
PiecewiseLinear combine(const PiecewiseLinear& f, const PiecewiseLinear& g, Op op) {
  if (f.periodic() != g.periodic()) {
    throw std::invalid_argument("PiecewiseLinear: cannot combine periodic and non-periodic");
  }
  std::vector<double> knots = merge_knots(f.knots(), g.knots());
  std::vector<cplx> values(knots.size());
  for (std::size_t i = 0; i < knots.size(); ++i) values[i] = op(f(knots[i]), g(knots[i]));
  return PiecewiseLinear(std::move(knots), std::move(values), f.periodic());
}

}  // namespace

PiecewiseLinear operator+(const PiecewiseLinear& f, const PiecewiseLinear& g) {
  return combine(f, g, std::plus<cplx>());
}

PiecewiseLinear operator-(const PiecewiseLinear& f, const PiecewiseLinear& g) {
  return combine(f, g, std::minus<cplx>());
}

GridFunction::GridFunction(std::vector<cplx> s) : samples(std::move(s)) {
  if (samples.size() < 2 || !is_power_of_two(samples.size())) {
    throw std::invalid_argument("GridFunction: sample count must be a power of two >= 2, got " +
                                std::to_string(samples.size()));
  }
}

PiecewiseLinear triangle(const CircleInterval& interval) {
  const double a = interval.a();
  const double b = interval.b();
  if (!(a > 0.0 && b < kTwoPi)) {
    throw std::invalid_argument("triangle: interval must lie strictly inside (0, 2pi)");
  }
  return PiecewiseLinear::from_real({0.0, a, interval.center(), b}, {0.0, 0.0, 1.0, 0.0});
}

GridFunction sample(const PiecewiseLinear& f, std::size_t n) {
  if (n < 2 || !is_power_of_two(n)) {
    throw std::invalid_argument("sample: N must be a power of two >= 2");
  }
  std::vector<cplx> s(n);
  for (std::size_t j = 0; j < n; ++j) {
    s[j] = f(kTwoPi * static_cast<double>(j) / static_cast<double>(n));
  }
  return GridFunction(std::move(s));
}

double total_variation(const PiecewiseLinear& f) {
  if (!f.is_real()) throw std::domain_error("total_variation: function is complex-valued");
  const auto v = f.values();
  double tv = 0.0;
  for (std::size_t i = 1; i < v.size(); ++i) tv += std::abs(v[i].real() - v[i - 1].real());
  if (f.periodic() && v.size() > 1) tv += std::abs(v.front().real() - v.back().real());
  return tv;
}

}  // namespace sobolab
