#include "sobolab/stieltjes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sobolab/seminorm.hpp"

namespace sobolab {

namespace {

void require_integrator(const PiecewiseLinear& y) {
  if (!y.periodic()) throw std::domain_error("Stieltjes integral: integrator must be periodic");
  if (!y.is_real()) throw std::domain_error("Stieltjes integral: integrator must be real-valued");
}

// Merged knots of x and y (plus extras) and the exact contribution of every
// piece [t_i, t_{i+1}], the last piece wrapping to t_0 + 2pi.
struct Pieces {
  std::vector<double> t;
  std::vector<cplx> contrib;
};

Pieces pieces(const PiecewiseLinear& x, const PiecewiseLinear& y, std::span<const double> extra = {}) {
  Pieces p;
  p.t = merge_knots(x.knots(), y.knots());
  if (!extra.empty()) {
    std::vector<double> e(extra.begin(), extra.end());
    for (double& v : e) v = reduce_angle(v);
    std::sort(e.begin(), e.end());
    p.t = merge_knots(p.t, e);
  }
  const std::size_t m = p.t.size();
  std::vector<cplx> xv(m);
  std::vector<double> yv(m);
  for (std::size_t i = 0; i < m; ++i) {
    xv[i] = x(p.t[i]);
    yv[i] = y(p.t[i]).real();
  }
  p.contrib.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t j = (i + 1) % m;
    p.contrib[i] = (yv[j] - yv[i]) * 0.5 * (xv[i] + xv[j]);
  }
  return p;
}

}  // namespace

cplx rs_integral(const PiecewiseLinear& x, const PiecewiseLinear& y) {
  require_integrator(y);
  if (!x.periodic()) throw std::domain_error("rs_integral: integrand must be periodic");
  const Pieces p = pieces(x, y);
  cplx sum{};
  for (const cplx& c : p.contrib) sum += c;
  return sum;
}

cplx rs_integral(const PiecewiseLinear& x, const PiecewiseLinear& y, const CircleInterval& over) {
  require_integrator(y);
  if (!x.periodic()) throw std::domain_error("rs_integral: integrand must be periodic");
  const double ends[] = {over.a(), over.b()};
  const Pieces p = pieces(x, y, ends);
  cplx sum{};
  for (std::size_t i = 0; i < p.t.size(); ++i) {
    const double lo = p.t[i];
    const double hi = i + 1 < p.t.size() ? p.t[i + 1] : p.t[0] + kTwoPi;
    if (lo >= over.a() && hi <= over.b()) sum += p.contrib[i];
  }
  return sum;
}

cplx rs_harmonic(int k, const PiecewiseLinear& y) {
  require_integrator(y);
  const auto t = y.knots();
  const std::size_t m = t.size();
  if (k == 0 || m == 1) return {};
  const double kd = static_cast<double>(k);
  cplx sum{};
  for (std::size_t i = 0; i < m; ++i) {
    const double t0 = t[i];
    const double t1 = i + 1 < m ? t[i + 1] : t[0] + kTwoPi;
    const double slope = y.slope_after(i).real();
    if (slope == 0.0) continue;
    sum += slope * (std::polar(1.0, kd * t1) - std::polar(1.0, kd * t0));
  }
  return sum / (cplx(0.0, kd) * kTwoPi);
}

cplx rs_trig(const SpectrumCoeffs& x, const PiecewiseLinear& y) {
  cplx sum{};
  for (int k = -x.kmax(); k <= x.kmax(); ++k) {
    if (x[k] != cplx{}) sum += x[k] * rs_harmonic(k, y);
  }
  return sum;
}

StieltjesReport stieltjes_check(const TriangleSystem& sys, std::int64_t n, double tol) {
  return stieltjes_check(sys, build_u(sys), build_v(sys), n, tol);
}

StieltjesReport stieltjes_check(const TriangleSystem& sys, const PiecewiseLinear& u,
                             const PiecewiseLinear& v, std::int64_t n, double tol) {
  if (n <= 0) throw std::invalid_argument("stieltjes_check: n must be positive");
  const PiecewiseLinear un = truncate_un(u, n);

  std::vector<double> ends;
  ends.reserve(2 * sys.size());
  for (std::size_t k = 0; k < sys.size(); ++k) {
    ends.push_back(sys.left_half(k).a());
    ends.push_back(sys.left_half(k).b());
  }
  require_integrator(un);
  const Pieces p = pieces(v, un, ends);

  StieltjesReport r;
  r.n = n;
  for (const cplx& c : p.contrib) r.value += c.real();

  // J_k never wraps, so it covers the pieces between its two endpoints.
  const double threshold = 3.0 / static_cast<double>(n);
  for (std::size_t k = 0; k < sys.size(); ++k) {
    const CircleInterval jk = sys.left_half(k);
    const auto ia = std::lower_bound(p.t.begin(), p.t.end(), jk.a()) - p.t.begin();
    const auto ib = std::lower_bound(p.t.begin(), p.t.end(), jk.b()) - p.t.begin();
    double contrib = 0.0;
    for (auto i = ia; i < ib; ++i) contrib += p.contrib[static_cast<std::size_t>(i)].real();
    const double w = sys.weight(k);
    const bool active = w >= threshold * (1.0 - 1e-12);
    const double bound = active ? 2.0 / 9.0 * w * w : 0.0;
    r.weights.push_back(w);
    r.per_interval.push_back(contrib);
    r.bound_terms.push_back(bound);
    r.lower_bound += bound;
    if (contrib < -tol * w * w) r.negative.push_back(k);
    if (active && contrib < bound * (1.0 - tol)) r.violations.push_back(k);
  }
  r.total_ok = r.value >= r.lower_bound * (1.0 - tol);
  return r;
}

DualityReport duality_check(const SpectrumCoeffs& x, const PiecewiseLinear& y, int kmax, double tol) {
  require_integrator(y);
  if (kmax < 1) throw std::invalid_argument("duality_check: kmax must be positive");
  DualityReport r;
  r.lhs = std::abs(rs_trig(x, y));
  r.x_norm = sobolev_spectral(x, 0.5);
  r.y_norm = sobolev_spectral(pl_spectrum(y, kmax), 0.5);
  double jump_mass = 0.0;
  for (const cplx& j : y.slope_jumps()) jump_mass += std::abs(j);
  const double kd = static_cast<double>(kmax);
  r.y_tail_bound = jump_mass * jump_mass / (4.0 * kPi * kPi * kd * kd);
  r.rhs = r.x_norm * r.y_norm;
  r.holds = r.lhs <= r.rhs * (1.0 + tol);
  r.tail_warning = r.y_tail_bound > tol * r.y_norm * r.y_norm;
  return r;
}

}  // namespace sobolab
