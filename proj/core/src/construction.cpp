#include "sobolab/construction.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace sobolab {

int DeltaSequence::block_of(std::size_t k) const {
  const auto pos = static_cast<std::int64_t>(k) + 1;
  const auto it = std::upper_bound(block_starts.begin(), block_starts.end(), pos);
  if (it == block_starts.begin() || it == block_starts.end()) {
    throw std::out_of_range("DeltaSequence::block_of: index out of range");
  }
  return static_cast<int>(it - block_starts.begin());
}

std::size_t DeltaSequence::prefix_count(int j) const {
  if (j < 0 || j > blocks()) throw std::out_of_range("DeltaSequence::prefix_count");
  return static_cast<std::size_t>(block_starts[static_cast<std::size_t>(j)] - 1);
}

namespace {

// ceil(x) for x that should be an integer but may carry rounding noise.
double safe_ceil(double x) {
  const double r = std::round(x);
  if (std::fabs(x - r) <= 1e-9 * std::max(1.0, std::fabs(x))) return r;
  return std::ceil(x);
}

double power_epsilon(double alpha, int j) {
  const double m = std::max(static_cast<double>(j + 2), safe_ceil(j / (1.0 - 2.0 * alpha)));
  if (m > 1000.0) {
    throw std::domain_error("build_delta_sequence: eps_" + std::to_string(j) +
                            " = 2^-" + std::to_string(m) + " is not representable");
  }
  return std::ldexp(1.0, -static_cast<int>(m));
}

// Largest eps below 2^{-(j+1)} (within the table support) with
// omega(eps)^2 / eps >= 2^j, found by bisection in log scale.
double table_epsilon(const Modulus& omega, int j) {
  const double target = std::ldexp(1.0, j);
  const auto ok = [&](double eps) { return omega(eps) * omega(eps) / eps >= target; };
  const auto& pts = omega.points();
  const double lo_support = pts.size() > 1 ? pts[1].first : 0.0;
  double hi = std::min(std::ldexp(1.0, -(j + 1)), omega.support_max()) * (1.0 - 1e-12);
  double lo = lo_support;
  if (!(lo > 0.0 && lo < hi)) {
    throw std::domain_error("build_delta_sequence: table support too small for block " +
                            std::to_string(j));
  }
  if (ok(hi)) return hi;
  if (!ok(lo)) {
    throw std::domain_error("build_delta_sequence: no eps_" + std::to_string(j) +
                            " on the table support satisfies omega(eps)^2/eps >= 2^" +
                            std::to_string(j));
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = std::sqrt(lo * hi);
    if (ok(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi / lo - 1.0 < 1e-14) break;
  }
  return lo;
}

}  // namespace

DeltaSequence build_delta_sequence(const Modulus& omega, int blocks, bool exploratory) {
  if (blocks < 0) throw std::invalid_argument("build_delta_sequence: negative block count");
  const bool power = omega.kind() == Modulus::Kind::power;
  if (power && !(omega.alpha() < 0.5)) {
    if (!exploratory || omega.alpha() > 0.5) {
      throw std::domain_error(
          "build_delta_sequence: power modulus needs alpha < 1/2 (alpha = 1/2 only in "
          "exploratory mode)");
    }
  }

  DeltaSequence d;
  d.exploratory = power && !(omega.alpha() < 0.5);
  d.block_starts.push_back(1);
  for (int j = 1; j <= blocks; ++j) {
    double eps = 0.0;
    if (d.exploratory) {
      eps = std::ldexp(1.0, -(j + 2));
    } else if (power) {
      eps = power_epsilon(omega.alpha(), j);
    } else {
      eps = table_epsilon(omega, j);
    }
    const double count = safe_ceil(1.0 / (std::ldexp(1.0, j + 1) * eps));
    if (count > 1e8) {
      throw std::domain_error("build_delta_sequence: block " + std::to_string(j) + " needs " +
                              std::to_string(count) + " intervals");
    }
    const auto n = static_cast<std::int64_t>(count);
    d.epsilons.push_back(eps);
    d.block_sizes.push_back(n);
    d.block_starts.push_back(d.block_starts.back() + n);
    d.deltas.insert(d.deltas.end(), static_cast<std::size_t>(n), eps);
    d.weights.insert(d.weights.end(), static_cast<std::size_t>(n), omega(eps));
  }
  return d;
}

std::vector<std::string> check_delta_sequence(const DeltaSequence& d, const Modulus& omega,
                                              double tol) {
  std::vector<std::string> out;
  const auto fail = [&](int j, const std::string& what) {
    std::ostringstream os;
    os << "block " << j << ": " << what;
    out.push_back(os.str());
  };
  for (int j = 1; j <= d.blocks(); ++j) {
    const auto i = static_cast<std::size_t>(j - 1);
    const double eps = d.epsilons[i];
    const double n = static_cast<double>(d.block_sizes[i]);
    const double p = std::ldexp(1.0, j);
    if (!(eps > 0.0 && eps < 0.5 / p)) fail(j, "eps_j outside (0, 2^-(j+1))");
    const double w = omega(eps);
    if (w * w / eps < p * (1.0 - tol)) fail(j, "omega(eps_j)^2 / eps_j < 2^j");
    if (n < (1.0 / (2.0 * p * eps)) * (1.0 - tol) || !(n < 1.0 / (p * eps))) {
      fail(j, "n_j outside [1/(2^(j+1) eps_j), 1/(2^j eps_j))");
    }
    if (d.block_starts[i + 1] != d.block_starts[i] + d.block_sizes[i]) fail(j, "bad block start");
    double block_sum = 0.0;
    for (auto k = d.block_starts[i]; k < d.block_starts[i + 1]; ++k) {
      const double wk = d.weights[static_cast<std::size_t>(k - 1)];
      block_sum += wk * wk;
    }
    if (block_sum < 0.5 * (1.0 - tol)) fail(j, "block sum of omega(delta_k)^2 below 1/2");
  }
  const double total = std::accumulate(d.deltas.begin(), d.deltas.end(), 0.0);
  if (total > 1.0 + tol) out.emplace_back("sum of delta_k exceeds 1");
  return out;
}

TriangleSystem::TriangleSystem(std::vector<double> a, std::vector<double> delta,
                               std::vector<double> weights)
    : a_(std::move(a)), delta_(std::move(delta)), w_(std::move(weights)) {
  if (a_.size() != delta_.size() || a_.size() != w_.size()) {
    throw std::invalid_argument("TriangleSystem: size mismatch");
  }
  double prev_end = 0.0;
  for (std::size_t k = 0; k < a_.size(); ++k) {
    if (!(delta_[k] > 0.0) || !(w_[k] >= 0.0)) {
      throw std::invalid_argument("TriangleSystem: nonpositive length or negative weight at k = " +
                                  std::to_string(k + 1));
    }
    if (!(a_[k] > prev_end)) {
      throw std::invalid_argument("TriangleSystem: intervals overlap or touch 0 at k = " +
                                  std::to_string(k + 1));
    }
    prev_end = b(k);
  }
  if (!a_.empty() && !(prev_end < kTwoPi)) {
    throw std::invalid_argument("TriangleSystem: last interval reaches 2pi");
  }
}

CircleInterval TriangleSystem::interval(std::size_t k) const { return {a(k), b(k)}; }

CircleInterval TriangleSystem::left_half(std::size_t k) const {
  return {a(k), a(k) + 3.0 * delta_[k]};
}

CircleInterval TriangleSystem::middle_third(std::size_t k) const {
  return {a(k) + delta_[k], a(k) + 2.0 * delta_[k]};
}

TriangleSystem TriangleSystem::scaled_weights(double factor) const {
  std::vector<double> w = w_;
  for (double& x : w) x *= factor;
  return {a_, delta_, std::move(w)};
}

TriangleSystem place_intervals(const DeltaSequence& d, std::size_t count) {
  if (count > d.size()) {
    throw std::invalid_argument("place_intervals: K = " + std::to_string(count) +
                                " exceeds the sequence length " + std::to_string(d.size()));
  }
  double occupied = 0.0;
  for (std::size_t k = 0; k < count; ++k) occupied += 6.0 * d.deltas[k];
  if (!(occupied < kTwoPi)) throw std::invalid_argument("place_intervals: K too large for the circle");
  const double gap = (kTwoPi - occupied) / static_cast<double>(count + 1);

  std::vector<double> a(count);
  double pos = gap;
  for (std::size_t k = 0; k < count; ++k) {
    a[k] = pos;
    pos += 6.0 * d.deltas[k] + gap;
  }
  return {std::move(a), std::vector<double>(d.deltas.begin(), d.deltas.begin() + count),
          std::vector<double>(d.weights.begin(), d.weights.begin() + count)};
}

TriangleSystem build_system(const Modulus& omega, int blocks) {
  const DeltaSequence d = build_delta_sequence(omega, blocks);
  return place_intervals(d, d.size());
}

namespace {

// Sum of tents with peaks w_k over [lo_k, lo_k + len_k].
PiecewiseLinear tent_sum(const TriangleSystem& sys, double length_factor) {
  std::vector<double> knots{0.0};
  std::vector<double> values{0.0};
  for (std::size_t k = 0; k < sys.size(); ++k) {
    const double lo = sys.a(k);
    const double len = length_factor * sys.delta(k);
    knots.insert(knots.end(), {lo, lo + 0.5 * len, lo + len});
    values.insert(values.end(), {0.0, sys.weight(k), 0.0});
  }
  return PiecewiseLinear::from_real(std::move(knots), values);
}

}  // namespace

PiecewiseLinear build_u(const TriangleSystem& sys) { return tent_sum(sys, 6.0); }

PiecewiseLinear build_v(const TriangleSystem& sys) { return tent_sum(sys, 3.0); }

PiecewiseLinear build_f(const TriangleSystem& sys) {
  std::vector<double> knots{0.0};
  std::vector<cplx> values{0.0};
  for (std::size_t k = 0; k < sys.size(); ++k) {
    const double a = sys.a(k);
    const double d = sys.delta(k);
    const double w = sys.weight(k);
    knots.insert(knots.end(), {a, a + 1.5 * d, a + 3.0 * d, a + 6.0 * d});
    values.insert(values.end(), {cplx(0.0, 0.0), cplx(0.5 * w, w), cplx(w, 0.0), cplx(0.0, 0.0)});
  }
  return {std::move(knots), std::move(values)};
}

PiecewiseLinear truncate_un(const PiecewiseLinear& u, std::int64_t n) {
  if (n <= 0) throw std::invalid_argument("truncate_un: n must be positive");
  if (!u.is_real()) throw std::domain_error("truncate_un: u must be real-valued");
  const double level = 1.0 / static_cast<double>(n);
  const auto x = u.knots();
  const auto v = u.values();
  const std::size_t m = x.size();

  std::vector<double> knots;
  std::vector<double> values;
  knots.reserve(m + 8);
  values.reserve(m + 8);
  double wrapped_crossing = -1.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double y0 = v[i].real();
    knots.push_back(x[i]);
    values.push_back(std::max(y0, level));
    if (m == 1 || (!u.periodic() && i + 1 == m)) continue;
    const bool wrap = i + 1 == m;
    const double x1 = wrap ? x[0] + kTwoPi : x[i + 1];
    const double y1 = v[wrap ? 0 : i + 1].real();
    if ((y0 - level) * (y1 - level) < 0.0) {
      const double t = x[i] + (level - y0) / (y1 - y0) * (x1 - x[i]);
      if (t <= x[i] || t >= x1) continue;
      if (t >= kTwoPi) {
        wrapped_crossing = t - kTwoPi;
      } else {
        knots.push_back(t);
        values.push_back(level);
      }
    }
  }
  if (wrapped_crossing >= 0.0 && wrapped_crossing < knots.front()) {
    knots.insert(knots.begin(), wrapped_crossing);
    values.insert(values.begin(), level);
  }

  // Drop knots in the interior of flat runs at the truncation level.
  const std::size_t k = knots.size();
  std::vector<double> kk;
  std::vector<double> vv;
  for (std::size_t i = 0; i < k; ++i) {
    const bool interior = values[i] == level && values[(i + k - 1) % k] == level &&
                          values[(i + 1) % k] == level && k > 2 &&
                          (u.periodic() || (i > 0 && i + 1 < k));
    if (interior) continue;
    kk.push_back(knots[i]);
    vv.push_back(values[i]);
  }
  if (kk.empty()) return PiecewiseLinear::constant(level);
  return PiecewiseLinear::from_real(std::move(kk), vv, u.periodic());
}

std::vector<std::int64_t> truncation_grid(const TriangleSystem& sys) {
  std::vector<std::int64_t> out;
  for (const double w : sys.weights()) {
    if (w > 0.0) out.push_back(static_cast<std::int64_t>(safe_ceil(3.0 / w)));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace sobolab
