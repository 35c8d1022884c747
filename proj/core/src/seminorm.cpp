#include "sobolab/seminorm.hpp"

#include <Eigen/Core>
#include <boost/math/special_functions/zeta.hpp>
#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace sobolab {

// ---------------------------------------------------------------- Modulus

Modulus Modulus::power(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("Modulus::power: alpha must lie in (0, 1], got " +
                                std::to_string(alpha));
  }
  Modulus m;
  m.kind_ = Kind::power;
  m.alpha_ = alpha;
  return m;
}

Modulus Modulus::table(std::vector<std::pair<double, double>> points) {
  std::sort(points.begin(), points.end());
  if (points.empty() || points.front().first != 0.0) points.insert(points.begin(), {0.0, 0.0});
  if (points.front().second != 0.0) throw std::invalid_argument("Modulus::table: omega(0) != 0");
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (!(points[i].first > points[i - 1].first)) {
      throw std::invalid_argument("Modulus::table: duplicate delta");
    }
    if (points[i].second < points[i - 1].second) {
      throw std::invalid_argument("Modulus::table: omega must be nondecreasing");
    }
  }
  Modulus m;
  m.kind_ = Kind::table;
  m.points_ = std::move(points);
  const std::size_t n = m.points_.size();
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double x = m.points_[i].first;
      const double y = m.points_[j].first;
      const double lhs = m(x + y);
      const double rhs = m.points_[i].second + m.points_[j].second;
      if (lhs > rhs * (1.0 + 1e-12)) {
        throw std::invalid_argument("Modulus::table: not subadditive at delta pair (" +
                                    std::to_string(x) + ", " + std::to_string(y) + ")");
      }
    }
  }
  return m;
}

double Modulus::operator()(double delta) const {
  if (delta < 0.0) throw std::domain_error("Modulus: negative delta");
  if (delta == 0.0) return 0.0;
  if (kind_ == Kind::power) {
    if (alpha_ == 1.0 / 3.0) return std::cbrt(delta);
    if (alpha_ == 0.5) return std::sqrt(delta);
    if (alpha_ == 1.0) return delta;
    return std::pow(delta, alpha_);
  }
  const auto it = std::upper_bound(points_.begin(), points_.end(), delta,
                                   [](double d, const auto& p) { return d < p.first; });
  if (it == points_.end()) return points_.back().second;
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  return lo.second + (hi.second - lo.second) * ((delta - lo.first) / (hi.first - lo.first));
}

double Modulus::alpha() const {
  if (kind_ != Kind::power) throw std::logic_error("Modulus::alpha: table modulus");
  return alpha_;
}

double Modulus::support_max() const {
  return kind_ == Kind::power ? std::numeric_limits<double>::infinity() : points_.back().first;
}

// -------------------------------------------------------------- seminorms

double sobolev_spectral(const SpectrumCoeffs& c, double s) {
  if (!(s > 0.0)) throw std::invalid_argument("sobolev_spectral: s must be positive");
  double sum = 0.0;
  for (int k = 1; k <= c.kmax(); ++k) {
    const double w = s == 0.5 ? static_cast<double>(k) : std::pow(static_cast<double>(k), 2.0 * s);
    sum += (std::norm(c[k]) + std::norm(c[-k])) * w;
  }
  return std::sqrt(sum);
}

double sobolev_integral(const GridFunction& g) {
  const std::size_t n = g.size();
  Eigen::FFT<double> fft;
  std::vector<cplx> spec;
  fft.fwd(spec, g.samples);
  const double inv_n = 1.0 / static_cast<double>(n);
  std::vector<cplx> power(n);
  double total = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double p = std::norm(spec[k] * inv_n);
    power[k] = p;
    total += p;
  }
  // mean_j |g_{j+m} - g_j|^2 = sum_k P_k (2 - 2 cos(2 pi k m / N)).
  std::vector<cplx> corr;
  fft.fwd(corr, power);
  const double dtheta = kTwoPi * inv_n;
  double sum = 0.0;
  for (std::size_t m = 1; m < n; ++m) {
    const double mean_sq = std::max(0.0, 2.0 * (total - corr[m].real()));
    const double theta = dtheta * static_cast<double>(m);
    sum += dtheta * kTwoPi * mean_sq / (theta * theta);
  }
  return std::sqrt(sum);
}

namespace {

constexpr int kSeriesTerms = 20;

// zeta(2n) / (n (2n+1) (2n+2)), n = 1..kSeriesTerms, highest first for Horner.
const std::array<double, kSeriesTerms>& series_coefficients() {
  static const std::array<double, kSeriesTerms> coeffs = [] {
    std::array<double, kSeriesTerms> c{};
    for (int n = 1; n <= kSeriesTerms; ++n) {
      const long double z = boost::math::zeta(static_cast<long double>(2 * n));
      const long double den = static_cast<long double>(n) * (2 * n + 1) * (2 * n + 2);
      c[static_cast<std::size_t>(kSeriesTerms - n)] = static_cast<double>(z / den);
    }
    return c;
  }();
  return coeffs;
}

constexpr double kInvFourPiSq = 1.0 / (4.0 * kPi * kPi);

// d in (0, pi], log_d = log(d).
inline double kernel(double d, double log_d, const double* c) {
  const double d2 = d * d;
  const double z = d2 * kInvFourPiSq;
  double p = c[0];
  for (int n = 1; n < kSeriesTerms; ++n) p = p * z + c[n];
  p *= z;
  return d2 * (0.5 * log_d - 0.75 - p);
}

}  // namespace

double clausen3_shifted(double d) {
  d = reduce_angle(d);
  if (d > kPi) d = kTwoPi - d;
  if (d == 0.0) return 0.0;
  return kernel(d, std::log(d), series_coefficients().data());
}

namespace {

// Blocked pair sums with vectorized logarithms. Positions may be unwrapped
// past 2pi; only the circular distance matters.
constexpr std::size_t kBlock = 512;

struct PairSummer {
  const double* c = series_coefficients().data();
  alignas(64) std::array<double, kBlock> dist{};
  alignas(64) std::array<double, kBlock> logs{};

  // sum_b w[b] C(|xi - x[b]|) over a block of at most kBlock points.
  double block(double xi, const double* x, const double* w, std::size_t len) {
    for (std::size_t b = 0; b < len; ++b) {
      double d = std::fabs(x[b] - xi);
      d -= kTwoPi * std::floor(d / kTwoPi);
      dist[b] = std::min(d, kTwoPi - d);
    }
    auto dm = Eigen::Map<Eigen::ArrayXd>(dist.data(), static_cast<Eigen::Index>(len));
    dm = dm.max(std::numeric_limits<double>::min());
    Eigen::Map<Eigen::ArrayXd>(logs.data(), static_cast<Eigen::Index>(len)) = dm.log();
    double acc = 0.0;
#pragma omp simd reduction(+ : acc)
    for (std::size_t b = 0; b < len; ++b) acc += w[b] * kernel(dist[b], logs[b], c);
    return acc;
  }

  // sum_{i in a, j in b} wa_i wb_j C(x_j - x_i)
  long double cross(std::span<const double> xa, std::span<const double> wa,
                    std::span<const double> xb, std::span<const double> wb) {
    long double total = 0.0L;
    for (std::size_t i = 0; i < xa.size(); ++i) {
      double acc = 0.0;
      for (std::size_t jb = 0; jb < xb.size(); jb += kBlock) {
        acc += block(xa[i], xb.data() + jb, wb.data() + jb, std::min(kBlock, xb.size() - jb));
      }
      total += static_cast<long double>(wa[i]) * acc;
    }
    return total;
  }

  // sum_{i < j} w_i w_j C(x_j - x_i)
  long double self(std::span<const double> x, std::span<const double> w) {
    long double total = 0.0L;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
      double acc = 0.0;
      for (std::size_t jb = i + 1; jb < x.size(); jb += kBlock) {
        acc += block(x[i], x.data() + jb, w.data() + jb, std::min(kBlock, x.size() - jb));
      }
      total += static_cast<long double>(w[i]) * acc;
    }
    return total;
  }
};

// Far-field expansion: C^{(n)}(d) = Q_n(cot(d/2)) for n >= 3, with
// Q_3 = c/2 and Q_{n+1}(c) = -(1 + c^2) Q_n'(c) / 2.
constexpr int kMaxOrder = 12;
constexpr int kMinMoment = 2;
constexpr int kMaxMoment = kMaxOrder - kMinMoment;
constexpr double kSeparation = 6.0;

using CotPoly = std::array<double, kMaxOrder>;

const std::array<CotPoly, kMaxOrder + 1>& cot_polys() {
  static const std::array<CotPoly, kMaxOrder + 1> polys = [] {
    std::array<CotPoly, kMaxOrder + 1> q{};
    q[3][1] = 0.5;
    for (int n = 3; n < kMaxOrder; ++n) {
      CotPoly deriv{};
      for (int k = 1; k < kMaxOrder; ++k) deriv[k - 1] = k * q[n][k];
      for (int k = 0; k + 2 < kMaxOrder; ++k) {
        q[n + 1][k] -= 0.5 * deriv[k];
        q[n + 1][k + 2] -= 0.5 * deriv[k];
      }
    }
    return q;
  }();
  return polys;
}

struct Clusters {
  // Kinks, grouped: cluster k owns [offset[k], offset[k+1]).
  std::vector<double> x;
  std::vector<double> jump;
  std::vector<std::size_t> offset{0};
  std::vector<char> regular;

  [[nodiscard]] std::size_t size() const { return offset.size() - 1; }
  [[nodiscard]] std::span<const double> xs(std::size_t k) const {
    return {x.data() + offset[k], offset[k + 1] - offset[k]};
  }
  [[nodiscard]] std::span<const double> js(std::size_t k) const {
    return {jump.data() + offset[k], offset[k + 1] - offset[k]};
  }

  void close() {
    if (x.size() == offset.back()) return;
    offset.push_back(x.size());
    const auto px = xs(size() - 1);
    const auto pj = js(size() - 1);
    const double c = 0.5 * (px.front() + px.back());
    double m0 = 0.0;
    double m1 = 0.0;
    double mass = 0.0;
    for (std::size_t j = 0; j < px.size(); ++j) {
      m0 += pj[j];
      m1 += pj[j] * (px[j] - c);
      mass += std::fabs(pj[j]);
    }
    // Allow for rounding in the knot positions themselves.
    const double scale = 0.5 * (px.back() - px.front());
    const double slack =
        1e-10 * scale + 64.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::fabs(c));
    regular.push_back(std::fabs(m0) <= 1e-10 * mass && std::fabs(m1) <= slack * mass);
  }
};

// Splits the kinks of a real periodic function at its flat segments.
Clusters cluster_kinks(std::span<const double> knots, std::span<const double> values) {
  const std::size_t n = knots.size();
  std::vector<double> slope(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x1 = i + 1 < n ? knots[i + 1] : knots[0] + kTwoPi;
    const double v1 = i + 1 < n ? values[i + 1] : values[0];
    slope[i] = (v1 - values[i]) / (x1 - knots[i]);
  }
  std::size_t first_flat = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (slope[i] == 0.0) {
      first_flat = i;
      break;
    }
  }
  Clusters cl;
  const std::size_t start = first_flat == n ? 0 : first_flat + 1;
  for (std::size_t step = 0; step < n; ++step) {
    const std::size_t k = (start + step) % n;
    const double jump = slope[k] - slope[(k + n - 1) % n];
    if (jump != 0.0) {
      cl.x.push_back(k < start ? knots[k] + kTwoPi : knots[k]);
      cl.jump.push_back(jump);
    }
    if (slope[k] == 0.0) cl.close();
  }
  cl.close();
  if (first_flat == n && !cl.regular.empty()) cl.regular[0] = 0;
  return cl;
}

using Moments = std::array<double, kMaxMoment + 1>;

// Binary tree over consecutive clusters. Moments are taken about the node
// centre and scaled: m[a] = sum_j J_j (x_j - centre)^a / a!.
struct ClusterTree {
  struct Node {
    std::size_t lo = 0;
    std::size_t hi = 0;
    int left = -1;
    int right = -1;
    double center = 0.0;
    double radius = 0.0;
    double half_sin = 0.0;
    double half_cos = 0.0;
    bool regular = true;
    Moments m{};
  };

  const Clusters& cl;
  std::vector<Node> nodes;
  PairSummer direct;
  long double total = 0.0L;

  explicit ClusterTree(const Clusters& c) : cl(c) {
    nodes.reserve(2 * cl.size());
    build(0, cl.size());
  }

  int build(std::size_t lo, std::size_t hi) {
    const int id = static_cast<int>(nodes.size());
    nodes.emplace_back();
    Node node;
    node.lo = lo;
    node.hi = hi;
    const double first = cl.x[cl.offset[lo]];
    const double last = cl.x[cl.offset[hi] - 1];
    node.center = 0.5 * (first + last);
    node.radius = 0.5 * (last - first);
    node.half_sin = std::sin(0.5 * node.center);
    node.half_cos = std::cos(0.5 * node.center);
    if (hi - lo == 1) {
      node.regular = cl.regular[lo] != 0;
      const auto px = cl.xs(lo);
      const auto pj = cl.js(lo);
      for (std::size_t j = 0; j < px.size(); ++j) {
        const double xi = px[j] - node.center;
        double term = pj[j];
        for (int a = 0; a <= kMaxMoment; ++a) {
          node.m[a] += term;
          term *= xi / (a + 1);
        }
      }
      if (node.regular) node.m[0] = node.m[1] = 0.0;
    } else {
      const std::size_t mid = lo + (hi - lo) / 2;
      node.left = build(lo, mid);
      node.right = build(mid, hi);
      for (const int child : {node.left, node.right}) {
        const Node& c = nodes[static_cast<std::size_t>(child)];
        node.regular = node.regular && c.regular;
        const double shift = c.center - node.center;
        Moments powers{};
        powers[0] = 1.0;
        for (int a = 1; a <= kMaxMoment; ++a) powers[a] = powers[a - 1] * shift / a;
        for (int a = 0; a <= kMaxMoment; ++a) {
          for (int i = 0; i <= a; ++i) node.m[a] += c.m[i] * powers[a - i];
        }
      }
    }
    nodes[static_cast<std::size_t>(id)] = node;
    return id;
  }

  [[nodiscard]] static bool is_leaf(const Node& n) { return n.left < 0; }

  // Taylor expansion of the interaction of two separated regular nodes.
  static double far_field(const Node& p, const Node& q) {
    const auto& polys = cot_polys();
    const double sd = q.half_sin * p.half_cos - q.half_cos * p.half_sin;
    const double cd = q.half_cos * p.half_cos + q.half_sin * p.half_sin;
    const double cot = cd / sd;
    double acc = 0.0;
    for (int order = 2 * kMinMoment; order <= kMaxOrder; ++order) {
      const CotPoly& poly = polys[static_cast<std::size_t>(order)];
      double deriv = poly[static_cast<std::size_t>(order - 2)];
      for (int k = order - 3; k >= 0; --k) deriv = deriv * cot + poly[static_cast<std::size_t>(k)];
      double coupling = 0.0;
      for (int a = kMinMoment; a <= order - kMinMoment; ++a) {
        const double sign = a % 2 == 0 ? 1.0 : -1.0;
        coupling += sign * p.m[a] * q.m[order - a];
      }
      acc += deriv * coupling;
    }
    return acc;
  }

  void interact(int pi, int qi) {
    const Node& p = nodes[static_cast<std::size_t>(pi)];
    const Node& q = nodes[static_cast<std::size_t>(qi)];
    if (p.regular && q.regular) {
      double d = std::fabs(q.center - p.center);
      d = d >= kTwoPi ? d - kTwoPi : d;
      d = std::min(d, kTwoPi - d);
      if (kSeparation * (p.radius + q.radius) <= d) {
        total += far_field(p, q);
        return;
      }
    }
    const bool p_leaf = is_leaf(p);
    const bool q_leaf = is_leaf(q);
    if (p_leaf && q_leaf) {
      total += direct.cross(cl.xs(p.lo), cl.js(p.lo), cl.xs(q.lo), cl.js(q.lo));
    } else if (q_leaf || (!p_leaf && p.radius >= q.radius)) {
      interact(p.left, qi);
      interact(p.right, qi);
    } else {
      interact(pi, q.left);
      interact(pi, q.right);
    }
  }

  void self(int id) {
    const Node& n = nodes[static_cast<std::size_t>(id)];
    if (is_leaf(n)) {
      total += direct.self(cl.xs(n.lo), cl.js(n.lo));
      return;
    }
    self(n.left);
    self(n.right);
    interact(n.left, n.right);
  }
};

double real_seminorm_sq(std::span<const double> knots, std::span<const double> values) {
  if (knots.size() < 2) return 0.0;
  const Clusters cl = cluster_kinks(knots, values);
  if (cl.size() == 0) return 0.0;
  ClusterTree tree(cl);
  tree.self(0);
  return static_cast<double>(tree.total) / (kPi * kPi);
}

std::vector<double> component(std::span<const cplx> v, bool imaginary) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = imaginary ? v[i].imag() : v[i].real();
  return out;
}

}  // namespace

double pl_half_seminorm(const PiecewiseLinear& f) {
  if (!f.periodic()) throw std::domain_error("pl_half_seminorm: function must be periodic");
  double sq = real_seminorm_sq(f.knots(), component(f.values(), false));
  if (!f.is_real()) sq += real_seminorm_sq(f.knots(), component(f.values(), true));
  return std::sqrt(std::max(0.0, sq));
}

double pl_half_seminorm_direct(const PiecewiseLinear& f) {
  if (!f.periodic()) throw std::domain_error("pl_half_seminorm_direct: function must be periodic");
  const auto knots = f.knots();
  const std::vector<cplx> jumps = f.slope_jumps();
  std::vector<double> x;
  std::vector<double> jr;
  std::vector<double> ji;
  for (std::size_t j = 0; j < knots.size(); ++j) {
    if (jumps[j] == cplx{}) continue;
    x.push_back(knots[j]);
    jr.push_back(jumps[j].real());
    ji.push_back(jumps[j].imag());
  }
  // Re(J_i conj J_j) = re_i re_j + im_i im_j
  PairSummer direct;
  const long double total = direct.self(x, jr) + direct.self(x, ji);
  const double sq = static_cast<double>(total) / (kPi * kPi);
  return std::sqrt(std::max(0.0, sq));
}

// ----------------------------------------------------- moduli of continuity

double modulus_of_continuity(const PiecewiseLinear& f, double delta) {
  if (!f.periodic()) throw std::domain_error("modulus_of_continuity: function must be periodic");
  if (delta < 0.0) throw std::domain_error("modulus_of_continuity: negative delta");
  const std::size_t n = f.size();
  if (delta == 0.0 || n == 1) return 0.0;
  const double d = std::min(delta, kPi);
  const auto x = f.knots();
  const auto v = f.values();

  double best_sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t step = 1; step < n; ++step) {
      std::size_t j = i + step;
      double offset = 0.0;
      if (j < n) {
        offset = x[j] - x[i];
      } else {
        j -= n;
        offset = x[j] + kTwoPi - x[i];
      }
      if (offset > d) break;
      best_sq = std::max(best_sq, std::norm(v[i] - v[j]));
    }
    best_sq = std::max(best_sq, std::norm(v[i] - f(x[i] + d)));
    best_sq = std::max(best_sq, std::norm(v[i] - f(x[i] - d)));
  }
  return std::sqrt(best_sq);
}

LipReport lip_check(const PiecewiseLinear& f, const Modulus& omega, std::span<const double> deltas) {
  if (deltas.empty()) throw std::invalid_argument("lip_check: empty delta grid");
  LipReport r;
  for (double delta : deltas) {
    if (!(delta > 0.0 && delta <= kTwoPi)) {
      throw std::invalid_argument("lip_check: delta outside (0, 2pi]");
    }
    const double w = omega(delta);
    if (w <= 0.0) throw std::domain_error("lip_check: omega(delta) must be positive");
    const double ratio = modulus_of_continuity(f, delta) / w;
    r.deltas.push_back(delta);
    r.ratios.push_back(ratio);
    r.max_ratio = std::max(r.max_ratio, ratio);
  }
  return r;
}

std::vector<double> default_delta_grid() {
  std::vector<double> g;
  for (int m = 1; m <= 20; ++m) g.push_back(std::ldexp(kTwoPi, -m));
  return g;
}

EquivalenceEstimate equivalence_scan(std::span<const SpectrumCoeffs> test_set, std::size_t n) {
  if (test_set.empty()) throw std::invalid_argument("equivalence_scan: empty test set");
  EquivalenceEstimate e;
  e.ratio_min = std::numeric_limits<double>::infinity();
  for (const SpectrumCoeffs& c : test_set) {
    const double spectral = sobolev_spectral(c, 0.5);
    if (spectral == 0.0) {
      throw std::invalid_argument("equivalence_scan: constant test function has zero seminorm");
    }
    const double ratio = sobolev_integral(synthesize(c, n)) / spectral;
    e.ratio_min = std::min(e.ratio_min, ratio);
    e.ratio_max = std::max(e.ratio_max, ratio);
    ++e.sample_count;
  }
  return e;
}

}  // namespace sobolab
