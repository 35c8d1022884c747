// Acceptance run: one line per criterion, exit status 1 if any fails.

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "sobolab/construction.hpp"
#include "sobolab/experiments.hpp"

using namespace sobolab;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<Outcome()> run;
};

std::string join(const SuiteResult& s) {
  std::string out = s.detail;
  if (!s.witness.empty()) out += " [witness: " + s.witness + "]";
  return out;
}

// w(k) = int_0^{2pi} 4 sin^2(k theta/2) / theta^2 d theta.
double difference_weight(int k) {
  using boost::math::quadrature::gauss_kronrod;
  const auto f = [k](double th) {
    if (th == 0.0) return static_cast<double>(k) * k;
    const double s = std::sin(0.5 * k * th);
    return 4.0 * s * s / (th * th);
  };
  double total = 0.0;
  const int pieces = 4 * k;
  for (int i = 0; i < pieces; ++i) {
    total += gauss_kronrod<double, 31>::integrate(f, kTwoPi * i / pieces, kTwoPi * (i + 1) / pieces, 5, 1e-14);
  }
  return total;
}

const Modulus kThird = Modulus::power(1.0 / 3.0);

Outcome sequence_invariants() {
  const SuiteResult s = sequence_suite(kThird, 8);
  // Recompute the cube-root blocks by hand: eps_j = 2^{-3j}, n_j = 2^{2j-1},
  // omega(eps_j)^2 = 2^{-2j}, so every block sums to exactly 1/2.
  bool dyadic = true;
  double total_length = 0.0;
  const DeltaSequence d = build_delta_sequence(kThird, 8);
  for (int j = 1; j <= 8; ++j) {
    const double eps = std::ldexp(1.0, -3 * j);
    const auto n = std::int64_t{1} << (2 * j - 1);
    dyadic = dyadic && d.epsilons[j - 1] == eps && d.block_sizes[j - 1] == n;
    dyadic = dyadic && static_cast<double>(n) * std::ldexp(1.0, -2 * j) == 0.5;
    double block = 0.0;
    for (std::size_t k = d.prefix_count(j - 1); k < d.prefix_count(j); ++k) block += d.weights[k] * d.weights[k];
    dyadic = dyadic && std::fabs(block - 0.5) <= 1e-12;
    total_length += static_cast<double>(n) * eps;
  }
  dyadic = dyadic && total_length <= 1.0;
  return {s.passed && dyadic, join(s) + (dyadic ? ", dyadic recomputation agrees" : ", dyadic recomputation DISAGREES")};
}

Outcome triangle_bound() {
  const SuiteResult s = triangle_bound_suite(100000, 7);
  return {s.passed, join(s)};
}

Outcome lipschitz_constants() {
  const SuiteResult s = lipschitz_suite(kThird, 6, 8.0);
  return {s.passed, join(s)};
}

Outcome stieltjes_bounds() {
  const SuiteResult s = stieltjes_suite(kThird, 6);
  return {s.passed, join(s)};
}

Outcome duality_audit() {
  const SuiteResult s = duality_suite(200, 7, 64, 64);
  return {s.passed, join(s)};
}

Outcome seminorm_equivalence() {
  const int kmax = 64;
  const auto ratios = harmonic_ratios(kmax, std::size_t{1} << 16);
  double worst = 0.0;
  double oracle_lo = 1e300;
  double oracle_hi = 0.0;
  for (int k = 1; k <= kmax; ++k) {
    const double oracle = std::sqrt(kTwoPi * difference_weight(k) / k);
    oracle_lo = std::min(oracle_lo, oracle);
    oracle_hi = std::max(oracle_hi, oracle);
    worst = std::max(worst, std::fabs(ratios[k - 1] / oracle - 1.0));
  }
  const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
  const bool spread_ok = *hi / *lo < 4.0;
  const bool interval_ok = std::fabs(*lo / oracle_lo - 1.0) <= 0.01 && std::fabs(*hi / oracle_hi - 1.0) <= 0.01;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "ratios in [%.6f, %.6f] (spread %.4f), quadrature oracle [%.6f, %.6f], max per-k deviation %.2e",
                *lo, *hi, *hi / *lo, oracle_lo, oracle_hi, worst);
  return {spread_ok && interval_ok && worst <= 0.01, buf};
}

Outcome superposition() {
  const SuiteResult s = superposition_suite(100, 42, 32);
  return {s.passed, join(s)};
}

Outcome lacunary() {
  const SuiteResult s = lacunary_suite(12);
  bool linear = true;
  for (int k = 0; k <= 12; ++k) linear = linear && std::fabs(lacunary_fixture(k).seminorm_sq - (k + 1)) <= 1e-12;
  return {s.passed && linear, join(s)};
}

Outcome obstruction() {
  ObstructionConfig cfg;
  cfg.omega = kThird;
  cfg.blocks = {1, 2, 3, 4, 5, 6};
  cfg.knots = 32;
  cfg.budget = 2000;
  cfg.seed = 7;
  const auto records = run_obstruction(cfg);
  SuiteResult s = obstruction_suite(records);
  bool identity_ok = true;
  bool budget_ok = true;
  for (const auto& r : records) {
    budget_ok = budget_ok && r.evals <= cfg.budget;
    for (std::size_t i = 0; i < r.n_grid.size(); ++i) {
      identity_ok = identity_ok && r.identity_products[i] * (1 + 1e-8) >= r.stieltjes[i] / kTwoPi;
    }
  }
  std::string detail = join(s);
  for (const auto& r : records) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "; J=%d bound %.6f best %.6f", r.blocks, r.sup_lower_bound, r.min_product);
    detail += buf;
  }
  return {s.passed && identity_ok && budget_ok, detail};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "sequence invariants, J=1..8", 1.0, sequence_invariants},
      {2, "tent Lipschitz bound, 1e5 triples", 1.0, triangle_bound},
      {3, "Lipschitz constants of u, v at J=6", 5.0, lipschitz_constants},
      {4, "per-interval Stieltjes bounds, J=1..6", 5.0, stieltjes_bounds},
      {5, "duality audit, 200 pairs", 30.0, duality_audit},
      {6, "seminorm equivalence, k=1..64, N=2^16", 60.0, seminorm_equivalence},
      {7, "superposition exactness, 100 pairs", 10.0, superposition},
      {8, "lacunary fixture, K<=12", 1.0, lacunary},
      {9, "obstruction experiment, J=1..6", 600.0, obstruction},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds < c.limit_seconds;
    const bool ok = o.passed && in_time;
    if (!ok) ++failures;
    std::printf("criterion %d %s: %s  (%.3f s, limit %.0f s%s)  %s\n", c.id, c.name, ok ? "PASS" : "FAIL",
                seconds, c.limit_seconds, in_time ? "" : ", TOO SLOW", o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
