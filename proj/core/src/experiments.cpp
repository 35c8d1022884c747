#include "sobolab/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "sobolab/fourier.hpp"
#include "sobolab/nelder_mead.hpp"
#include "sobolab/stieltjes.hpp"

namespace sobolab {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double x, int digits = 6) {
  std::ostringstream os;
  os.precision(digits);
  os << x;
  return os.str();
}

std::mt19937_64 seeded(std::uint64_t seed, std::uint64_t a = 0, std::uint64_t b = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)};
  return std::mt19937_64(seq);
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * unit_uniform(rng);
}

std::size_t uniform_count(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(unit_uniform(rng) * static_cast<double>(hi - lo + 1));
}

// Real periodic PL function with `m` distinct random knots and values in [-1, 1].
PiecewiseLinear random_pl(std::mt19937_64& rng, std::size_t m) {
  std::vector<double> knots(m);
  for (double& t : knots) t = kTwoPi * unit_uniform(rng);
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
  std::vector<double> values(knots.size());
  for (double& v : values) v = uniform(rng, -1.0, 1.0);
  return PiecewiseLinear::from_real(std::move(knots), values);
}

SpectrumCoeffs random_trig(std::mt19937_64& rng, int degree) {
  SpectrumCoeffs c(degree);
  for (int k = -degree; k <= degree; ++k) {
    c.at(k) = cplx(uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0));
  }
  return c;
}

SuiteResult finish(SuiteResult r, Clock::time_point start) {
  r.seconds = seconds_since(start);
  return r;
}

TriangleSystem system_for(const Modulus& omega, int blocks, bool exploratory) {
  const DeltaSequence d = build_delta_sequence(omega, blocks, exploratory);
  return place_intervals(d, d.size());
}

}  // namespace

SuiteResult sequence_suite(const Modulus& omega, int max_blocks) {
  const auto start = Clock::now();
  SuiteResult r;
  r.name = "sequence";
  r.passed = true;
  std::size_t total = 0;
  for (int j = 1; j <= max_blocks; ++j) {
    const DeltaSequence d = build_delta_sequence(omega, j);
    total = d.size();
    const auto issues = check_delta_sequence(d, omega);
    if (!issues.empty() && r.passed) {
      r.passed = false;
      r.witness = "J=" + std::to_string(j) + ": " + issues.front();
    }
  }
  r.detail = "blocks 1.." + std::to_string(max_blocks) + ", " + std::to_string(total) +
             " lengths at the largest J";
  return finish(r, start);
}

SuiteResult triangle_bound_suite(std::size_t trials, std::uint64_t seed) {
  const auto start = Clock::now();
  SuiteResult r;
  r.name = "triangle_bound";
  std::mt19937_64 rng = seeded(seed);
  std::size_t violations = 0;
  double worst = 0.0;
  for (std::size_t i = 0; i < trials; ++i) {
    double a = kTwoPi * unit_uniform(rng);
    double b = kTwoPi * unit_uniform(rng);
    if (a > b) std::swap(a, b);
    if (!(a > 0.0) || !(a < b)) continue;
    const CircleInterval interval(a, b);
    const PiecewiseLinear tent = triangle(interval);
    const double t1 = kTwoPi * unit_uniform(rng);
    const double t2 = kTwoPi * unit_uniform(rng);
    const double lhs = std::fabs(tent.real_at(t1) - tent.real_at(t2));
    const double rhs = 2.0 / interval.length() * std::fabs(t1 - t2);
    worst = std::max(worst, lhs - rhs);
    if (lhs > rhs + 1e-12) {
      if (violations == 0) {
        r.witness = "I=[" + fmt(a, 17) + ", " + fmt(b, 17) + "] t1=" + fmt(t1, 17) +
                    " t2=" + fmt(t2, 17);
      }
      ++violations;
    }
  }
  r.passed = violations == 0;
  r.detail = std::to_string(trials) + " triples, " + std::to_string(violations) +
             " violations, max excess " + fmt(worst, 3);
  return finish(r, start);
}

SuiteResult lipschitz_suite(const Modulus& omega, int blocks, double constant) {
  const auto start = Clock::now();
  SuiteResult r;
  r.name = "lipschitz";
  const TriangleSystem sys = build_system(omega, blocks);
  const auto deltas = default_delta_grid();
  const LipReport lu = lip_check(build_u(sys), omega, deltas);
  const LipReport lv = lip_check(build_v(sys), omega, deltas);
  r.passed = lu.within(constant) && lv.within(constant);
  r.detail = "J=" + std::to_string(blocks) + " max ratio u " + fmt(lu.max_ratio) + ", v " +
             fmt(lv.max_ratio) + " (limit " + fmt(constant) + ")";
  if (!r.passed) r.witness = lu.within(constant) ? "v" : "u";
  return finish(r, start);
}

SuiteResult stieltjes_suite(const Modulus& omega, int blocks, Mutation mutation) {
  const auto start = Clock::now();
  SuiteResult r;
  r.name = mutation == Mutation::none ? "stieltjes" : "stieltjes_mutated";
  r.passed = true;
  if (blocks <= 0) {
    r.warning = true;
    r.detail = "no intervals (K = 0); nothing to check";
    return finish(r, start);
  }
  double previous_exact = 0.0;
  double previous_certified = 0.0;
  double min_increment = std::numeric_limits<double>::infinity();
  std::size_t checks = 0;
  for (int j = 1; j <= blocks; ++j) {
    const TriangleSystem sys = build_system(omega, j);
    const PiecewiseLinear u = build_u(sys);
    const PiecewiseLinear v =
        mutation == Mutation::none ? build_v(sys) : build_v(sys.scaled_weights(0.5));
    double best_exact = 0.0;
    double best_certified = 0.0;
    for (const std::int64_t n : truncation_grid(sys)) {
      const StieltjesReport rep = stieltjes_check(sys, u, v, n);
      ++checks;
      best_exact = std::max(best_exact, rep.value);
      best_certified = std::max(best_certified, rep.lower_bound);
      if (!rep.holds() && r.passed) {
        r.passed = false;
        std::ostringstream os;
        os << "J=" << j << " n=" << n;
        if (!rep.violations.empty()) {
          const std::size_t k = rep.violations.front();
          os << " k=" << k + 1 << " contribution " << fmt(rep.per_interval[k], 10) << " < "
             << fmt(rep.bound_terms[k], 10);
        } else if (!rep.negative.empty()) {
          os << " k=" << rep.negative.front() + 1 << " negative contribution";
        } else {
          os << " total " << fmt(rep.value, 10) << " < " << fmt(rep.lower_bound, 10);
        }
        r.witness = os.str();
      }
    }
    const double inc_exact = best_exact - previous_exact;
    const double inc_certified = best_certified - previous_certified;
    min_increment = std::min({min_increment, inc_exact, inc_certified});
    if ((inc_exact < 1.0 / 9.0 - 1e-10 || inc_certified < 1.0 / 9.0 - 1e-10) && r.passed) {
      r.passed = false;
      r.witness = "J=" + std::to_string(j) + " sup increment " + fmt(std::min(inc_exact, inc_certified), 12);
    }
    previous_exact = best_exact;
    previous_certified = best_certified;
  }
  r.detail = std::to_string(checks) + " (J, n) checks, sup " + fmt(previous_exact, 10) +
             ", min increment " + fmt(min_increment, 12);
  return finish(r, start);
}

SuiteResult duality_suite(std::size_t trials, std::uint64_t seed, int max_degree,
                         std::size_t max_knots) {
  const auto start = Clock::now();
  SuiteResult r;
  r.name = "duality";
  std::mt19937_64 rng = seeded(seed);
  std::size_t violations = 0;
  std::size_t tail_warnings = 0;
  double worst_ratio = 0.0;
  double worst_ibp = 0.0;
  for (std::size_t i = 0; i < trials; ++i) {
    const int degree = static_cast<int>(uniform_count(rng, 1, static_cast<std::size_t>(max_degree)));
    const SpectrumCoeffs x = random_trig(rng, degree);
    const PiecewiseLinear y = random_pl(rng, uniform_count(rng, 2, max_knots));
    const DualityReport rep = duality_check(x, y);
    if (rep.tail_warning) ++tail_warnings;
    if (rep.rhs > 0.0) worst_ratio = std::max(worst_ratio, rep.lhs / rep.rhs);
    if (!rep.holds) {
      if (violations == 0) r.witness = "trial " + std::to_string(i);
      ++violations;
    }
    for (int k = -max_degree; k <= max_degree; ++k) {
      const cplx direct = rs_harmonic(k, y);
      const cplx by_parts = -cplx(0.0, k) * pl_coeff(y, -k);
      worst_ibp = std::max(worst_ibp, std::abs(direct - by_parts));
    }
  }
  r.passed = violations == 0 && worst_ibp <= 1e-10;
  r.warning = tail_warnings > 0;
  r.detail = std::to_string(trials) + " pairs, " + std::to_string(violations) +
             " violations, max lhs/rhs " + fmt(worst_ratio) + ", by-parts error " +
             fmt(worst_ibp, 3) + ", " + std::to_string(tail_warnings) +
             " pairs with a loose spectral tail (truncated norm only lowers the right side)";
  if (r.witness.empty() && worst_ibp > 1e-10) r.witness = "by-parts error " + fmt(worst_ibp, 3);
  return finish(r, start);
}

std::vector<double> harmonic_ratios(int kmax, std::size_t n) {
  std::vector<double> ratios;
  ratios.reserve(static_cast<std::size_t>(std::max(kmax, 0)));
  for (int k = 1; k <= kmax; ++k) {
    const SpectrumCoeffs c = SpectrumCoeffs::harmonic(k);
    ratios.push_back(sobolev_integral(synthesize(c, n)) / sobolev_spectral(c, 0.5));
  }
  return ratios;
}

SuiteResult equivalence_suite(int kmax, std::size_t n) {
  const auto start = Clock::now();
  SuiteResult r;
  r.name = "equivalence";
  const auto ratios = harmonic_ratios(kmax, n);
  const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
  r.passed = !ratios.empty() && *hi / *lo < 4.0;
  r.detail = "k=1.." + std::to_string(kmax) + " ratio in [" + fmt(*lo) + ", " + fmt(*hi) +
             "], spread " + fmt(*hi / *lo);
  return finish(r, start);
}

SuiteResult superposition_suite(std::size_t pairs, std::uint64_t seed, std::size_t knots) {
  const auto start = Clock::now();
  SuiteResult r;
  r.name = "superposition";
  std::mt19937_64 rng = seeded(seed);
  double worst_tv = 0.0;
  double worst_trip = 0.0;
  double worst_rs = 0.0;
  for (std::size_t i = 0; i < pairs; ++i) {
    const PiecewiseLinear f = random_pl(rng, uniform_count(rng, 2, 64));
    const PiecewiseLinear g = random_pl(rng, uniform_count(rng, 2, 64));
    const Homeomorphism h = Homeomorphism::random(knots, uniform(rng, 0.5, 2.0), rng);

    const PiecewiseLinear fh = superpose(f, h);
    const double tv = total_variation(f);
    worst_tv = std::max(worst_tv, std::fabs(total_variation(fh) - tv) / std::max(1.0, tv));

    const PiecewiseLinear back = superpose(fh, h.inverse());
    for (std::size_t j = 0; j < f.size(); ++j) {
      worst_trip = std::max(worst_trip, std::abs(back(f.knots()[j]) - f.values()[j]));
    }

    const cplx plain = rs_integral(f, g);
    const cplx moved = rs_integral(fh, superpose(g, h));
    const double scale = std::max(1.0, f.max_abs() * total_variation(g));
    const double err = std::abs(plain - moved) / scale;
    if (err > worst_rs) worst_rs = err;
    if (r.witness.empty() && (err > 1e-9 || worst_trip > 1e-10 || worst_tv > 1e-10)) {
      r.witness = "pair " + std::to_string(i);
    }
  }
  r.passed = worst_tv <= 1e-10 && worst_trip <= 1e-10 && worst_rs <= 1e-9;
  r.detail = std::to_string(pairs) + " pairs, variation " + fmt(worst_tv, 3) + ", round trip " +
             fmt(worst_trip, 3) + ", Stieltjes " + fmt(worst_rs, 3);
  return finish(r, start);
}

LacunaryReport lacunary_fixture(int terms) {
  if (terms < 0 || terms > 16) {
    throw std::out_of_range("lacunary_fixture: K must lie in 0..16, got " + std::to_string(terms));
  }
  const int kmax = 1 << terms;
  SpectrumCoeffs c(kmax);
  for (int k = 0; k <= terms; ++k) c.at(1 << k) = 1.0 / std::sqrt(std::ldexp(1.0, k));

  LacunaryReport rep;
  rep.terms = terms;
  const double norm = sobolev_spectral(c, 0.5);
  rep.seminorm_sq = norm * norm;

  const std::size_t n = std::size_t{1} << std::max(terms + 4, 8);
  const GridFunction g = synthesize(c, n);
  double osc = 0.0;
  for (std::size_t shift = 1; shift <= n / 2; shift *= 2) {
    for (std::size_t j = 0; j < n; ++j) {
      osc = std::max(osc, std::abs(g.samples[(j + shift) % n] - g.samples[j]));
    }
    const double delta = kTwoPi * static_cast<double>(shift) / static_cast<double>(n);
    rep.lip_half_ratio = std::max(rep.lip_half_ratio, osc / std::sqrt(delta));
  }
  return rep;
}

SuiteResult lacunary_suite(int max_terms) {
  const auto start = Clock::now();
  SuiteResult r;
  r.name = "lacunary";
  r.passed = true;
  double worst = 0.0;
  double ratio = 0.0;
  for (int k = 0; k <= max_terms; ++k) {
    const LacunaryReport rep = lacunary_fixture(k);
    const double err = std::fabs(rep.seminorm_sq - (k + 1));
    worst = std::max(worst, err);
    ratio = std::max(ratio, rep.lip_half_ratio);
    if (err > 1e-12 && r.passed) {
      r.passed = false;
      r.witness = "K=" + std::to_string(k) + " seminorm^2 " + fmt(rep.seminorm_sq, 17);
    }
  }
  r.detail = "K=0.." + std::to_string(max_terms) + ", |seminorm^2 - (K+1)| <= " + fmt(worst, 3) +
             ", Lip-1/2 ratio <= " + fmt(ratio, 4) + " while the seminorm grows linearly";
  return finish(r, start);
}

bool VerifyReport::passed() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.passed; });
}

VerifyReport verify_all(const VerifyConfig& config) {
  VerifyReport out;
  out.suites.push_back(sequence_suite(config.omega, std::max(config.blocks, 1)));
  out.suites.push_back(triangle_bound_suite(100000, config.seed));
  if (config.blocks > 0) {
    out.suites.push_back(lipschitz_suite(config.omega, config.blocks));
  }
  out.suites.push_back(stieltjes_suite(config.omega, config.blocks, config.mutation));
  out.suites.push_back(duality_suite(200, config.seed));
  out.suites.push_back(equivalence_suite(64, std::size_t{1} << 16));
  out.suites.push_back(superposition_suite(100, config.seed_alt, config.knots));
  out.suites.push_back(lacunary_suite(12));
  return out;
}

namespace {

// max_n |v o h| |u_n o h| for one candidate h, plus the per-n inequality check.
class ProductObjective {
 public:
  ProductObjective(const PiecewiseLinear& v, std::vector<PiecewiseLinear> truncations,
                   std::vector<double> stieltjes)
      : v_(v), truncations_(std::move(truncations)), stieltjes_(std::move(stieltjes)) {}

  std::vector<double> products(const Homeomorphism& h) const {
    const double vn = pl_half_seminorm(superpose(v_, h));
    std::vector<double> out;
    out.reserve(truncations_.size());
    for (const auto& un : truncations_) out.push_back(vn * pl_half_seminorm(superpose(un, h)));
    return out;
  }

  // Number of n with (1/2pi)|int v du_n| above the product (relative 1e-8).
  std::size_t failures(const std::vector<double>& products) const {
    std::size_t bad = 0;
    for (std::size_t i = 0; i < products.size(); ++i) {
      const double lhs = std::fabs(stieltjes_[i]) / kTwoPi;
      if (lhs > products[i] * (1.0 + 1e-8)) ++bad;
    }
    return bad;
  }

  // Largest relative change of int v du_n under h, recomputed from scratch.
  double audit(const Homeomorphism& h) const {
    const PiecewiseLinear vh = superpose(v_, h);
    double worst = 0.0;
    for (std::size_t i = 0; i < truncations_.size(); ++i) {
      const double moved = rs_integral(vh, superpose(truncations_[i], h)).real();
      worst = std::max(worst, std::fabs(moved - stieltjes_[i]) / std::max(1.0, std::fabs(stieltjes_[i])));
    }
    return worst;
  }

 private:
  const PiecewiseLinear& v_;
  std::vector<PiecewiseLinear> truncations_;
  std::vector<double> stieltjes_;
};

}  // namespace

std::vector<ObstructionRecord> run_obstruction(const ObstructionConfig& config) {
  if (config.knots < 2) throw std::invalid_argument("run_obstruction: need at least 2 knots");
  if (config.restarts < 1) throw std::invalid_argument("run_obstruction: need at least 1 restart");
  if (config.budget < static_cast<std::size_t>(config.restarts)) {
    throw std::invalid_argument("run_obstruction: budget smaller than the number of restarts");
  }
  std::vector<ObstructionRecord> records;
  for (const int blocks : config.blocks) {
    const auto start = Clock::now();
    ObstructionRecord rec;
    rec.blocks = blocks;
    const TriangleSystem sys = system_for(config.omega, blocks, config.exploratory);
    rec.triangles = sys.size();
    rec.n_grid = truncation_grid(sys);

    const PiecewiseLinear u = build_u(sys);
    const PiecewiseLinear v = build_v(sys);
    std::vector<PiecewiseLinear> truncations;
    for (const std::int64_t n : rec.n_grid) {
      const StieltjesReport rep = stieltjes_check(sys, u, v, n);
      rec.stieltjes.push_back(rep.value);
      rec.certified.push_back(rep.lower_bound);
      rec.sup_lower_bound = std::max(rec.sup_lower_bound, rep.value / kTwoPi);
      rec.certified_bound = std::max(rec.certified_bound, rep.lower_bound / kTwoPi);
      truncations.push_back(truncate_un(u, n));
    }
    const ProductObjective objective(v, std::move(truncations), rec.stieltjes);
    rec.identity_products = objective.products(Homeomorphism());

    double best = std::numeric_limits<double>::infinity();
    std::vector<double> best_raw(config.knots, 0.0);
    const Objective f = [&](std::span<const double> raw) {
      const Homeomorphism h = Homeomorphism::from_increments(raw);
      const auto p = objective.products(h);
      if (objective.failures(p) > 0) ++rec.violations;
      if (config.audit_stride > 0 && (rec.evals + 1) % config.audit_stride == 0) {
        const double err = objective.audit(h);
        ++rec.audited;
        rec.audit_max_error = std::max(rec.audit_max_error, err);
        if (err > 1e-9) ++rec.audit_failures;
      }
      ++rec.evals;
      return *std::max_element(p.begin(), p.end());
    };

    const auto restarts = static_cast<std::size_t>(config.restarts);
    for (std::size_t rs = 0; rs < restarts; ++rs) {
      std::vector<double> x0(config.knots);
      std::mt19937_64 rng = seeded(config.seed, static_cast<std::uint64_t>(blocks), rs);
      for (double& x : x0) x = config.start_roughness * (2.0 * unit_uniform(rng) - 1.0);
      NelderMeadOptions opt;
      opt.budget = config.budget / restarts + (rs < config.budget % restarts ? 1 : 0);
      opt.initial_step = config.initial_step;
      const NelderMeadResult res = nelder_mead(f, x0, opt);
      rec.budget_exhausted = rec.budget_exhausted || res.budget_exhausted;
      if (res.value < best) {
        best = res.value;
        best_raw = res.x;
      }
    }
    rec.best_homeo = Homeomorphism::from_increments(best_raw);
    rec.achieved_products = objective.products(rec.best_homeo);
    rec.min_product = *std::max_element(rec.achieved_products.begin(), rec.achieved_products.end());
    rec.seconds = seconds_since(start);
    records.push_back(std::move(rec));
  }
  return records;
}

SuiteResult obstruction_suite(const std::vector<ObstructionRecord>& records) {
  SuiteResult r;
  r.name = "obstruction";
  r.passed = !records.empty();
  const double step = (1.0 / 9.0) / kTwoPi;
  double previous = 0.0;
  int previous_blocks = 0;
  std::size_t evals = 0;
  double margin = std::numeric_limits<double>::infinity();
  const auto fail = [&](const std::string& why) {
    if (r.passed) r.witness = why;
    r.passed = false;
  };
  for (const auto& rec : records) {
    const std::string tag = "J=" + std::to_string(rec.blocks) + ": ";
    evals += rec.evals;
    r.seconds += rec.seconds;
    if (rec.violations > 0) fail(tag + std::to_string(rec.violations) + " evaluations broke the inequality");
    if (rec.audit_failures > 0) fail(tag + "Stieltjes audit error " + fmt(rec.audit_max_error, 3));
    const double increment = rec.sup_lower_bound - previous;
    if (increment < (rec.blocks - previous_blocks) * step - 1e-10) {
      fail(tag + "bound increment " + fmt(increment, 12));
    }
    if (rec.min_product < rec.sup_lower_bound) {
      fail(tag + "best product " + fmt(rec.min_product, 12) + " below bound");
    }
    margin = std::min(margin, rec.min_product - rec.sup_lower_bound);
    previous = rec.sup_lower_bound;
    previous_blocks = rec.blocks;
  }
  r.detail = std::to_string(records.size()) + " block counts, " + std::to_string(evals) +
             " evaluations, final bound " + fmt(previous, 10) + ", min product - bound " +
             fmt(margin, 6);
  return r;
}

std::map<std::string, std::string> parse_config(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  const auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return std::string();
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
    }
    std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw std::invalid_argument("config line " + std::to_string(lineno) + ": empty key");
    out[std::move(key)] = trim(line.substr(eq + 1));
  }
  return out;
}

std::map<std::string, std::string> load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace sobolab
