#pragma once

// Verification suites for the construction, the obstruction search over
// homeomorphisms, the lacunary fixture, and a flat key=value config format.

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sobolab/construction.hpp"
#include "sobolab/homeo.hpp"
#include "sobolab/seminorm.hpp"

namespace sobolab {

struct SuiteResult {
  std::string name;
  bool passed = false;
  bool warning = false;
  std::string detail;   // one-line summary of what was measured
  std::string witness;  // first failing input, if any
  double seconds = 0.0;
};

// Sequence invariants for blocks 1..max_blocks.
SuiteResult sequence_suite(const Modulus& omega, int max_blocks);

// |tent_I(t1) - tent_I(t2)| <= (2/|I|) |t1 - t2| on random triples.
SuiteResult triangle_bound_suite(std::size_t trials, std::uint64_t seed);

// omega(u, delta) and omega(v, delta) against constant * omega(delta) on the
// default delta grid.
SuiteResult lipschitz_suite(const Modulus& omega, int blocks, double constant = 8.0);

enum class Mutation { none, halve_v_weights };

// Per-interval Stieltjes bounds at every truncation index, for systems of
// 1..blocks blocks, and the growth of the best bound per added block.
SuiteResult stieltjes_suite(const Modulus& omega, int blocks, Mutation mutation = Mutation::none);

// Duality inequality and the integration-by-parts identity on random
// (trigonometric polynomial, PL function) pairs.
SuiteResult duality_suite(std::size_t trials, std::uint64_t seed, int max_degree = 64,
                         std::size_t max_knots = 64);

/// sobolev_integral / sobolev_spectral for e^{ikt}, k = 1..kmax, on n points.
std::vector<double> harmonic_ratios(int kmax, std::size_t n);

// harmonic_ratios spread: max / min < 4.
SuiteResult equivalence_suite(int kmax, std::size_t n);

// Variation, round trip and Stieltjes invariance under random homeomorphisms.
SuiteResult superposition_suite(std::size_t pairs, std::uint64_t seed, std::size_t knots = 32);

struct LacunaryReport {
  int terms = 0;
  double seminorm_sq = 0.0;     // spectral W^{1/2} seminorm squared
  double lip_half_ratio = 0.0;  // max over dyadic shifts of osc / sqrt(shift)
};

/// sum_{k=0}^{K} 2^{-k/2} e^{i 2^k t}. K is limited to 0..16.
LacunaryReport lacunary_fixture(int terms);

SuiteResult lacunary_suite(int max_terms);

struct VerifyConfig {
  Modulus omega = Modulus::power(1.0 / 3.0);
  int blocks = 4;
  std::size_t knots = 32;
  std::uint64_t seed = 7;
  std::uint64_t seed_alt = 42;
  Mutation mutation = Mutation::none;
};

struct VerifyReport {
  std::vector<SuiteResult> suites;
  [[nodiscard]] bool passed() const;
};

/// Every suite at desk-scale sizes.
VerifyReport verify_all(const VerifyConfig& config);

struct ObstructionConfig {
  Modulus omega = Modulus::power(1.0 / 3.0);
  std::vector<int> blocks{1, 2, 3, 4, 5, 6};
  std::size_t knots = 32;
  std::size_t budget = 2000;
  std::uint64_t seed = 7;
  int restarts = 4;
  double start_roughness = 1.0;
  double initial_step = 0.5;
  std::size_t audit_stride = 100;  // re-check Stieltjes invariance on every 100th evaluation
  bool exploratory = false;
};

struct ObstructionRecord {
  int blocks = 0;
  std::size_t triangles = 0;
  std::vector<std::int64_t> n_grid;
  std::vector<double> stieltjes;   // int v du_n
  std::vector<double> certified;   // sum of (2/9) w_k^2 over active k
  double sup_lower_bound = 0.0;    // max_n (1/2pi) int v du_n
  double certified_bound = 0.0;    // max_n (1/2pi) certified
  std::vector<double> identity_products;
  Homeomorphism best_homeo;
  std::vector<double> achieved_products;  // |v o h| |u_n o h| at best_homeo
  double min_product = 0.0;               // max over n of achieved_products
  std::size_t evals = 0;
  bool budget_exhausted = false;
  std::size_t violations = 0;      // evaluated h with a failed per-n inequality
  std::size_t audited = 0;
  std::size_t audit_failures = 0;
  double audit_max_error = 0.0;
  double seconds = 0.0;
};

/// For each block count: builds the system, computes the Stieltjes lower
/// bounds over the truncation grid, and minimizes max_n |v o h| |u_n o h|
/// over from_increments homeomorphisms with restarted Nelder-Mead. Every
/// evaluated h is checked against the per-n inequality.
std::vector<ObstructionRecord> run_obstruction(const ObstructionConfig& config);

// No violations, strictly increasing bound with the per-block increment,
// best product above the bound, clean audits.
SuiteResult obstruction_suite(const std::vector<ObstructionRecord>& records);

/// Flat `key = value` lines; `#` starts a comment. Throws on malformed lines.
std::map<std::string, std::string> parse_config(const std::string& text);
std::map<std::string, std::string> load_config(const std::string& path);

}  // namespace sobolab
