#pragma once

// The tent-sum counterexample: a block sequence of small interval lengths
// (delta_k), the interval system built from it, the functions u, v,
// f = u + iv, and the truncations max(u, 1/n).

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "sobolab/circle.hpp"
#include "sobolab/seminorm.hpp"

namespace sobolab {

/// Block sequence for a modulus omega. Block j (1-based) repeats the length
/// eps_j exactly n_j times; the flattened lengths are `deltas`.
///
/// For a valid sequence:
///   0 < eps_j < 2^{-(j+1)},  omega(eps_j)^2 / eps_j >= 2^j,
///   1/(2^{j+1} eps_j) <= n_j < 1/(2^j eps_j),
/// so each block contributes n_j omega(eps_j)^2 >= 1/2 and sum(deltas) <= 1.
struct DeltaSequence {
  std::vector<double> epsilons;            // eps_j, index j - 1
  std::vector<std::int64_t> block_sizes;   // n_j
  std::vector<std::int64_t> block_starts;  // N_0 = 1, N_j = N_{j-1} + n_j
  std::vector<double> deltas;              // flattened delta_k, k = 1..N_J - 1
  std::vector<double> weights;             // omega(delta_k)
  bool exploratory = false;                // built outside the valid range of omega

  [[nodiscard]] int blocks() const { return static_cast<int>(epsilons.size()); }
  [[nodiscard]] std::size_t size() const { return deltas.size(); }
  /// 1-based block index of flattened position k (0-based).
  [[nodiscard]] int block_of(std::size_t k) const;
  /// Number of flattened entries in blocks 1..j.
  [[nodiscard]] std::size_t prefix_count(int j) const;
};

/// Power moduli delta^alpha need alpha < 1/2; eps_j = 2^{-m_j} with
/// m_j = max(j + 2, ceil(j / (1 - 2 alpha))) and n_j = ceil(1/(2^{j+1} eps_j)).
/// Table moduli search eps_j by bisection on the table support.
///
/// `exploratory` admits alpha = 1/2 (where no valid sequence exists); the
/// result then uses eps_j = 2^{-(j+2)} and is flagged.
DeltaSequence build_delta_sequence(const Modulus& omega, int blocks, bool exploratory = false);

/// Invariant violations of a sequence, one message per failed condition.
/// Comparisons use relative slack `tol`.
std::vector<std::string> check_delta_sequence(const DeltaSequence& d, const Modulus& omega,
                                              double tol = 1e-12);

/// Intervals I_k = [a_k, b_k], |I_k| = 6 delta_k, weights w_k = omega(delta_k).
class TriangleSystem {
 public:
  TriangleSystem() = default;
  TriangleSystem(std::vector<double> a, std::vector<double> delta, std::vector<double> weights);

  [[nodiscard]] std::size_t size() const { return a_.size(); }
  [[nodiscard]] double a(std::size_t k) const { return a_[k]; }
  [[nodiscard]] double b(std::size_t k) const { return a_[k] + 6.0 * delta_[k]; }
  [[nodiscard]] double delta(std::size_t k) const { return delta_[k]; }
  [[nodiscard]] double weight(std::size_t k) const { return w_[k]; }
  [[nodiscard]] const std::vector<double>& starts() const { return a_; }
  [[nodiscard]] const std::vector<double>& deltas() const { return delta_; }
  [[nodiscard]] const std::vector<double>& weights() const { return w_; }

  /// I_k.
  [[nodiscard]] CircleInterval interval(std::size_t k) const;
  /// J_k, the left half of I_k.
  [[nodiscard]] CircleInterval left_half(std::size_t k) const;
  /// J_k*, the middle third of J_k.
  [[nodiscard]] CircleInterval middle_third(std::size_t k) const;

  /// Copy with every weight multiplied by `factor` (mutation testing).
  [[nodiscard]] TriangleSystem scaled_weights(double factor) const;

 private:
  std::vector<double> a_;
  std::vector<double> delta_;
  std::vector<double> w_;
};

/// Packs the first K intervals left to right with equal gaps
/// g = (2 pi - 6 sum delta_k) / (K + 1), starting at a_1 = g.
TriangleSystem place_intervals(const DeltaSequence& d, std::size_t count);

/// All intervals of the first `blocks` blocks.
TriangleSystem build_system(const Modulus& omega, int blocks);

/// u = sum_k w_k tent(I_k).
PiecewiseLinear build_u(const TriangleSystem& sys);
/// v = sum_k w_k tent(J_k).
PiecewiseLinear build_v(const TriangleSystem& sys);
/// f = u + i v, with the union of both knot sets.
PiecewiseLinear build_f(const TriangleSystem& sys);

/// max(u, 1/n) as an exact piecewise-linear function, with new knots where
/// u crosses the level 1/n.
PiecewiseLinear truncate_un(const PiecewiseLinear& u, std::int64_t n);

/// Truncation indices ceil(3 / w_k) over the system, sorted, deduplicated.
std::vector<std::int64_t> truncation_grid(const TriangleSystem& sys);

}  // namespace sobolab
