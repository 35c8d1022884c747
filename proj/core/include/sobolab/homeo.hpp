#pragma once

// Orientation-preserving piecewise-linear circle homeomorphisms fixing 0,
// and exact superposition f o h.

#include <cstddef>
#include <random>
#include <span>
#include <vector>

#include "sobolab/circle.hpp"

namespace sobolab {

/// h maps t_i to s_i and is linear in between; the last piece runs from
/// (t_{M-1}, s_{M-1}) to (2pi, 2pi). Both lists start at 0 and increase
/// strictly below 2pi.
class Homeomorphism {
 public:
  Homeomorphism();  // identity
  Homeomorphism(std::vector<double> t, std::vector<double> s);

  /// Uniform input knots 2 pi i / M; output increments proportional to
  /// exp(raw_i). Entries more than 30 below the maximum are clamped so no
  /// increment underflows against 2pi.
  static Homeomorphism from_increments(std::span<const double> raw);

  /// from_increments with raw entries uniform on [-roughness, roughness].
  static Homeomorphism random(std::size_t m, double roughness, std::mt19937_64& rng);

  [[nodiscard]] std::span<const double> knots_in() const { return t_; }
  [[nodiscard]] std::span<const double> knots_out() const { return s_; }
  [[nodiscard]] std::size_t size() const { return t_.size(); }

  /// h(t) for t reduced mod 2pi; result in [0, 2pi).
  [[nodiscard]] double operator()(double t) const;
  [[nodiscard]] Homeomorphism inverse() const { return {s_, t_}; }
  [[nodiscard]] bool is_identity(double tol = 0.0) const;

  friend bool operator==(const Homeomorphism& a, const Homeomorphism& b) = default;

 private:
  std::vector<double> t_;
  std::vector<double> s_;
};

/// outer o inner, on the union of inner's knots and the inner-preimages of
/// outer's knots.
Homeomorphism compose(const Homeomorphism& outer, const Homeomorphism& inner);

/// Exact f o h for a periodic PL f. Knots are h's input knots together with
/// the h-preimages of f's knots; at the latter the value is copied from f.
PiecewiseLinear superpose(const PiecewiseLinear& f, const Homeomorphism& h);

/// Uniform double in [0, 1) from the top 53 bits of one engine draw. Used in
/// place of std::uniform_real_distribution so streams are identical across
/// standard libraries.
double unit_uniform(std::mt19937_64& rng);

}  // namespace sobolab
