#pragma once

// Functions on the circle T = R / 2piZ: intervals, piecewise-linear
// functions with explicit knots, and uniform-grid samples.

#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

namespace sobolab {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Reduces an angle into [0, 2pi). Inputs are expected to be within a few
/// turns of the range; reduction is a plain subtraction loop.
double reduce_angle(double t);

[[nodiscard]] constexpr bool is_power_of_two(std::size_t n) {
  return n != 0 && (n & (n - 1)) == 0;
}

/// Closed interval [a, b] with 0 <= a < b <= 2pi.
class CircleInterval {
 public:
  CircleInterval(double a, double b);

  [[nodiscard]] double a() const { return a_; }
  [[nodiscard]] double b() const { return b_; }
  [[nodiscard]] double length() const { return b_ - a_; }
  [[nodiscard]] double center() const { return 0.5 * (a_ + b_); }
  [[nodiscard]] bool contains(double t) const { return a_ <= t && t <= b_; }

 private:
  double a_;
  double b_;
};

/// Continuous piecewise-linear function on the circle.
///
/// Knots are strictly increasing angles in [0, 2pi). Between two knots the
/// function is the linear interpolant of the knot values. A periodic
/// function additionally interpolates across the wrap, from the last knot
/// to the first knot plus 2pi. A non-periodic function is held constant
/// left of its first knot and right of its last one; it is used for lifted
/// maps such as t -> h(t) that are not functions on the circle.
///
/// Values are always stored as complex numbers. Real-only operations check
/// that every imaginary part is exactly zero.
class PiecewiseLinear {
 public:
  PiecewiseLinear(std::vector<double> knots, std::vector<cplx> values, bool periodic = true);

  static PiecewiseLinear constant(cplx c);
  static PiecewiseLinear from_real(std::vector<double> knots, const std::vector<double>& values,
                                   bool periodic = true);

  [[nodiscard]] std::span<const double> knots() const { return knots_; }
  [[nodiscard]] std::span<const cplx> values() const { return values_; }
  [[nodiscard]] bool periodic() const { return periodic_; }
  [[nodiscard]] std::size_t size() const { return knots_.size(); }

  /// Exact linear interpolation; `t` is reduced mod 2pi first.
  [[nodiscard]] cplx operator()(double t) const;
  /// Real part of operator(); throws if the function is not real-valued.
  [[nodiscard]] double real_at(double t) const;

  [[nodiscard]] bool is_real() const;
  [[nodiscard]] PiecewiseLinear real_part() const;
  [[nodiscard]] PiecewiseLinear imag_part() const;

  /// Drops knots whose value lies on the segment joining its neighbours,
  /// within `tol` (relative to max(1, |value|)). At least one knot is kept.
  [[nodiscard]] PiecewiseLinear simplify(double tol = 1e-14) const;

  /// Slope of the segment that starts at knot i (the wrap segment for the
  /// last knot of a periodic function).
  [[nodiscard]] cplx slope_after(std::size_t i) const;

  /// Slope change at every knot of a periodic function: s_i - s_{i-1}.
  [[nodiscard]] std::vector<cplx> slope_jumps() const;

  [[nodiscard]] double max_abs() const;

  PiecewiseLinear& operator*=(cplx c);
  friend PiecewiseLinear operator+(const PiecewiseLinear& f, const PiecewiseLinear& g);
  friend PiecewiseLinear operator-(const PiecewiseLinear& f, const PiecewiseLinear& g);
  friend PiecewiseLinear operator*(cplx c, PiecewiseLinear f) { return f *= c; }

 private:
  // Index of the segment containing reduced angle t, or size() - 1 for the
  // wrap segment.
  [[nodiscard]] std::size_t segment_of(double t) const;

  std::vector<double> knots_;
  std::vector<cplx> values_;
  bool periodic_;
};

/// Sorted union of two knot lists (exact duplicates collapsed).
std::vector<double> merge_knots(std::span<const double> a, std::span<const double> b);

/// Samples at t_j = 2pi j / N, N a power of two.
struct GridFunction {
  std::vector<cplx> samples;

  GridFunction() = default;
  explicit GridFunction(std::vector<cplx> s);

  [[nodiscard]] std::size_t size() const { return samples.size(); }
  [[nodiscard]] double angle(std::size_t j) const {
    return kTwoPi * static_cast<double>(j) / static_cast<double>(samples.size());
  }
};

/// Unit tent supported on I, peak 1 at the centre. I must lie strictly
/// inside (0, 2pi).
PiecewiseLinear triangle(const CircleInterval& interval);

GridFunction sample(const PiecewiseLinear& f, std::size_t n);

/// Total variation over one turn, including the wrap segment for periodic
/// functions. Rejects complex-valued input.
double total_variation(const PiecewiseLinear& f);

}  // namespace sobolab
