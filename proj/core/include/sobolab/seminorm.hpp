#pragma once

// Fractional Sobolev seminorms on the circle and moduli of continuity.

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "sobolab/circle.hpp"
#include "sobolab/fourier.hpp"

namespace sobolab {

/// A modulus of continuity: omega(0) = 0, nondecreasing, subadditive.
class Modulus {
 public:
  enum class Kind { power, table };

  /// omega(delta) = delta^alpha, alpha in (0, 1].
  static Modulus power(double alpha);

  /// Linear interpolation through (delta, omega) pairs, constant beyond the
  /// last point. The pairs are validated for omega(0) = 0, monotonicity and
  /// subadditivity on every pair of table points.
  static Modulus table(std::vector<std::pair<double, double>> points);

  [[nodiscard]] double operator()(double delta) const;

  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] double alpha() const;
  [[nodiscard]] const std::vector<std::pair<double, double>>& points() const { return points_; }
  /// Largest delta in the table (infinity for power kind).
  [[nodiscard]] double support_max() const;

 private:
  Modulus() = default;

  Kind kind_ = Kind::power;
  double alpha_ = 1.0;
  std::vector<std::pair<double, double>> points_;
};

/// (sum_k |c_k|^2 |k|^{2s})^{1/2}; s = 1/2 gives the W_2^{1/2} seminorm.
double sobolev_spectral(const SpectrumCoeffs& c, double s);

/// Discretized difference-quotient seminorm
///   ( int_0^{2pi} theta^{-2} int_0^{2pi} |f(t+theta) - f(t)|^2 dt dtheta )^{1/2}
/// over grid shifts theta_m = 2 pi m / N, m = 1..N-1 (theta = 0 excluded).
/// The inner mean over the grid is evaluated through the discrete Parseval
/// identity, so the whole sum costs one pair of FFTs.
double sobolev_integral(const GridFunction& g);

/// Exact W_2^{1/2} seminorm of a continuous periodic piecewise-linear
/// function, sum_{k != 0} |k| |f^(k)|^2, without truncation.
///
/// With slope jumps J_j at knots x_j the squared seminorm equals
///   (1/pi^2) sum_{i<j} Re(J_i conj(J_j)) C(x_j - x_i),
///   C(d) = sum_{k>=1} cos(kd)/k^3 - zeta(3),
/// and C is evaluated from its log-plus-power-series expansion on [0, pi].
///
/// Kinks are grouped into clusters separated by flat segments. A cluster
/// between two flats of the same level has vanishing zeroth and first jump
/// moments, so the interaction of two well-separated clusters is a Taylor
/// series in the kernel derivatives of order >= 4, all of which are
/// polynomials in cot(d/2). Near pairs and pairs inside a cluster are
/// summed directly. A complex function is handled as |Re f|^2 + |Im f|^2.
double pl_half_seminorm(const PiecewiseLinear& f);

/// The same quantity by the plain quadratic pair sum over all kinks.
double pl_half_seminorm_direct(const PiecewiseLinear& f);

/// The kernel C above, exposed for testing.
double clausen3_shifted(double d);

/// sup over |t1 - t2| <= delta (circular distance) of |f(t1) - f(t2)|.
/// Exact: the supremum is attained at a pair of knots or at a knot paired
/// with the point at distance delta.
double modulus_of_continuity(const PiecewiseLinear& f, double delta);

struct LipReport {
  std::vector<double> deltas;
  std::vector<double> ratios;  // omega(f, delta) / omega(delta)
  double max_ratio = 0.0;

  [[nodiscard]] bool within(double c) const { return max_ratio <= c; }
};

LipReport lip_check(const PiecewiseLinear& f, const Modulus& omega, std::span<const double> deltas);

/// 2 pi 2^{-m}, m = 1..20.
std::vector<double> default_delta_grid();

struct EquivalenceEstimate {
  double ratio_min = 0.0;
  double ratio_max = 0.0;
  std::size_t sample_count = 0;
};

/// Range of sobolev_integral / sobolev_spectral(s = 1/2) over the test set,
/// each spectrum synthesized on an N-point grid.
EquivalenceEstimate equivalence_scan(std::span<const SpectrumCoeffs> test_set, std::size_t n);

struct SeminormReport {
  double spectral = 0.0;
  double integral = 0.0;
  double s = 0.5;
  std::size_t n = 0;
};

}  // namespace sobolab
