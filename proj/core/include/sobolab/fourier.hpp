#pragma once

// Fourier coefficients on the circle with the convention
//   f^(k) = (1/2pi) * integral_0^{2pi} f(t) e^{-ikt} dt,   f ~ sum_k f^(k) e^{ikt}.

#include <cstddef>
#include <vector>

#include "sobolab/circle.hpp"

namespace sobolab {

/// Two-sided truncated spectrum f^(k), k = -kmax..kmax.
class SpectrumCoeffs {
 public:
  SpectrumCoeffs() = default;
  explicit SpectrumCoeffs(int kmax);
  SpectrumCoeffs(int kmax, std::vector<cplx> coeffs);

  /// A single harmonic c * e^{ikt}, stored with kmax = |k|.
  static SpectrumCoeffs harmonic(int k, cplx c = 1.0);

  [[nodiscard]] int kmax() const { return kmax_; }
  /// Zero outside the stored range.
  [[nodiscard]] cplx operator[](int k) const;
  cplx& at(int k);
  [[nodiscard]] const std::vector<cplx>& coeffs() const { return coeffs_; }

  SpectrumCoeffs& operator*=(cplx c);
  friend SpectrumCoeffs operator+(const SpectrumCoeffs& a, const SpectrumCoeffs& b);

 private:
  int kmax_ = 0;
  std::vector<cplx> coeffs_{cplx{}};
};

/// (1/N) sum_j g(t_j) e^{-ik t_j} for |k| <= kmax. Requires 2*kmax < N.
SpectrumCoeffs dft_coeffs(const GridFunction& g, int kmax);

/// Same with the default truncation kmax = N/4.
SpectrumCoeffs dft_coeffs(const GridFunction& g);

/// Exact coefficient of a continuous periodic piecewise-linear function.
/// For k != 0 it is -(1/(2 pi k^2)) sum_j J_j e^{-ik x_j}, J_j the slope
/// jump at knot x_j; f^(0) is the exact mean.
cplx pl_coeff(const PiecewiseLinear& f, int k);

/// All exact coefficients for |k| <= kmax. Phases are advanced by
/// recurrence and re-anchored periodically, so the cost is O(knots * kmax).
SpectrumCoeffs pl_spectrum(const PiecewiseLinear& f, int kmax);

/// Coefficients of the Fejer mean sigma_N: (1 - |k|/N) f^(k) for |k| < N.
SpectrumCoeffs fejer_sum(const SpectrumCoeffs& c, int order);

/// Samples of sum_k c_k e^{ikt} on an N-point grid, N > 2*kmax.
GridFunction synthesize(const SpectrumCoeffs& c, std::size_t n);

}  // namespace sobolab
