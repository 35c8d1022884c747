#pragma once

// Exact Riemann-Stieltjes integrals of piecewise-linear integrands against
// piecewise-linear integrators, the per-interval lower bounds for the
// integral of v against the truncations u_n, and the duality inequality
//   |(1/2pi) int x dy| <= |x|_{1/2} |y|_{1/2}.

#include <cstdint>
#include <string>
#include <vector>

#include "sobolab/circle.hpp"
#include "sobolab/construction.hpp"
#include "sobolab/fourier.hpp"

namespace sobolab {

/// int_0^{2pi} x(t) dy(t) over the circle. Both functions are linear on each
/// piece of the merged knot set, so every piece contributes
/// (y1 - y0) (x0 + x1) / 2 exactly.
cplx rs_integral(const PiecewiseLinear& x, const PiecewiseLinear& y);

/// The same integral restricted to [I.a, I.b].
cplx rs_integral(const PiecewiseLinear& x, const PiecewiseLinear& y, const CircleInterval& over);

/// (1/2pi) int e^{ikt} dy(t), closed form per piece.
cplx rs_harmonic(int k, const PiecewiseLinear& y);

/// (1/2pi) int x dy for a trigonometric polynomial x, summed harmonic by
/// harmonic.
cplx rs_trig(const SpectrumCoeffs& x, const PiecewiseLinear& y);

struct StieltjesReport {
  std::int64_t n = 0;
  double value = 0.0;                 // int v du_n over the circle
  std::vector<double> weights;        // w_k
  std::vector<double> per_interval;   // int over J_k of v du_n
  std::vector<double> bound_terms;    // (2/9) w_k^2 for active k, else 0
  double lower_bound = 0.0;           // sum of bound_terms
  std::vector<std::size_t> violations;  // 0-based k failing its per-k bound
  std::vector<std::size_t> negative;    // 0-based k with a negative contribution
  bool total_ok = true;

  [[nodiscard]] bool holds() const { return violations.empty() && negative.empty() && total_ok; }
};

/// Computes int v du_n for the system's u and v and checks, with relative
/// slack `tol`, that every J_k contributes >= (2/9) w_k^2 when w_k >= 3/n and
/// >= 0 otherwise, and that the total is at least the sum of those bounds.
StieltjesReport stieltjes_check(const TriangleSystem& sys, std::int64_t n, double tol = 1e-8);

/// Same check against caller-supplied u and v (used to test that a corrupted
/// construction is caught). Bounds still use the system's weights.
StieltjesReport stieltjes_check(const TriangleSystem& sys, const PiecewiseLinear& u,
                             const PiecewiseLinear& v, std::int64_t n, double tol = 1e-8);

struct DualityReport {
  double lhs = 0.0;          // |(1/2pi) int x dy|
  double x_norm = 0.0;       // spectral W^{1/2} seminorm of x
  double y_norm = 0.0;       // of y, truncated at kmax
  double y_tail_bound = 0.0;  // bound on the squared seminorm beyond kmax
  double rhs = 0.0;          // x_norm * y_norm
  bool holds = false;
  bool tail_warning = false;
};

/// Duality inequality for bandlimited x and a real periodic PL y. The
/// y-side uses the closed-form spectrum up to `kmax`; the omitted tail of
/// |y|^2 is bounded by (sum |J_j|)^2 / (4 pi^2 kmax^2).
DualityReport duality_check(const SpectrumCoeffs& x, const PiecewiseLinear& y, int kmax = 1 << 16,
                            double tol = 1e-8);

}  // namespace sobolab
