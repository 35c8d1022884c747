#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <random>

#include "sobolab/fourier.hpp"
#include "sobolab/homeo.hpp"

using namespace sobolab;

namespace {

// (1/2pi) int f(t) e^{-ikt} dt by adaptive Gauss-Kronrod on each linear piece.
cplx quadrature_coeff(const PiecewiseLinear& f, int k) {
  using boost::math::quadrature::gauss_kronrod;
  std::vector<double> cuts(f.knots().begin(), f.knots().end());
  cuts.insert(cuts.begin(), 0.0);
  cuts.push_back(kTwoPi);
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (!(cuts[i] < cuts[i + 1])) continue;
    re += gauss_kronrod<double, 61>::integrate(
        [&](double t) { return (f(t) * std::exp(cplx(0, -k * t))).real(); }, cuts[i], cuts[i + 1], 8, 1e-14);
    im += gauss_kronrod<double, 61>::integrate(
        [&](double t) { return (f(t) * std::exp(cplx(0, -k * t))).imag(); }, cuts[i], cuts[i + 1], 8, 1e-14);
  }
  return cplx(re, im) / kTwoPi;
}

}  // namespace

TEST(Dft, SingleHarmonic) {
  const GridFunction g = synthesize(SpectrumCoeffs::harmonic(3), 64);
  const SpectrumCoeffs c = dft_coeffs(g, 8);
  for (int k = -8; k <= 8; ++k) EXPECT_NEAR(std::abs(c[k] - (k == 3 ? 1.0 : 0.0)), 0.0, 1e-12) << k;
}

TEST(Dft, Constant) {
  const SpectrumCoeffs c = dft_coeffs(sample(PiecewiseLinear::constant(5.0), 32));
  EXPECT_NEAR(std::abs(c[0] - 5.0), 0.0, 1e-14);
  for (int k = 1; k <= c.kmax(); ++k) {
    EXPECT_NEAR(std::abs(c[k]), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(c[-k]), 0.0, 1e-14);
  }
}

TEST(Dft, RejectsAliasingTruncation) {
  EXPECT_THROW(dft_coeffs(GridFunction(std::vector<cplx>(16)), 8), std::invalid_argument);
}

TEST(ClosedForm, TriangleFormula) {
  const double a = 1.0, b = 2.5, c = 0.5 * (a + b), len = b - a;
  const auto f = triangle(CircleInterval(a, b));
  for (int k : {-7, -1, 1, 2, 13}) {
    const double kd = k;
    const cplx expected = -(1.0 / (kTwoPi * kd * kd)) * (2.0 / len) *
                          (std::exp(cplx(0, -kd * a)) - 2.0 * std::exp(cplx(0, -kd * c)) +
                           std::exp(cplx(0, -kd * b)));
    EXPECT_NEAR(std::abs(pl_coeff(f, k) - expected), 0.0, 1e-15) << k;
  }
  EXPECT_NEAR(pl_coeff(f, 0).real(), (len / 2) / kTwoPi, 1e-15);
}

TEST(ClosedForm, MatchesQuadrature) {
  std::mt19937_64 rng(5);
  std::vector<double> knots;
  std::vector<cplx> values;
  for (int i = 0; i < 12; ++i) {
    knots.push_back(0.05 + 0.5 * i + 0.3 * unit_uniform(rng));
    values.emplace_back(unit_uniform(rng) - 0.5, unit_uniform(rng) - 0.5);
  }
  const PiecewiseLinear f(knots, values);
  for (int k = -20; k <= 20; ++k) {
    EXPECT_NEAR(std::abs(pl_coeff(f, k) - quadrature_coeff(f, k)), 0.0, 1e-12) << k;
  }
}

TEST(ClosedForm, AgreesWithDft) {
  const auto f = triangle(CircleInterval(kPi - 1.0, kPi + 1.0));
  const SpectrumCoeffs d = dft_coeffs(sample(f, 1 << 14), 128);
  const SpectrumCoeffs e = pl_spectrum(f, 128);
  for (int k = -128; k <= 128; ++k) EXPECT_NEAR(std::abs(d[k] - e[k]), 0.0, 1e-6) << k;
}

TEST(ClosedForm, ConstantHasNoHarmonics) {
  const auto f = PiecewiseLinear::constant(2.0);
  for (int k = 1; k < 5; ++k) EXPECT_EQ(pl_coeff(f, k), cplx(0.0));
}

TEST(ClosedForm, SpectrumMatchesPointwise) {
  const auto f = PiecewiseLinear::from_real({0.3, 1.1, 2.0, 4.4, 5.9}, {1.0, -0.5, 0.25, 2.0, 0.0});
  const SpectrumCoeffs s = pl_spectrum(f, 3000);
  for (int k : {-3000, -1234, -1, 0, 1, 77, 2999, 3000}) {
    EXPECT_NEAR(std::abs(s[k] - pl_coeff(f, k)), 0.0, 1e-15) << k;
  }
}

TEST(ClosedForm, DftErrorIsSecondOrder) {
  // Three doublings, ideal drop 64.
  for (const auto& [a, b] : {std::pair{1.0, 2.0}, std::pair{1.1, 2.3}, std::pair{0.7, 3.9}}) {
    const auto f = triangle(CircleInterval(a, b));
    const auto error = [&](std::size_t n) {
      const SpectrumCoeffs d = dft_coeffs(sample(f, n), 16);
      double err = 0.0;
      for (int k = -16; k <= 16; ++k) err = std::max(err, std::abs(d[k] - pl_coeff(f, k)));
      return err;
    };
    const double drop = error(1 << 10) / error(1 << 13);
    EXPECT_GT(drop, 16.0) << a;
    EXPECT_LT(drop, 256.0) << a;
  }
}

TEST(Fejer, OrderOneKeepsMean) {
  SpectrumCoeffs c(4);
  for (int k = -4; k <= 4; ++k) c.at(k) = cplx(k + 10.0, 1.0);
  const SpectrumCoeffs s = fejer_sum(c, 1);
  EXPECT_EQ(s[0], c[0]);
  for (int k = 1; k <= 4; ++k) {
    EXPECT_EQ(s[k], cplx(0.0));
    EXPECT_EQ(s[-k], cplx(0.0));
  }
}

TEST(Fejer, HighHarmonicVanishes) {
  const SpectrumCoeffs s = fejer_sum(SpectrumCoeffs::harmonic(5), 5);
  for (int k = -5; k <= 5; ++k) EXPECT_EQ(s[k], cplx(0.0));
}

TEST(Fejer, ShrinksEveryCoefficient) {
  std::mt19937_64 rng(9);
  SpectrumCoeffs c(40);
  for (int k = -40; k <= 40; ++k) c.at(k) = cplx(unit_uniform(rng) - 0.5, unit_uniform(rng) - 0.5);
  for (int order : {1, 5, 20, 41, 100}) {
    const SpectrumCoeffs s = fejer_sum(c, order);
    for (int k = -40; k <= 40; ++k) EXPECT_LE(std::abs(s[k]), std::abs(c[k]));
  }
}

TEST(Fejer, ConvergesUniformlyOnTriangle) {
  const auto f = triangle(CircleInterval(1.0, 2.0));
  const SpectrumCoeffs full = pl_spectrum(f, 512);
  const auto sup_error = [&](int order) {
    const GridFunction g = synthesize(fejer_sum(full, order), 4096);
    double err = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) err = std::max(err, std::abs(g.samples[j] - f(g.angle(j))));
    return err;
  };
  EXPECT_LT(sup_error(512), sup_error(64));
}

TEST(Synthesize, RoundTripAndSingleHarmonic) {
  std::mt19937_64 rng(1);
  SpectrumCoeffs c(20);
  for (int k = -20; k <= 20; ++k) c.at(k) = cplx(unit_uniform(rng), unit_uniform(rng));
  const SpectrumCoeffs back = dft_coeffs(synthesize(c, 128), 20);
  for (int k = -20; k <= 20; ++k) EXPECT_NEAR(std::abs(back[k] - c[k]), 0.0, 1e-12);

  const GridFunction g = synthesize(SpectrumCoeffs::harmonic(1), 16);
  for (std::size_t j = 0; j < 16; ++j) EXPECT_NEAR(std::abs(g.samples[j] - std::exp(cplx(0, g.angle(j)))), 0.0, 1e-15);
}

TEST(Parseval, BandlimitedInputs) {
  std::mt19937_64 rng(2);
  SpectrumCoeffs c(30);
  for (int k = -30; k <= 30; ++k) c.at(k) = cplx(unit_uniform(rng) - 0.5, unit_uniform(rng) - 0.5);
  const GridFunction g = synthesize(c, 256);
  double energy = 0.0;
  for (const cplx& s : g.samples) energy += std::norm(s);
  energy /= 256.0;
  double spectral = 0.0;
  for (const cplx& v : c.coeffs()) spectral += std::norm(v);
  EXPECT_NEAR(energy, spectral, 1e-10);
}

TEST(Spectrum, HermitianForRealInput) {
  const auto f = PiecewiseLinear::from_real({0.3, 1.1, 2.0, 4.4}, {1.0, -0.5, 0.25, 2.0});
  const SpectrumCoeffs s = pl_spectrum(f, 50);
  for (int k = 1; k <= 50; ++k) EXPECT_NEAR(std::abs(s[-k] - std::conj(s[k])), 0.0, 1e-16);
  const SpectrumCoeffs d = dft_coeffs(sample(f, 512), 50);
  for (int k = 1; k <= 50; ++k) EXPECT_NEAR(std::abs(d[-k] - std::conj(d[k])), 0.0, 1e-15);
}
