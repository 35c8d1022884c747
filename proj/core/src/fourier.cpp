#include "sobolab/fourier.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace sobolab {

SpectrumCoeffs::SpectrumCoeffs(int kmax)
    : kmax_(kmax), coeffs_(static_cast<std::size_t>(2 * kmax + 1)) {
  if (kmax < 0) throw std::invalid_argument("SpectrumCoeffs: negative kmax");
}

SpectrumCoeffs::SpectrumCoeffs(int kmax, std::vector<cplx> coeffs)
    : kmax_(kmax), coeffs_(std::move(coeffs)) {
  if (kmax < 0 || coeffs_.size() != static_cast<std::size_t>(2 * kmax + 1)) {
    throw std::invalid_argument("SpectrumCoeffs: need 2*kmax+1 coefficients");
  }
}

SpectrumCoeffs SpectrumCoeffs::harmonic(int k, cplx c) {
  SpectrumCoeffs s(std::abs(k));
  s.at(k) = c;
  return s;
}

cplx SpectrumCoeffs::operator[](int k) const {
  if (k < -kmax_ || k > kmax_) return {};
  return coeffs_[static_cast<std::size_t>(k + kmax_)];
}

cplx& SpectrumCoeffs::at(int k) {
  if (k < -kmax_ || k > kmax_) {
    throw std::out_of_range("SpectrumCoeffs::at: k=" + std::to_string(k) + " outside range");
  }
  return coeffs_[static_cast<std::size_t>(k + kmax_)];
}

SpectrumCoeffs& SpectrumCoeffs::operator*=(cplx c) {
  for (cplx& z : coeffs_) z *= c;
  return *this;
}

SpectrumCoeffs operator+(const SpectrumCoeffs& a, const SpectrumCoeffs& b) {
  SpectrumCoeffs out(std::max(a.kmax(), b.kmax()));
  for (int k = -out.kmax(); k <= out.kmax(); ++k) out.at(k) = a[k] + b[k];
  return out;
}

SpectrumCoeffs dft_coeffs(const GridFunction& g, int kmax) {
  const std::size_t n = g.size();
  if (kmax < 0 || 2 * static_cast<std::size_t>(kmax) >= n) {
    throw std::invalid_argument("dft_coeffs: need 2*kmax < N (kmax=" + std::to_string(kmax) +
                                ", N=" + std::to_string(n) + ")");
  }
  Eigen::FFT<double> fft;
  std::vector<cplx> out;
  fft.fwd(out, g.samples);
  const double scale = 1.0 / static_cast<double>(n);
  SpectrumCoeffs c(kmax);
  for (int k = -kmax; k <= kmax; ++k) {
    const std::size_t idx = k >= 0 ? static_cast<std::size_t>(k) : n - static_cast<std::size_t>(-k);
    c.at(k) = out[idx] * scale;
  }
  return c;
}

SpectrumCoeffs dft_coeffs(const GridFunction& g) {
  return dft_coeffs(g, static_cast<int>(g.size() / 4));
}

namespace {

void require_periodic(const PiecewiseLinear& f, const char* who) {
  if (!f.periodic()) throw std::domain_error(std::string(who) + ": function must be periodic");
}

cplx pl_mean(const PiecewiseLinear& f) {
  const auto x = f.knots();
  const auto v = f.values();
  const std::size_t n = x.size();
  if (n == 1) return v[0];
  cplx area{};
  for (std::size_t i = 0; i + 1 < n; ++i) area += 0.5 * (v[i] + v[i + 1]) * (x[i + 1] - x[i]);
  area += 0.5 * (v[n - 1] + v[0]) * (x[0] + kTwoPi - x[n - 1]);
  return area / kTwoPi;
}

}  // namespace

cplx pl_coeff(const PiecewiseLinear& f, int k) {
  require_periodic(f, "pl_coeff");
  if (k == 0) return pl_mean(f);
  const auto x = f.knots();
  const std::vector<cplx> jumps = f.slope_jumps();
  cplx sum{};
  for (std::size_t j = 0; j < x.size(); ++j) {
    sum += jumps[j] * std::polar(1.0, -static_cast<double>(k) * x[j]);
  }
  const double kk = static_cast<double>(k);
  return -sum / (kTwoPi * kk * kk);
}

SpectrumCoeffs pl_spectrum(const PiecewiseLinear& f, int kmax) {
  require_periodic(f, "pl_spectrum");
  if (kmax < 0) throw std::invalid_argument("pl_spectrum: negative kmax");
  SpectrumCoeffs c(kmax);
  c.at(0) = pl_mean(f);

  const auto x = f.knots();
  const std::vector<cplx> jumps = f.slope_jumps();
  std::vector<cplx> j_nz;
  std::vector<double> x_nz;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (jumps[j] != cplx{}) {
      j_nz.push_back(jumps[j]);
      x_nz.push_back(x[j]);
    }
  }
  const std::size_t m = x_nz.size();
  std::vector<cplx> step(m);
  std::vector<cplx> phase(m);  // e^{-ik x_j}
  for (std::size_t j = 0; j < m; ++j) step[j] = std::polar(1.0, -x_nz[j]);

  constexpr int kReanchor = 64;
  for (int k = 1; k <= kmax; ++k) {
    if ((k - 1) % kReanchor == 0) {
      for (std::size_t j = 0; j < m; ++j) phase[j] = std::polar(1.0, -static_cast<double>(k) * x_nz[j]);
    } else {
      for (std::size_t j = 0; j < m; ++j) phase[j] *= step[j];
    }
    cplx s_pos{};
    cplx s_neg{};
    for (std::size_t j = 0; j < m; ++j) {
      s_pos += j_nz[j] * phase[j];
      s_neg += j_nz[j] * std::conj(phase[j]);
    }
    const double kk = static_cast<double>(k);
    const double scale = -1.0 / (kTwoPi * kk * kk);
    c.at(k) = s_pos * scale;
    c.at(-k) = s_neg * scale;
  }
  return c;
}

SpectrumCoeffs fejer_sum(const SpectrumCoeffs& c, int order) {
  if (order < 1) throw std::invalid_argument("fejer_sum: order must be >= 1");
  SpectrumCoeffs out(c.kmax());
  const double n = static_cast<double>(order);
  for (int k = -c.kmax(); k <= c.kmax(); ++k) {
    const int ak = std::abs(k);
    if (ak < order) out.at(k) = (1.0 - ak / n) * c[k];
  }
  return out;
}

GridFunction synthesize(const SpectrumCoeffs& c, std::size_t n) {
  if (n < 2 || !is_power_of_two(n) || n <= 2 * static_cast<std::size_t>(c.kmax())) {
    throw std::invalid_argument("synthesize: N must be a power of two greater than 2*kmax");
  }
  std::vector<cplx> spec(n);
  for (int k = -c.kmax(); k <= c.kmax(); ++k) {
    const std::size_t idx = k >= 0 ? static_cast<std::size_t>(k) : n - static_cast<std::size_t>(-k);
    spec[idx] = c[k];
  }
  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::Unscaled);
  std::vector<cplx> out;
  fft.inv(out, spec);
  return GridFunction(std::move(out));
}

}  // namespace sobolab
