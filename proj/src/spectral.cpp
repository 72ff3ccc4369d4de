#include "gfbbm/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fft.hpp"
#include "spectral_internal.hpp"

namespace gfbbm {

namespace {

constexpr double kPi = std::numbers::pi_v<double>;

detail::cplx phasor(long double angle) {
  const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
  const long double a = std::fmod(angle, two_pi);
  return {static_cast<double>(std::cos(a)), static_cast<double>(std::sin(a))};
}

bool all_finite(std::span<const double> v) noexcept {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

void check_same_grid(const SpectralGrid& a, const SpectralGrid& b) {
  if (a.size() != b.size() || a.half_length() != b.half_length())
    fail(ErrorCode::invalid_argument, "profiles live on different grids");
}

}  // namespace

namespace detail {

double int_pow(double x, int e) noexcept {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

// The engine works in the normalized-coordinate basis e^{ikX} with
// X = pi(x+L)/L in [0, 2pi); the public convention is the physical basis
// e^{i kappa x}.
// They differ by (-1)^k per mode, which the engine folds in as phys_phase.
void forward_real_phys(const SpectralGrid& grid, const double* u, cplx* coeffs) {
  grid.engine().forward_real(u, coeffs, true);
}

void inverse_real_phys(const SpectralGrid& grid, const cplx* coeffs, double* u) {
  grid.engine().inverse_real(coeffs, u, true);
}

void apply_dealias(const SpectralGrid& grid, cplx* coeffs) {
  if (!grid.dealias()) return;
  const long cutoff = static_cast<long>(grid.dealias_cutoff());
  const std::size_t n = grid.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (std::labs(grid.mode_index(i)) > cutoff) coeffs[i] = {0.0, 0.0};
  }
}

}  // namespace detail

SpectralGrid::SpectralGrid(std::size_t n_points, double half_length, bool dealias)
    : n_(n_points), half_length_(half_length), dealias_(dealias) {
  if (n_points < 4 || n_points % 2 != 0)
    fail(ErrorCode::invalid_argument, "n_points must be even and >= 4");
  if (!(half_length > 0.0) || !std::isfinite(half_length))
    fail(ErrorCode::invalid_argument, "half_length must be positive and finite");
  nodes_.resize(n_);
  wavenumbers_.resize(n_);
  kappa_fft_.resize(n_);
  const double h = spacing();
  for (std::size_t j = 0; j < n_; ++j) nodes_[j] = -half_length_ + h * static_cast<double>(j);
  const double k0 = kPi / half_length_;
  const long half = static_cast<long>(n_ / 2);
  for (long k = -half; k < half; ++k)
    wavenumbers_[static_cast<std::size_t>(k + half)] = static_cast<double>(k) * k0;
  for (std::size_t i = 0; i < n_; ++i)
    kappa_fft_[i] = static_cast<double>(mode_index(i)) * k0;
  engine_ = std::make_unique<detail::FftEngine>(n_);
}

SpectralGrid::~SpectralGrid() = default;

GridPtr make_grid(std::size_t n_points, double half_length, bool dealias) {
  return std::make_shared<const SpectralGrid>(n_points, half_length, dealias);
}

WaveProfile::WaveProfile(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (!grid_) fail(ErrorCode::invalid_argument, "profile requires a grid");
  if (values_.size() != grid_->size())
    fail(ErrorCode::invalid_argument, "profile length does not match grid");
  if (!all_finite(values_))
    fail(ErrorCode::invalid_argument, "profile contains non-finite values");
}

Spectrum::Spectrum(GridPtr grid, std::vector<std::complex<double>> coeffs)
    : grid_(std::move(grid)), coeffs_(std::move(coeffs)) {
  if (!grid_) fail(ErrorCode::invalid_argument, "spectrum requires a grid");
  if (coeffs_.size() != grid_->size())
    fail(ErrorCode::invalid_argument, "spectrum length does not match grid");
}

std::complex<double> Spectrum::coeff(long k) const {
  const long half = static_cast<long>(grid_->size() / 2);
  if (k < -half || k >= half) fail(ErrorCode::invalid_argument, "mode index out of range");
  const std::size_t i =
      k >= 0 ? static_cast<std::size_t>(k) : static_cast<std::size_t>(k + static_cast<long>(grid_->size()));
  return coeffs_[i];
}

double Spectrum::conjugate_asymmetry() const noexcept {
  const std::size_t n = coeffs_.size();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (n - i) % n;
    worst = std::max(worst, std::abs(coeffs_[i] - std::conj(coeffs_[j])));
  }
  return worst;
}

Spectrum forward_transform(const WaveProfile& profile) {
  std::vector<std::complex<double>> coeffs(profile.size());
  detail::forward_real_phys(profile.grid(), profile.values().data(), coeffs.data());
  return {profile.grid_ptr(), std::move(coeffs)};
}

WaveProfile inverse_transform(const Spectrum& spectrum) {
  const std::size_t n = spectrum.grid().size();
  const auto c = spectrum.coeffs();
  // Bound on the imaginary residue: sup_j |Im u_j| <= sum_k |antisymmetric part|.
  detail::KahanSum asym;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (n - i) % n;
    asym.add(std::abs(c[i] - std::conj(c[j])));
  }
  const double residue = 0.5 * asym.value();
  std::vector<double> u(n);
  detail::inverse_real_phys(spectrum.grid(), c.data(), u.data());
  double scale = 0.0;
  for (double x : u) scale = std::max(scale, std::abs(x));
  if (residue > 1e-10 * std::max(scale, 1e-300))
    fail(ErrorCode::symmetry_violation,
         "spectrum is not conjugate-symmetric: imaginary residue above tolerance");
  return {spectrum.grid_ptr(), std::move(u)};
}

WaveProfile apply_fractional(const WaveProfile& profile, double order) {
  if (order < 0.0 || !std::isfinite(order))
    fail(ErrorCode::invalid_argument, "fractional order must be >= 0");
  if (order == 0.0) return profile;
  const SpectralGrid& g = profile.grid();
  const std::size_t n = g.size();
  std::vector<detail::cplx> coeffs(n);
  detail::forward_real_phys(g, profile.values().data(), coeffs.data());
  for (std::size_t i = 0; i < n; ++i)
    coeffs[i] *= std::pow(std::abs(g.wavenumber_fft(i)), order);
  std::vector<double> out(n);
  detail::inverse_real_phys(g, coeffs.data(), out.data());
  return {profile.grid_ptr(), std::move(out)};
}

WaveProfile apply_x_derivative(const WaveProfile& profile) {
  const SpectralGrid& g = profile.grid();
  const std::size_t n = g.size();
  std::vector<detail::cplx> coeffs(n);
  detail::forward_real_phys(g, profile.values().data(), coeffs.data());
  for (std::size_t i = 0; i < n; ++i) {
    const double k = g.wavenumber_fft(i);
    coeffs[i] = detail::cplx{-k * coeffs[i].imag(), k * coeffs[i].real()};
  }
  coeffs[n / 2] = {0.0, 0.0};  // unpaired Nyquist mode
  std::vector<double> out(n);
  detail::inverse_real_phys(g, coeffs.data(), out.data());
  return {profile.grid_ptr(), std::move(out)};
}

double sup_norm(const WaveProfile& profile) noexcept {
  double m = 0.0;
  for (double x : profile.values()) m = std::max(m, std::abs(x));
  return m;
}

double sup_diff(const WaveProfile& a, const WaveProfile& b) {
  check_same_grid(a.grid(), b.grid());
  double m = 0.0;
  const auto va = a.values();
  const auto vb = b.values();
  for (std::size_t j = 0; j < va.size(); ++j) m = std::max(m, std::abs(va[j] - vb[j]));
  return m;
}

std::vector<double> trig_interpolate(const Spectrum& spectrum, std::span<const double> points) {
  const SpectralGrid& g = spectrum.grid();
  const std::size_t n = g.size();
  const std::size_t half = n / 2;
  const double k0 = kPi / g.half_length();
  const auto c = spectrum.coeffs();
  const double c0 = c[0].real();
  const double cnyq = c[half].real();
  std::vector<double> out(points.size());
  for (std::size_t m = 0; m < points.size(); ++m) {
    const double phi = k0 * points[m];
    const detail::cplx e1 = phasor(static_cast<long double>(phi));
    detail::cplx ek = e1;
    double acc = c0;
    for (std::size_t k = 1; k < half; ++k) {
      if (k > 1) {
        // periodic resync keeps the phasor recurrence from drifting
        ek = (k % 512 == 0)
                 ? phasor(static_cast<long double>(phi) * static_cast<long double>(k))
                 : ek * e1;
      }
      const detail::cplx ck = c[k];
      acc += 2.0 * (ck.real() * ek.real() - ck.imag() * ek.imag());
    }
    const long double nyq_ang = static_cast<long double>(phi) * static_cast<long double>(half);
    acc += cnyq * phasor(nyq_ang).real();
    out[m] = acc;
  }
  return out;
}

std::vector<double> trig_interpolate_equispaced(const Spectrum& spectrum, double start,
                                                double step, std::size_t count) {
  const SpectralGrid& g = spectrum.grid();
  const std::size_t n = g.size();
  const std::size_t half = n / 2;
  const std::size_t kmax = half - 1;  // modes -kmax..kmax; Nyquist handled apart
  const double k0 = kPi / g.half_length();
  const double phi0 = k0 * start;
  const double delta = k0 * step;
  const auto c = spectrum.coeffs();

  std::vector<detail::cplx> a(2 * kmax + 1);
  for (std::size_t l = 0; l < a.size(); ++l) {
    const long k = static_cast<long>(l) - static_cast<long>(kmax);
    const std::size_t idx =
        k >= 0 ? static_cast<std::size_t>(k) : static_cast<std::size_t>(k + static_cast<long>(n));
    a[l] = c[idx] * phasor(static_cast<long double>(phi0) * static_cast<long double>(k));
  }
  const auto t = detail::chirp_z(a, delta, count);

  const double cnyq = c[half].real();
  std::vector<double> out(count);
  for (std::size_t m = 0; m < count; ++m) {
    const long double shift =
        -static_cast<long double>(delta) * static_cast<long double>(kmax) * static_cast<long double>(m);
    const detail::cplx v = t[m] * phasor(shift);
    const long double nyq_ang = static_cast<long double>(half) *
                                (static_cast<long double>(phi0) +
                                 static_cast<long double>(delta) * static_cast<long double>(m));
    out[m] = v.real() + cnyq * phasor(nyq_ang).real();
  }
  return out;
}

}  // namespace gfbbm
