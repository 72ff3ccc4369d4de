#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "gfbbm/errors.hpp"

namespace gfbbm {

namespace detail {
class FftEngine;
}

/// Uniform periodic grid on [-L, L) with its wavenumber set and transform
/// bookkeeping. Immutable after construction; safe to share across threads.
class SpectralGrid {
 public:
  SpectralGrid(std::size_t n_points, double half_length, bool dealias = false);
  ~SpectralGrid();
  SpectralGrid(const SpectralGrid&) = delete;
  SpectralGrid& operator=(const SpectralGrid&) = delete;

  std::size_t size() const noexcept { return n_; }
  double half_length() const noexcept { return half_length_; }
  double spacing() const noexcept { return 2.0 * half_length_ / static_cast<double>(n_); }
  bool dealias() const noexcept { return dealias_; }
  /// Largest |k| kept by the 2/3-rule truncation.
  std::size_t dealias_cutoff() const noexcept { return n_ / 3; }

  /// Nodes x_j = -L + 2Lj/N, strictly increasing.
  std::span<const double> nodes() const noexcept { return nodes_; }
  /// Wavenumbers k*pi/L in ascending order of k = -N/2..N/2-1.
  std::span<const double> wavenumbers() const noexcept { return wavenumbers_; }
  /// Wavenumber for a spectrum's storage index (FFT order).
  double wavenumber_fft(std::size_t i) const noexcept { return kappa_fft_[i]; }
  std::span<const double> wavenumbers_fft() const noexcept { return kappa_fft_; }
  /// Signed mode index for a spectrum's storage index.
  long mode_index(std::size_t i) const noexcept {
    return i < n_ / 2 ? static_cast<long>(i) : static_cast<long>(i) - static_cast<long>(n_);
  }

  const detail::FftEngine& engine() const noexcept { return *engine_; }

 private:
  std::size_t n_;
  double half_length_;
  bool dealias_;
  std::vector<double> nodes_;
  std::vector<double> wavenumbers_;
  std::vector<double> kappa_fft_;
  std::unique_ptr<detail::FftEngine> engine_;
};

using GridPtr = std::shared_ptr<const SpectralGrid>;

GridPtr make_grid(std::size_t n_points, double half_length, bool dealias = false);

/// Real-valued field samples on a grid. Values are validated finite at
/// construction and immutable afterwards.
class WaveProfile {
 public:
  WaveProfile(GridPtr grid, std::vector<double> values);

  const SpectralGrid& grid() const noexcept { return *grid_; }
  const GridPtr& grid_ptr() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t j) const noexcept { return values_[j]; }
  std::size_t size() const noexcept { return values_.size(); }

 private:
  GridPtr grid_;
  std::vector<double> values_;
};

/// Fourier coefficients of a profile, stored in FFT index order: entry i
/// holds mode k = i for i < N/2 and k = i - N otherwise. Coefficients are
/// relative to the physical-phase basis e^{i k (pi/L) x}, normalized so that
/// coeff(k) = (1/N) sum_j u_j e^{-i kappa_k x_j}.
class Spectrum {
 public:
  Spectrum(GridPtr grid, std::vector<std::complex<double>> coeffs);

  const SpectralGrid& grid() const noexcept { return *grid_; }
  const GridPtr& grid_ptr() const noexcept { return grid_; }
  std::span<const std::complex<double>> coeffs() const noexcept { return coeffs_; }
  /// Coefficient by signed mode index k in [-N/2, N/2).
  std::complex<double> coeff(long k) const;
  /// max_k |c_k - conj(c_{-k})|, the conjugate-symmetry defect.
  double conjugate_asymmetry() const noexcept;

 private:
  GridPtr grid_;
  std::vector<std::complex<double>> coeffs_;
};

Spectrum forward_transform(const WaveProfile& profile);
WaveProfile inverse_transform(const Spectrum& spectrum);

/// Riesz fractional derivative D^order (Fourier multiplier |kappa|^order).
/// order = 0 is the identity; for order > 0 the mean mode is annihilated.
WaveProfile apply_fractional(const WaveProfile& profile, double order);

/// Spectral d/dx (multiplier i*kappa); the unpaired Nyquist mode is zeroed.
WaveProfile apply_x_derivative(const WaveProfile& profile);

double sup_norm(const WaveProfile& profile) noexcept;
double sup_diff(const WaveProfile& a, const WaveProfile& b);

/// Evaluate the trigonometric interpolant of a real profile's spectrum at
/// arbitrary points (direct summation; the Nyquist mode contributes as a
/// cosine so the interpolant is real).
std::vector<double> trig_interpolate(const Spectrum& spectrum, std::span<const double> points);

/// Same interpolant at equispaced points start + i*step via chirp-z; exact
/// match with trig_interpolate up to round-off, O(N log N) instead of O(N*M).
std::vector<double> trig_interpolate_equispaced(const Spectrum& spectrum, double start,
                                                double step, std::size_t count);

/// Sample a function on the grid nodes.
template <class F>
WaveProfile sample(const GridPtr& grid, F&& f) {
  std::vector<double> v(grid->size());
  const auto xs = grid->nodes();
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = f(xs[j]);
  return {grid, std::move(v)};
}

}  // namespace gfbbm
