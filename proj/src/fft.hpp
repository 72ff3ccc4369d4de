#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace gfbbm::detail {

using cplx = std::complex<double>;

constexpr bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Discrete Fourier transform engine for one fixed size.
//   forward:  X_k = sum_j x_j e^{-2 pi i j k / n}   (unnormalized)
//   inverse:  x_j = sum_k X_k e^{+2 pi i j k / n}   (unnormalized)
// Powers of two run a Stockham autosort FFT; other sizes go through Bluestein.
// Engines are immutable after construction and safe to share across threads;
// scratch is allocated per call.
class FftEngine {
 public:
  explicit FftEngine(std::size_t n);

  std::size_t size() const { return n_; }

  void forward(const cplx* in, cplx* out) const;
  void inverse(const cplx* in, cplx* out) const;

  // Real-field fast paths (n even). Spectra are full length n in FFT index
  // order and 1/n-normalized: coeffs_k = (1/n) sum_j u_j e^{-2 pi i j k / n}.
  // forward_real produces an exactly conjugate-symmetric array; inverse_real
  // reads modes 0..n/2 only and assumes that symmetry. When phys_phase is
  // set, coefficients carry an extra (-1)^k (the e^{i kappa x} basis of a
  // domain starting at -L rather than 0).
  void forward_real(const double* u, cplx* coeffs, bool phys_phase = false) const;
  void inverse_real(const cplx* coeffs, double* u, bool phys_phase = false) const;

 private:
  void bluestein(const cplx* in, cplx* out, bool inv) const;

  std::size_t n_;
  bool pow2_ = false;
  std::vector<cplx> roots_;  // e^{-2 pi i j / n}, j < n/2 (pow2 only)
  // Bluestein tables (non-pow2 only)
  std::vector<cplx> chirp_;       // e^{-i pi j^2 / n}, j < n
  std::vector<cplx> kernel_fft_;  // forward FFT of the padded even chirp kernel
  std::unique_ptr<FftEngine> conv_;
};

// Chirp-z evaluation: T_m = sum_{l=0}^{a.size()-1} a_l e^{i s l m} for
// m = 0..count-1, arbitrary real s. Bluestein factorization, O((L+M) log).
std::vector<cplx> chirp_z(std::span<const cplx> a, double s, std::size_t count);

}  // namespace gfbbm::detail
