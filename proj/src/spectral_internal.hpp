#pragma once

// Internal raw-array transform helpers shared by the solver and time stepper.
// These are the same physical-phase transforms as the public operations
// (bit-identical results) without profile/spectrum object wrapping.

#include <complex>
#include <cstddef>
#include <vector>

#include "gfbbm/spectral.hpp"

namespace gfbbm::detail {

using cplx = std::complex<double>;

// coeffs_k = (1/N) sum_j u_j e^{-i kappa_k x_j}; exactly conjugate-symmetric.
void forward_real_phys(const SpectralGrid& grid, const double* u, cplx* coeffs);

// u_j = sum_k coeffs_k e^{+i kappa_k x_j}; assumes conjugate symmetry and
// reads modes 0..N/2 only. No finiteness or symmetry checks.
void inverse_real_phys(const SpectralGrid& grid, const cplx* coeffs, double* u);

// Zero modes with |k| > N/3 when the grid's dealias flag is set.
void apply_dealias(const SpectralGrid& grid, cplx* coeffs);

// Compensated accumulators for long reductions.
class KahanSum {
 public:
  void add(double x) noexcept {
    const double y = x - c_;
    const double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  double value() const noexcept { return s_; }

 private:
  double s_ = 0.0;
  double c_ = 0.0;
};

class KahanSumComplex {
 public:
  void add(cplx z) noexcept {
    re_.add(z.real());
    im_.add(z.imag());
  }
  cplx value() const noexcept { return {re_.value(), im_.value()}; }

 private:
  KahanSum re_, im_;
};

double int_pow(double x, int e) noexcept;

}  // namespace gfbbm::detail
