#include "fft.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gfbbm/errors.hpp"

namespace gfbbm::detail {

namespace {

constexpr double kPi = std::numbers::pi_v<double>;

// Unit phasor e^{i*angle} for angle = s * t with large integer t; the product
// and reduction run in long double so the phase stays accurate when s*t is
// many thousands of radians.
cplx unit_phasor(long double s, unsigned long long t) {
  const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
  const long double ang = std::fmod(s * static_cast<long double>(t), two_pi);
  return {static_cast<double>(std::cos(ang)), static_cast<double>(std::sin(ang))};
}

// Stockham autosort step (decimation in frequency, out-of-place ping-pong).
// n: current length, s: stride, eo: result must land in y when true.
// Twiddles for length n come from the base table with index stride base_n/n.
void stockham(std::size_t n, std::size_t s, bool eo, cplx* x, cplx* y,
              const cplx* roots, std::size_t base_n, bool inv) {
  if (n == 1) {
    if (eo) std::copy(x, x + s, y);
    return;
  }
  const std::size_t m = n / 2;
  const std::size_t rstep = base_n / n;
  for (std::size_t p = 0; p < m; ++p) {
    cplx wp = roots[p * rstep];
    if (inv) wp = std::conj(wp);
    const cplx* xp = x + s * p;
    const cplx* xm = x + s * (p + m);
    cplx* y0 = y + s * 2 * p;
    cplx* y1 = y0 + s;
    for (std::size_t q = 0; q < s; ++q) {
      const cplx a = xp[q];
      const cplx b = xm[q];
      y0[q] = a + b;
      y1[q] = (a - b) * wp;
    }
  }
  stockham(m, 2 * s, !eo, y, x, roots, base_n, inv);
}

std::size_t next_pow2(std::size_t n) {
  std::size_t m = 1;
  while (m < n) m <<= 1;
  return m;
}

// Reused per-thread scratch; capacity persists across calls so large
// transforms do not pay an mmap round trip each time.
std::vector<cplx>& scratch(std::size_t n) {
  static thread_local std::vector<cplx> buf;
  if (buf.size() < n) buf.resize(n);
  return buf;
}

std::vector<cplx>& scratch2(std::size_t n) {
  static thread_local std::vector<cplx> buf;
  if (buf.size() < n) buf.resize(n);
  return buf;
}

}  // namespace

FftEngine::FftEngine(std::size_t n) : n_(n), pow2_(is_pow2(n)) {
  if (n == 0) fail(ErrorCode::invalid_argument, "FFT size must be positive");
  if (pow2_) {
    roots_.resize(std::max<std::size_t>(n / 2, 1));
    for (std::size_t j = 0; j < roots_.size(); ++j) {
      const long double ang = -2.0L * std::numbers::pi_v<long double> *
                              static_cast<long double>(j) / static_cast<long double>(n);
      roots_[j] = {static_cast<double>(std::cos(ang)), static_cast<double>(std::sin(ang))};
    }
  } else {
    // Bluestein: X_k = chirp_k * (a (*) kernel)_k with a_j = x_j chirp_j,
    // chirp_j = e^{-i pi j^2 / n}, kernel_r = conj(chirp_|r|).
    chirp_.resize(n);
    const auto two_n = static_cast<unsigned long long>(2 * n);
    for (std::size_t j = 0; j < n; ++j) {
      const unsigned long long j2 =
          (static_cast<unsigned long long>(j) * j) % two_n;  // exact reduction
      const long double ang = -std::numbers::pi_v<long double> *
                              static_cast<long double>(j2) / static_cast<long double>(n);
      chirp_[j] = {static_cast<double>(std::cos(ang)), static_cast<double>(std::sin(ang))};
    }
    const std::size_t m = next_pow2(2 * n - 1);
    conv_ = std::make_unique<FftEngine>(m);
    std::vector<cplx> kb(m, cplx{0.0, 0.0});
    kb[0] = std::conj(chirp_[0]);
    for (std::size_t r = 1; r < n; ++r) {
      kb[r] = std::conj(chirp_[r]);
      kb[m - r] = std::conj(chirp_[r]);
    }
    kernel_fft_.resize(m);
    conv_->forward(kb.data(), kernel_fft_.data());
  }
}

void FftEngine::forward(const cplx* in, cplx* out) const {
  if (pow2_) {
    if (out != in) std::copy(in, in + n_, out);
    stockham(n_, 1, false, out, scratch(n_).data(), roots_.data(), n_, false);
  } else {
    bluestein(in, out, false);
  }
}

void FftEngine::inverse(const cplx* in, cplx* out) const {
  if (pow2_) {
    if (out != in) std::copy(in, in + n_, out);
    stockham(n_, 1, false, out, scratch(n_).data(), roots_.data(), n_, true);
  } else {
    bluestein(in, out, true);
  }
}

void FftEngine::bluestein(const cplx* in, cplx* out, bool inv) const {
  const std::size_t m = conv_->size();
  std::vector<cplx> a(m, cplx{0.0, 0.0});
  for (std::size_t j = 0; j < n_; ++j) {
    const cplx v = inv ? std::conj(in[j]) : in[j];
    a[j] = v * chirp_[j];
  }
  std::vector<cplx> fa(m);
  conv_->forward(a.data(), fa.data());
  for (std::size_t j = 0; j < m; ++j) fa[j] *= kernel_fft_[j];
  conv_->inverse(fa.data(), a.data());
  const double scale = 1.0 / static_cast<double>(m);
  for (std::size_t k = 0; k < n_; ++k) {
    cplx v = a[k] * scale * chirp_[k];
    out[k] = inv ? std::conj(v) : v;
  }
}

void FftEngine::forward_real(const double* u, cplx* coeffs, bool phys_phase) const {
  if (n_ % 2 != 0) fail(ErrorCode::invalid_argument, "real transform requires even size");
  const double inv_n = 1.0 / static_cast<double>(n_);
  const std::size_t h = n_ / 2;
  if (!pow2_) {
    std::vector<cplx> tmp(n_), f(n_);
    for (std::size_t j = 0; j < n_; ++j) tmp[j] = {u[j], 0.0};
    forward(tmp.data(), f.data());
    coeffs[0] = {f[0].real() * inv_n, 0.0};
    const double snyq = phys_phase && (h & 1) ? -1.0 : 1.0;
    coeffs[h] = {snyq * f[h].real() * inv_n, 0.0};
    for (std::size_t k = 1; k < h; ++k) {
      // symmetrize so the output is exactly conjugate-symmetric
      const double s = phys_phase && (k & 1) ? -1.0 : 1.0;
      const cplx c = s * 0.5 * (f[k] * inv_n + std::conj(f[n_ - k] * inv_n));
      coeffs[k] = c;
      coeffs[n_ - k] = std::conj(c);
    }
    return;
  }
  std::vector<cplx>& z = scratch(h);
  for (std::size_t j = 0; j < h; ++j) z[j] = {u[2 * j], u[2 * j + 1]};
  stockham(h, 1, false, z.data(), scratch2(h).data(), roots_.data(), n_, false);
  // Untangle: E_k, O_k are the half-size DFTs of even/odd samples.
  coeffs[0] = {(z[0].real() + z[0].imag()) * inv_n, 0.0};
  const double snyq = phys_phase && (h & 1) ? -1.0 : 1.0;
  coeffs[h] = {snyq * (z[0].real() - z[0].imag()) * inv_n, 0.0};
  for (std::size_t k = 1; k < h; ++k) {
    const cplx zk = z[k];
    const cplx zm = std::conj(z[h - k]);
    const cplx e = 0.5 * (zk + zm);
    const cplx o = (zk - zm) * cplx{0.0, -0.5};
    const double s = phys_phase && (k & 1) ? -1.0 : 1.0;
    const cplx c = s * inv_n * (e + roots_[k] * o);
    coeffs[k] = c;
    coeffs[n_ - k] = std::conj(c);
  }
}

void FftEngine::inverse_real(const cplx* coeffs, double* u, bool phys_phase) const {
  if (n_ % 2 != 0) fail(ErrorCode::invalid_argument, "real transform requires even size");
  const std::size_t h = n_ / 2;
  if (!pow2_) {
    // Rebuild an exactly symmetric spectrum from modes 0..h, then transform.
    std::vector<cplx> sym(n_), out(n_);
    sym[0] = {coeffs[0].real(), 0.0};
    const double snyq = phys_phase && (h & 1) ? -1.0 : 1.0;
    sym[h] = {snyq * coeffs[h].real(), 0.0};
    for (std::size_t k = 1; k < h; ++k) {
      const double s = phys_phase && (k & 1) ? -1.0 : 1.0;
      sym[k] = s * coeffs[k];
      sym[n_ - k] = std::conj(sym[k]);
    }
    inverse(sym.data(), out.data());
    for (std::size_t j = 0; j < n_; ++j) u[j] = out[j].real();
    return;
  }
  std::vector<cplx>& z = scratch(h);
  for (std::size_t k = 0; k < h; ++k) {
    const double sa = phys_phase && (k & 1) ? -1.0 : 1.0;
    const double sb = phys_phase && ((h - k) & 1) ? -1.0 : 1.0;
    const cplx a = sa * coeffs[k];
    const cplx b = sb * std::conj(coeffs[h - k]);
    const cplx e = a + b;
    const cplx o = (a - b) * std::conj(roots_[k]);
    z[k] = e + cplx{0.0, 1.0} * o;
  }
  stockham(h, 1, false, z.data(), scratch2(h).data(), roots_.data(), n_, true);
  for (std::size_t j = 0; j < h; ++j) {
    u[2 * j] = z[j].real();
    u[2 * j + 1] = z[j].imag();
  }
}

std::vector<cplx> chirp_z(std::span<const cplx> a, double s, std::size_t count) {
  const std::size_t l = a.size();
  if (count == 0 || l == 0) return std::vector<cplx>(count, cplx{0.0, 0.0});
  // e^{i s l m} = g(l^2) g(m^2) conj(g((l-m)^2)) with g(t) = e^{i s t / 2}.
  const long double half_s = 0.5L * static_cast<long double>(s);
  const std::size_t m = next_pow2(l + count - 1);
  FftEngine eng(m);
  std::vector<cplx> av(m, cplx{0.0, 0.0});
  for (std::size_t j = 0; j < l; ++j) {
    const unsigned long long t = static_cast<unsigned long long>(j) * j;
    av[j] = a[j] * unit_phasor(half_s, t);
  }
  std::vector<cplx> kb(m, cplx{0.0, 0.0});
  const std::size_t rmax = std::max(l, count);
  for (std::size_t r = 0; r < rmax; ++r) {
    const unsigned long long t = static_cast<unsigned long long>(r) * r;
    const cplx g = std::conj(unit_phasor(half_s, t));
    if (r < count) kb[r] = g;
    if (r > 0 && r < l) kb[m - r] = g;
  }
  std::vector<cplx> fa(m), fb(m);
  eng.forward(av.data(), fa.data());
  eng.forward(kb.data(), fb.data());
  for (std::size_t j = 0; j < m; ++j) fa[j] *= fb[j];
  eng.inverse(fa.data(), av.data());
  const double scale = 1.0 / static_cast<double>(m);
  std::vector<cplx> out(count);
  for (std::size_t k = 0; k < count; ++k) {
    const unsigned long long t = static_cast<unsigned long long>(k) * k;
    out[k] = av[k] * scale * unit_phasor(half_s, t);
  }
  return out;
}

}  // namespace gfbbm::detail
