#include "gfbbm/model.hpp"

#include <cmath>

#include "spectral_internal.hpp"

namespace gfbbm {

ModelParams::ModelParams(double alpha_, int p_, double c_) : alpha(alpha_), p(p_), c(c_) {
  if (!(alpha > 0.0) || !(alpha < 2.0) || !std::isfinite(alpha))
    fail(ErrorCode::invalid_argument, "alpha must lie in (0, 2)");
  if (p < 1) fail(ErrorCode::invalid_argument, "nonlinearity p must be a positive integer");
  if (!std::isfinite(c)) fail(ErrorCode::invalid_argument, "speed c must be finite");
}

WaveProfile nonlinear_power(const WaveProfile& u, int p) {
  if (p < 1) fail(ErrorCode::invalid_argument, "nonlinearity p must be >= 1");
  const std::size_t n = u.size();
  std::vector<double> w(n);
  const auto v = u.values();
  for (std::size_t j = 0; j < n; ++j) w[j] = detail::int_pow(v[j], p + 1);
  for (double x : w)
    if (!std::isfinite(x))
      fail(ErrorCode::divergence, "u^{p+1} overflowed to a non-finite value");
  if (u.grid().dealias()) {
    std::vector<detail::cplx> coeffs(n);
    detail::forward_real_phys(u.grid(), w.data(), coeffs.data());
    detail::apply_dealias(u.grid(), coeffs.data());
    detail::inverse_real_phys(u.grid(), coeffs.data(), w.data());
  }
  return {u.grid_ptr(), std::move(w)};
}

WaveProfile residual_operator(const WaveProfile& q, const ModelParams& params) {
  const WaveProfile dq = apply_fractional(q, params.alpha);
  const WaveProfile w = nonlinear_power(q, params.p);
  const double a = 0.75 - 1.25 * params.c;
  const double b = 1.0 - params.c;
  const std::size_t n = q.size();
  std::vector<double> out(n);
  const auto qv = q.values();
  const auto dv = dq.values();
  const auto wv = w.values();
  for (std::size_t j = 0; j < n; ++j) out[j] = a * dv[j] + b * qv[j] + 0.5 * wv[j];
  return {q.grid_ptr(), std::move(out)};
}

ConservedSnapshot conserved_quantities(const WaveProfile& u, const ModelParams& params) {
  const WaveProfile d = apply_fractional(u, 0.5 * params.alpha);
  const double h = u.grid().spacing();
  const auto uv = u.values();
  const auto dv = d.values();
  detail::KahanSum s0, s1, sh;
  for (std::size_t j = 0; j < uv.size(); ++j) {
    const double u2 = uv[j] * uv[j];
    const double d2 = dv[j] * dv[j];
    s0.add(uv[j]);
    s1.add(u2 + 1.25 * d2);
    sh.add(u2 + detail::int_pow(uv[j], params.p + 2) / static_cast<double>(params.p + 2) +
           0.75 * d2);
  }
  return {s0.value() * h, s1.value() * h, 0.5 * sh.value() * h};
}

}  // namespace gfbbm
