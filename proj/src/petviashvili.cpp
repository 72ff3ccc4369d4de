#include "gfbbm/petviashvili.hpp"

#include <cmath>
#include <string>

#include "gfbbm/theory.hpp"
#include "spectral_internal.hpp"

namespace gfbbm::petviashvili {

namespace {

using detail::cplx;

std::vector<double> symbol_values(const SpectralGrid& grid, const ModelParams& params) {
  const std::size_t n = grid.size();
  std::vector<double> l(n);
  const double a = 1.25 * params.c - 0.75;
  const double b = params.c - 1.0;
  for (std::size_t i = 0; i < n; ++i)
    l[i] = a * std::pow(std::abs(grid.wavenumber_fft(i)), params.alpha) + b;
  return l;
}

// M from the spectra of Q and Q^{p+1}. Throws on a degenerate denominator or
// an imaginary residue above tolerance.
double factor_from(std::span<const double> l, std::span<const cplx> qhat,
                   std::span<const cplx> what) {
  detail::KahanSum num;
  detail::KahanSumComplex den;
  for (std::size_t i = 0; i < qhat.size(); ++i) {
    num.add(l[i] * std::norm(qhat[i]));
    den.add(0.5 * what[i] * std::conj(qhat[i]));
  }
  const cplx d = den.value();
  if (std::abs(d) < 1e-300)
    fail(ErrorCode::degenerate_denominator, "stabilizing factor denominator vanished");
  const cplx m = num.value() / d;
  if (std::abs(m.imag()) > 1e-10 * std::abs(m))
    fail(ErrorCode::symmetry_violation, "stabilizing factor has a non-real residue");
  return m.real();
}

std::vector<double> pointwise_power(std::span<const double> q, int p) {
  std::vector<double> w(q.size());
  for (std::size_t j = 0; j < q.size(); ++j) w[j] = detail::int_pow(q[j], p + 1);
  for (double x : w)
    if (!std::isfinite(x)) fail(ErrorCode::divergence, "iterate overflowed in u^{p+1}");
  return w;
}

bool all_finite(std::span<const double> v) noexcept {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

}  // namespace

double stabilizing_factor(const WaveProfile& q, const ModelParams& params) {
  const SpectralGrid& g = q.grid();
  const auto l = symbol_values(g, params);
  std::vector<cplx> qhat(g.size()), what(g.size());
  detail::forward_real_phys(g, q.values().data(), qhat.data());
  const auto w = pointwise_power(q.values(), params.p);
  detail::forward_real_phys(g, w.data(), what.data());
  detail::apply_dealias(g, what.data());
  return factor_from(l, qhat, what);
}

WaveProfile iterate_once(const WaveProfile& q, const ModelParams& params, double nu) {
  const SpectralGrid& g = q.grid();
  const std::size_t n = g.size();
  const auto l = symbol_values(g, params);
  std::vector<cplx> qhat(n), what(n);
  detail::forward_real_phys(g, q.values().data(), qhat.data());
  const auto w = pointwise_power(q.values(), params.p);
  detail::forward_real_phys(g, w.data(), what.data());
  detail::apply_dealias(g, what.data());
  const double m = factor_from(l, qhat, what);
  const double mp = std::pow(m, nu);
  if (!std::isfinite(mp))
    fail(ErrorCode::divergence, "stabilizing factor power is non-finite (M = " +
                                    std::to_string(m) + ")");
  std::vector<cplx> next(n);
  for (std::size_t i = 0; i < n; ++i) next[i] = mp * what[i] / (2.0 * l[i]);
  std::vector<double> out(n);
  detail::inverse_real_phys(g, next.data(), out.data());
  if (!all_finite(out)) fail(ErrorCode::divergence, "iterate is non-finite");
  return {q.grid_ptr(), std::move(out)};
}

SolverResult solve(const WaveProfile& initial, const ModelParams& params,
                   const SolverConfig& config) {
  if (!(config.tol_increment > 0.0) || !(config.tol_residual > 0.0) ||
      !(config.tol_factor > 0.0) || config.max_iterations < 1)
    fail(ErrorCode::invalid_argument, "solver tolerances must be positive");
  if (sup_norm(initial) == 0.0)
    fail(ErrorCode::invalid_argument, "initial profile is identically zero");
  const auto report = theory::validate_params(params);
  if (!report.admissible && !config.allow_inadmissible)
    fail(ErrorCode::inadmissible_params,
         std::string("parameters rejected: ") + std::string(theory::to_string(report.tag())));

  const double nu =
      config.nu.value_or(static_cast<double>(params.p + 1) / static_cast<double>(params.p));
  const SpectralGrid& g = initial.grid();
  const std::size_t n = g.size();
  const auto l = symbol_values(g, params);

  SolverResult result{initial, {}, SolveStatus::iteration_limit, false, 0};
  result.history.reserve(std::min<std::size_t>(config.max_iterations, 1024));

  std::vector<double> q(initial.values().begin(), initial.values().end());
  std::vector<cplx> qhat(n), what(n), next_hat(n);
  std::vector<double> next(n);
  detail::forward_real_phys(g, q.data(), qhat.data());

  try {
    auto w = pointwise_power(q, params.p);
    detail::forward_real_phys(g, w.data(), what.data());
    detail::apply_dealias(g, what.data());
    double m = factor_from(l, qhat, what);

    for (std::size_t iter = 1; iter <= config.max_iterations; ++iter) {
      const double mp = std::pow(m, nu);
      if (!std::isfinite(mp))
        fail(ErrorCode::divergence, "stabilizing factor power is non-finite");
      for (std::size_t i = 0; i < n; ++i) next_hat[i] = mp * what[i] / (2.0 * l[i]);
      detail::inverse_real_phys(g, next_hat.data(), next.data());
      if (!all_finite(next)) fail(ErrorCode::divergence, "iterate is non-finite");

      double err = 0.0;
      for (std::size_t j = 0; j < n; ++j) err = std::max(err, std::abs(next[j] - q[j]));
      q.swap(next);
      qhat.swap(next_hat);

      w = pointwise_power(q, params.p);
      detail::forward_real_phys(g, w.data(), what.data());
      detail::apply_dealias(g, what.data());
      m = factor_from(l, qhat, what);

      result.profile = WaveProfile(initial.grid_ptr(), q);
      const double res = sup_norm(residual_operator(result.profile, params));
      result.history.push_back({iter, err, std::abs(1.0 - m), res});
      result.iterations_used = iter;

      if (err <= config.tol_increment && res <= config.tol_residual) {
        result.status = SolveStatus::converged;
        result.converged = true;
        break;
      }
    }
  } catch (const Error& e) {
    switch (e.code()) {
      case ErrorCode::divergence:
        result.status = SolveStatus::diverged;
        break;
      case ErrorCode::degenerate_denominator:
      case ErrorCode::symmetry_violation:
        result.status = SolveStatus::degenerate;
        break;
      default:
        throw;
    }
  }
  return result;
}

WaveProfile default_seed(const GridPtr& grid, const ModelParams& params) {
  if (!(params.c > 1.0))
    fail(ErrorCode::invalid_argument, "default seed requires c > 1");
  const double amplitude = 4.0 * (params.c - 1.0);
  const double width = (5.0 * params.c - 3.0) / (4.0 * (params.c - 1.0));
  return sample(grid, [amplitude, width](double x) {
    const double s = x / width;
    return amplitude * std::exp(-s * s);
  });
}

}  // namespace gfbbm::petviashvili
