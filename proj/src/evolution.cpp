#include "gfbbm/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "spectral_internal.hpp"

namespace gfbbm::evolution {

namespace {

using detail::cplx;

// Per-grid tables for the dispersive symbol: gain[i] = 1 + (3/4)|kappa|^a and
// damp[i] = 1 + (5/4)|kappa|^a, so rhs_k = -i kappa (gain U^ + w^/2) / damp.
struct SymbolTables {
  std::vector<double> kappa;
  std::vector<double> gain;
  std::vector<double> damp;

  SymbolTables(const SpectralGrid& grid, const ModelParams& params) {
    const std::size_t n = grid.size();
    kappa.resize(n);
    gain.resize(n);
    damp.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      kappa[i] = grid.wavenumber_fft(i);
      const double a = std::pow(std::abs(kappa[i]), params.alpha);
      gain[i] = 1.0 + 0.75 * a;
      damp[i] = 1.0 + 1.25 * a;
    }
    kappa[n / 2] = 0.0;  // odd multiplier: drop the unpaired Nyquist mode
  }
};

struct Workspace {
  std::vector<double> u;
  std::vector<double> w;
  std::vector<cplx> what;
  std::vector<cplx> k1, k2, k3, k4, stage;

  explicit Workspace(std::size_t n)
      : u(n), w(n), what(n), k1(n), k2(n), k3(n), k4(n), stage(n) {}
};

void rhs_raw(const SpectralGrid& grid, const ModelParams& params, const SymbolTables& tab,
             std::span<const cplx> state, std::span<cplx> out, Workspace& ws) {
  const std::size_t n = grid.size();
  detail::inverse_real_phys(grid, state.data(), ws.u.data());
  for (std::size_t j = 0; j < n; ++j) {
    if (!std::isfinite(ws.u[j])) fail(ErrorCode::divergence, "field is non-finite");
    ws.w[j] = detail::int_pow(ws.u[j], params.p + 1);
  }
  for (double x : ws.w)
    if (!std::isfinite(x)) fail(ErrorCode::divergence, "u^{p+1} overflowed");
  detail::forward_real_phys(grid, ws.w.data(), ws.what.data());
  detail::apply_dealias(grid, ws.what.data());
  for (std::size_t i = 0; i < n; ++i) {
    const cplx num = tab.gain[i] * state[i] + 0.5 * ws.what[i];
    const double k_over_d = tab.kappa[i] / tab.damp[i];
    out[i] = cplx{k_over_d * num.imag(), -k_over_d * num.real()};  // -i*kappa*num/damp
  }
}

void rk4_raw(const SpectralGrid& grid, const ModelParams& params, const SymbolTables& tab,
             std::vector<cplx>& state, double dt, Workspace& ws) {
  const std::size_t n = grid.size();
  auto &k1 = ws.k1, &k2 = ws.k2, &k3 = ws.k3, &k4 = ws.k4, &stage = ws.stage;
  rhs_raw(grid, params, tab, state, k1, ws);
  for (std::size_t i = 0; i < n; ++i) stage[i] = state[i] + 0.5 * dt * k1[i];
  rhs_raw(grid, params, tab, stage, k2, ws);
  for (std::size_t i = 0; i < n; ++i) stage[i] = state[i] + 0.5 * dt * k2[i];
  rhs_raw(grid, params, tab, stage, k3, ws);
  for (std::size_t i = 0; i < n; ++i) stage[i] = state[i] + dt * k3[i];
  rhs_raw(grid, params, tab, stage, k4, ws);
  const double s = dt / 6.0;
  for (std::size_t i = 0; i < n; ++i)
    state[i] += s * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

}  // namespace

TimeGrid::TimeGrid(double t_final_, std::size_t n_steps_)
    : t_final(t_final_), n_steps(n_steps_) {
  if (!(t_final > 0.0) || !std::isfinite(t_final))
    fail(ErrorCode::invalid_argument, "t_final must be positive");
  if (n_steps < 1) fail(ErrorCode::invalid_argument, "n_steps must be >= 1");
}

Spectrum rhs(const Spectrum& state, const ModelParams& params) {
  const SpectralGrid& g = state.grid();
  const SymbolTables tab(g, params);
  Workspace ws(g.size());
  std::vector<cplx> out(g.size());
  rhs_raw(g, params, tab, state.coeffs(), out, ws);
  return {state.grid_ptr(), std::move(out)};
}

Spectrum rk4_step(const Spectrum& state, const ModelParams& params, double dt) {
  if (!std::isfinite(dt)) fail(ErrorCode::invalid_argument, "dt must be finite");
  const SpectralGrid& g = state.grid();
  const SymbolTables tab(g, params);
  Workspace ws(g.size());
  std::vector<cplx> s(state.coeffs().begin(), state.coeffs().end());
  rk4_raw(g, params, tab, s, dt, ws);
  return {state.grid_ptr(), std::move(s)};
}

EvolutionTrace evolve(const WaveProfile& initial, const ModelParams& params,
                      const TimeGrid& time, std::span<const double> output_times,
                      std::size_t drift_stride) {
  if (drift_stride < 1) fail(ErrorCode::invalid_argument, "drift_stride must be >= 1");
  const double dt = time.dt();
  const std::size_t n_steps = time.n_steps;
  for (double t : output_times) {
    if (!(t >= -1e-9) || !(t <= time.t_final * (1.0 + 1e-12) + 1e-9))
      fail(ErrorCode::invalid_argument, "output times must lie in [0, T]");
  }
  // Requested output times snap to the nearest step boundary.
  std::vector<std::size_t> snap_steps(output_times.size());
  for (std::size_t i = 0; i < output_times.size(); ++i) {
    const auto m = static_cast<long long>(std::llround(output_times[i] / dt));
    snap_steps[i] = static_cast<std::size_t>(
        std::clamp<long long>(m, 0, static_cast<long long>(n_steps)));
  }

  const SpectralGrid& g = initial.grid();
  const std::size_t n = g.size();
  const SymbolTables tab(g, params);
  Workspace ws(n);

  EvolutionTrace trace;
  const ConservedSnapshot ref = conserved_quantities(initial, params);
  const double i0_scale = std::max(std::abs(ref.i0), 1e-300);
  const double i1_scale = std::max(std::abs(ref.i1), 1e-300);
  const double sup0 = sup_norm(initial);

  std::vector<cplx> state(n);
  detail::forward_real_phys(g, initial.values().data(), state.data());

  // Captured snapshots keyed by request index so the returned arrays stay
  // parallel to output_times regardless of request order.
  std::vector<std::optional<WaveProfile>> snaps(snap_steps.size());
  auto capture = [&](std::size_t step, const WaveProfile& p) {
    for (std::size_t i = 0; i < snap_steps.size(); ++i) {
      if (snap_steps[i] == step && !snaps[i]) snaps[i] = p;
    }
  };

  trace.drift_times.push_back(0.0);
  trace.i0_drift.push_back(0.0);
  trace.i1_drift.push_back(0.0);
  capture(0, initial);

  try {
    for (std::size_t step = 1; step <= n_steps; ++step) {
      rk4_raw(g, params, tab, state, dt, ws);
      const bool monitored = (step % drift_stride == 0) || step == n_steps;
      const bool wanted =
          std::find(snap_steps.begin(), snap_steps.end(), step) != snap_steps.end();
      if (monitored || wanted) {
        detail::inverse_real_phys(g, state.data(), ws.u.data());
        double sup = 0.0;
        for (double x : ws.u) {
          if (!std::isfinite(x)) fail(ErrorCode::divergence, "field is non-finite");
          sup = std::max(sup, std::abs(x));
        }
        if (sup > 1e6 * sup0) fail(ErrorCode::divergence, "field grew beyond 1e6 x initial");
        WaveProfile p(initial.grid_ptr(), ws.u);
        if (monitored) {
          const ConservedSnapshot now = conserved_quantities(p, params);
          trace.drift_times.push_back(static_cast<double>(step) * dt);
          trace.i0_drift.push_back((now.i0 - ref.i0) / i0_scale);
          trace.i1_drift.push_back((now.i1 - ref.i1) / i1_scale);
        }
        if (wanted) capture(step, p);
      }
      trace.steps_completed = step;
    }
    trace.status = EvolveStatus::completed;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::divergence) throw;
    trace.status = EvolveStatus::diverged;
  }
  for (std::size_t i = 0; i < snaps.size(); ++i) {
    if (snaps[i]) {
      trace.times.push_back(static_cast<double>(snap_steps[i]) * dt);
      trace.snapshots.push_back(std::move(*snaps[i]));
    }
  }
  return trace;
}

}  // namespace gfbbm::evolution
